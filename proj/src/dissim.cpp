#include "nejl/dissim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "nejl/error.hpp"
#include "nejl/simd/kernels.hpp"

namespace nejl {
namespace {

std::string at(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

double DissimilarityMatrix::max_abs() const noexcept {
  return entries_.size() ? entries_.cwiseAbs().maxCoeff() : 0.0;
}

DissimilarityMatrix validate_matrix(const RowMatrix& raw) {
  using Kind = MatrixValidationError::Kind;
  const auto rows = static_cast<std::size_t>(raw.rows());
  const auto cols = static_cast<std::size_t>(raw.cols());
  if (rows != cols) {
    throw MatrixValidationError(Kind::not_square, rows, cols,
                                "matrix is not square: " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  if (rows == 0) throw MatrixValidationError(Kind::not_square, 0, 0, "matrix is empty");

  double max_abs = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      const double v = raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (!std::isfinite(v)) throw MatrixValidationError(Kind::non_finite, i, j, "non-finite entry at " + at(i, j));
      max_abs = std::max(max_abs, std::abs(v));
    }
  }

  const double tol = kIngestTolerance * max_abs;
  RowMatrix sym(raw.rows(), raw.cols());
  for (Eigen::Index i = 0; i < raw.rows(); ++i) {
    const double diag = raw(i, i);
    if (std::abs(diag) > tol) {
      const auto u = static_cast<std::size_t>(i);
      throw MatrixValidationError(Kind::non_hollow, u, u,
                                  "nonzero diagonal at " + at(u, u) + ": " + std::to_string(diag));
    }
    sym(i, i) = 0.0;
    for (Eigen::Index j = i + 1; j < raw.cols(); ++j) {
      const double a = raw(i, j);
      const double b = raw(j, i);
      if (std::abs(a - b) > tol) {
        const auto u = static_cast<std::size_t>(i);
        const auto w = static_cast<std::size_t>(j);
        throw MatrixValidationError(Kind::asymmetric, u, w,
                                    "asymmetry at " + at(u, w) + ": " + std::to_string(a) + " vs " +
                                        std::to_string(b));
      }
      const double mid = 0.5 * (a + b);
      sym(i, j) = mid;
      sym(j, i) = mid;
    }
  }
  return DissimilarityMatrix(std::move(sym));
}

DissimilarityMatrix validate_matrix(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  RowMatrix raw(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw MatrixValidationError(MatrixValidationError::Kind::not_square, i, rows[i].size(),
                                  "row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                      " entries, expected " + std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  return validate_matrix(raw);
}

RowMatrix center_gram(const RowMatrix& d) {
  if (d.rows() != d.cols()) throw DataError("center_gram: matrix is not square");
  const Eigen::Index n = d.rows();
  if (n == 0) return RowMatrix(0, 0);

  Vector row_mean(n);
  for (Eigen::Index i = 0; i < n; ++i) row_mean(i) = simd::sum(row_span(d, i)) / static_cast<double>(n);
  // Exactly symmetric input reuses the row means so B comes out exactly symmetric.
  const bool symmetric = (d.array() == d.transpose().array()).all();
  const Vector col_mean = symmetric ? row_mean : Vector(d.colwise().mean().transpose());
  const double grand = row_mean.mean();

  RowMatrix b(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      b(i, j) = -0.5 * (d(i, j) - (row_mean(i) + col_mean(j)) + grand);
    }
  }
  return b;
}

RowMatrix center_gram(const DissimilarityMatrix& d) { return center_gram(d.entries()); }

double GramDecomposition::largest_abs() const {
  return eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
}

GramDecomposition decompose(const RowMatrix& b, double tau_rel) {
  if (b.rows() != b.cols()) throw DataError("decompose: matrix is not square");
  const Eigen::Index n = b.rows();
  GramDecomposition dec;
  if (n == 0) return dec;

  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  const double asym = (b - b.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-8 * scale) {
    throw DataError("decompose: matrix is not symmetric (max asymmetry " + std::to_string(asym) + ")");
  }

  const Eigen::MatrixXd sym = 0.5 * (b + b.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("decompose: symmetric eigensolver did not converge");

  // Eigen returns ascending order.
  dec.eigenvalues = solver.eigenvalues().reverse();
  dec.eigenvectors = solver.eigenvectors().rowwise().reverse();

  dec.tau = tau_rel * std::max(1.0, dec.largest_abs());
  for (Eigen::Index k = 0; k < n; ++k) {
    const double lambda = dec.eigenvalues(k);
    if (lambda > dec.tau) {
      ++dec.p;
    } else if (lambda < -dec.tau) {
      ++dec.q;
    } else {
      ++dec.zero_rank;
    }
  }
  return dec;
}

}  // namespace nejl
