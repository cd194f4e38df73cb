#pragma once

// Input validation, double-centering and the symmetric eigendecomposition
// shared by both non-Euclidean embeddings.

#include <cstddef>
#include <vector>

#include "nejl/matrix.hpp"

namespace nejl {

/// Validated n x n symmetric hollow real matrix with finite entries.
/// Construct through validate_matrix(); immutable afterwards.
class DissimilarityMatrix {
 public:
  [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
  [[nodiscard]] const RowMatrix& entries() const noexcept { return entries_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return entries_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  [[nodiscard]] double max_abs() const noexcept;

 private:
  explicit DissimilarityMatrix(RowMatrix entries) : entries_(std::move(entries)) {}
  friend DissimilarityMatrix validate_matrix(const RowMatrix& raw);

  RowMatrix entries_;
};

/// Relative tolerance for asymmetry and diagonal noise on ingestion,
/// scaled by max |raw|.
inline constexpr double kIngestTolerance = 1e-9;

/// Symmetrizes (raw + raw^T)/2 and zeroes the diagonal. Rejects non-square
/// or non-finite input and asymmetry / diagonal entries larger than
/// kIngestTolerance * max|raw|, naming the offending index.
DissimilarityMatrix validate_matrix(const RowMatrix& raw);

/// Same, from ragged rows (a row of the wrong length is `not_square`).
DissimilarityMatrix validate_matrix(const std::vector<std::vector<double>>& rows);

/// B = -C D C / 2 with C = I - 11^T/n.
RowMatrix center_gram(const DissimilarityMatrix& d);

/// Same double-centering for any square matrix (used on shifted matrices
/// that are not validated dissimilarities).
RowMatrix center_gram(const RowMatrix& d);

/// Eigendecomposition of a centered Gram matrix with signature bookkeeping.
struct GramDecomposition {
  Vector eigenvalues;      // descending
  RowMatrix eigenvectors;  // column k pairs with eigenvalues[k]
  std::size_t p = 0;       // count of eigenvalues > tau
  std::size_t q = 0;       // count of eigenvalues < -tau
  std::size_t zero_rank = 0;
  double tau = 0.0;

  [[nodiscard]] std::size_t n() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  [[nodiscard]] double smallest() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }
  [[nodiscard]] double largest_abs() const;
};

inline constexpr double kDefaultTauRel = 1e-9;

/// Full dense symmetric eigendecomposition. tau = tau_rel * max(1, max|lambda|).
/// Throws DataError if B is not square or symmetric within 1e-8, NumericalError
/// if the solver does not converge.
GramDecomposition decompose(const RowMatrix& b, double tau_rel = kDefaultTauRel);

}  // namespace nejl
