#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nejl {

/// Process exit codes used by the CLI. Each error family maps to one.
enum class ExitCode : int { ok = 0, usage = 1, data = 2, numerical = 3 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual ExitCode exit_code() const noexcept = 0;
};

/// Bad flags or configuration values.
class UsageError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::usage; }
};

/// Malformed or invalid input data.
class DataError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::data; }
};

/// Eigensolver failure or an input outside the numerical contract
/// (e.g. a non-Euclidean matrix handed to center recovery).
class NumericalError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::numerical; }
};

/// Rejection from validate_matrix. Carries the kind and the offending index.
class MatrixValidationError : public DataError {
 public:
  enum class Kind { not_square, non_finite, asymmetric, non_hollow };

  MatrixValidationError(Kind kind, std::size_t row, std::size_t col, const std::string& what)
      : DataError(what), kind_(kind), row_(row), col_(col) {}

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t row() const noexcept { return row_; }
  [[nodiscard]] std::size_t col() const noexcept { return col_; }

 private:
  Kind kind_;
  std::size_t row_;
  std::size_t col_;
};

}  // namespace nejl
