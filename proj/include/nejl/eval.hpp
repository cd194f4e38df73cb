#pragma once

// Distortion statistics of a reconstructed matrix against the original and
// per-pair checks of the pseudo-Euclidean and power-distance JL bounds.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "nejl/dissim.hpp"
#include "nejl/matrix.hpp"
#include "nejl/pq_embed.hpp"

namespace nejl {

enum class Method { jl, jl_pq, jl_power };

std::string_view method_name(Method m) noexcept;
/// Accepts "jl", "jl-pq", "jl-power". Throws UsageError otherwise.
Method parse_method(std::string_view name);

/// |D_ij - D^_ij| / |D_ij| over off-diagonal pairs with D_ij != 0.
struct RelErrorStats {
  double max_rel = 0.0;
  double mean_rel = 0.0;
  double median_rel = 0.0;
  std::size_t excluded = 0;  // unordered pairs with D_ij == 0
  std::size_t counted = 0;
};

/// Non-finite D^ entries make max and mean +inf. Throws DataError on shape mismatch.
RelErrorStats relative_error_stats(const DissimilarityMatrix& d, const RowMatrix& dhat);

struct PairRecord {
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  double dhat = 0.0;
  double factor = 0.0;  // C_ij for the pq check, residual for the power check
  double lower = 0.0;
  double upper = 0.0;
  bool violated = false;
};

struct PqBoundCheck {
  double violation_rate = 0.0;     // over pairs with finite C_ij
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t infinite_pairs = 0;  // null-like pairs, excluded
  std::vector<PairRecord> records; // filled when requested
};

/// Checks D^_ij in D_ij (1 +- eps C_ij), band taken around D_ij with width
/// eps |D_ij| C_ij so it stays ordered for negative entries.
PqBoundCheck validate_pq_bound(const DissimilarityMatrix& d, const PseudoEuclideanEmbedding& emb,
                               const RowMatrix& dhat, double epsilon, bool keep_records = false);

struct PowerResidualCheck {
  double max_residual = 0.0;
  double bound = 0.0;  // 4 eps r^2
  double fraction_within = 1.0;
  std::size_t checked = 0;
  std::vector<PairRecord> records;
};

/// residual_ij = max(0, |D^_ij - D_ij| - eps |D_ij|), compared against 4 eps r^2.
PowerResidualCheck validate_power_residual(const DissimilarityMatrix& d, double radius, const RowMatrix& dhat,
                                           double epsilon, bool keep_records = false);

}  // namespace nejl
