#pragma once

// End-to-end projection run: decompose, embed, project, reconstruct, score.

#include <cstddef>
#include <optional>

#include "nejl/dissim.hpp"
#include "nejl/eval.hpp"
#include "nejl/matrix.hpp"
#include "nejl/projection.hpp"

namespace nejl {

struct PipelineOptions {
  Method method = Method::jl_pq;
  ProjectionConfig config;
  std::optional<double> radius_override;  // jl-power only
  bool keep_records = false;
  bool identity_debug = false;  // score D itself in place of the reconstruction
};

/// Outcome of one method on one matrix.
struct ProjectionReport {
  Method method = Method::jl_pq;
  ProjectionConfig config;
  std::size_t n = 0;
  std::size_t m = 0;  // per part for jl-pq
  std::size_t p = 0;
  std::size_t q = 0;
  std::size_t zero_rank = 0;
  double radius = 0.0;  // jl-power only, 0 otherwise
  RelErrorStats stats;
  std::optional<PqBoundCheck> pq_check;
  std::optional<PowerResidualCheck> power_check;
};

struct ProjectionRun {
  ProjectionReport report;
  RowMatrix dhat;
  RowMatrix coords;  // projected rows; jl-pq concatenates pos and neg
};

ProjectionRun run_projection(const DissimilarityMatrix& d, const GramDecomposition& dec, const PipelineOptions& opts);
ProjectionRun run_projection(const DissimilarityMatrix& d, const PipelineOptions& opts);

}  // namespace nejl
