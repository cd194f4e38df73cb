#include "nejl/pipeline.hpp"

#include "nejl/error.hpp"
#include "nejl/pq_embed.hpp"
#include "nejl/power_embed.hpp"

namespace nejl {
namespace {

RowMatrix concat(const RowMatrix& a, const RowMatrix& b) {
  RowMatrix out(a.rows(), a.cols() + b.cols());
  out << a, b;
  return out;
}

}  // namespace

ProjectionRun run_projection(const DissimilarityMatrix& d, const GramDecomposition& dec, const PipelineOptions& opts) {
  opts.config.validate();
  if (dec.n() != d.n()) throw DataError("decomposition size does not match the matrix");
  if (opts.radius_override && opts.method != Method::jl_power) {
    throw UsageError("--radius-override applies to jl-power only");
  }

  ProjectionRun run;
  ProjectionReport& rep = run.report;
  rep.method = opts.method;
  rep.config = opts.config;
  rep.n = d.n();
  rep.m = target_dim(d.n(), opts.config);
  rep.p = dec.p;
  rep.q = dec.q;
  rep.zero_rank = dec.zero_rank;

  const PseudoEuclideanEmbedding emb = embed_pq(dec);
  switch (opts.method) {
    case Method::jl: {
      run.coords = project_classical(abs_embedding(emb), opts.config);
      run.dhat = reconstruct(run.coords);
      break;
    }
    case Method::jl_pq: {
      const ProjectedPQ projected = project_pq(emb, opts.config);
      run.dhat = reconstruct(projected);
      run.coords = concat(projected.pos, projected.neg);
      break;
    }
    case Method::jl_power: {
      const PowerRepresentation power = represent_power(d, dec, opts.radius_override);
      const ProjectedPower projected = project_power(power, opts.config);
      run.dhat = reconstruct(projected);
      run.coords = projected.centers;
      rep.radius = power.radius;
      break;
    }
  }
  if (opts.identity_debug) run.dhat = d.entries();

  rep.stats = relative_error_stats(d, run.dhat);
  if (opts.method == Method::jl_pq) {
    rep.pq_check = validate_pq_bound(d, emb, run.dhat, opts.config.epsilon, opts.keep_records);
  } else if (opts.method == Method::jl_power) {
    rep.power_check = validate_power_residual(d, rep.radius, run.dhat, opts.config.epsilon, opts.keep_records);
  }
  return run;
}

ProjectionRun run_projection(const DissimilarityMatrix& d, const PipelineOptions& opts) {
  opts.config.validate();
  if (d.n() < 2) throw UsageError("projection needs at least 2 points");
  return run_projection(d, decompose(center_gram(d)), opts);
}

}  // namespace nejl
