#include "nejl/report.hpp"

#include <cmath>
#include <limits>

namespace nejl {

using nlohmann::json;

std::string_view library_version() noexcept { return NEJL_VERSION; }

void RunManifest::finish() noexcept {
  duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started_).count();
}

json json_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

json to_json(const RunManifest& manifest) {
  return {{"command", manifest.command},
          {"inputs", manifest.inputs},
          {"config", manifest.config},
          {"version", manifest.version},
          {"duration_seconds", manifest.duration_seconds}};
}

json to_json(const RelErrorStats& stats) {
  return {{"max_rel", json_real(stats.max_rel)},
          {"mean_rel", json_real(stats.mean_rel)},
          {"median_rel", json_real(stats.median_rel)},
          {"excluded", stats.excluded},
          {"counted", stats.counted}};
}

json to_json(const ProjectionReport& report, const RunManifest& manifest) {
  json bounds = json::object();
  if (report.pq_check) {
    bounds["pq_violation_rate"] = json_real(report.pq_check->violation_rate);
    bounds["pq_checked"] = report.pq_check->checked;
    bounds["pq_infinite_pairs"] = report.pq_check->infinite_pairs;
  }
  if (report.power_check) {
    bounds["power_residual_max"] = json_real(report.power_check->max_residual);
    bounds["bound_4er2"] = json_real(report.power_check->bound);
    bounds["fraction_within"] = json_real(report.power_check->fraction_within);
  }
  return {{"manifest", to_json(manifest)},
          {"method", std::string(method_name(report.method))},
          {"n", report.n},
          {"m", report.m},
          {"epsilon", report.config.epsilon},
          {"const", report.config.dim_constant},
          {"seed", report.config.seed},
          {"signature", {{"p", report.p}, {"q", report.q}, {"zero", report.zero_rank}}},
          {"radius", json_real(report.radius)},
          {"stats", to_json(report.stats)},
          {"bounds", bounds}};
}

json to_json(const KMeansResult& result, bool with_assignment) {
  json out = {{"k", result.k},
              {"relational_cost", json_real(result.relational_cost)},
              {"iterations", result.iterations},
              {"seed", result.seed},
              {"empty_reseeds", result.empty_reseeds}};
  if (with_assignment) out["assignment"] = result.assignment;
  return out;
}

double KMeansComparison::ratio() const noexcept {
  if (original.relational_cost == 0.0) {
    return projected.relational_cost == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  }
  return projected.relational_cost / original.relational_cost;
}

json to_json(const KMeansComparison& cmp, const RunManifest& manifest) {
  return {{"manifest", to_json(manifest)},
          {"method", std::string(method_name(cmp.method))},
          {"n", cmp.n},
          {"k", cmp.original.k},
          {"seed", cmp.original.seed},
          {"restarts", cmp.restarts},
          {"epsilon", cmp.config.epsilon},
          {"const", cmp.config.dim_constant},
          {"cost_definition", "relational: sum over clusters of (1/(2|C|)) * sum_{i,j in C} D_ij"},
          {"original_cost", json_real(cmp.original.relational_cost)},
          {"method_cost", json_real(cmp.projected.relational_cost)},
          {"ratio", json_real(cmp.ratio())},
          {"original", to_json(cmp.original, true)},
          {"projected", to_json(cmp.projected, true)}};
}

}  // namespace nejl
