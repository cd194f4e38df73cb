#pragma once

// JSON serialization of run reports. Non-finite reals are written as the
// strings "inf", "-inf" or "nan".

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "nejl/kmeans.hpp"
#include "nejl/pipeline.hpp"

namespace nejl {

std::string_view library_version() noexcept;

struct RunManifest {
  std::string command;
  std::vector<std::string> inputs;
  nlohmann::json config = nlohmann::json::object();
  std::string version{library_version()};
  double duration_seconds = 0.0;

  /// Starts the wall clock; finish() stores the elapsed time.
  void start() noexcept { started_ = std::chrono::steady_clock::now(); }
  void finish() noexcept;

 private:
  std::chrono::steady_clock::time_point started_ = std::chrono::steady_clock::now();
};

/// Number or the string form of a non-finite value.
nlohmann::json json_real(double v);

nlohmann::json to_json(const RunManifest& manifest);
nlohmann::json to_json(const RelErrorStats& stats);
nlohmann::json to_json(const ProjectionReport& report, const RunManifest& manifest);
nlohmann::json to_json(const KMeansResult& result, bool with_assignment);

/// Clustering comparison: relational cost of the reference run on D and of
/// the run on projected coordinates, with their ratio.
struct KMeansComparison {
  Method method = Method::jl_pq;
  std::size_t n = 0;
  std::size_t restarts = 0;
  ProjectionConfig config;
  KMeansResult original;
  KMeansResult projected;

  [[nodiscard]] double ratio() const noexcept;
};

nlohmann::json to_json(const KMeansComparison& cmp, const RunManifest& manifest);

}  // namespace nejl
