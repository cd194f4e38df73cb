// nejl: generate, ingest, project and validate dissimilarity matrices.
//
//   nejl gen simplex --n 1000 --seed 1 --out simplex.csv
//   nejl gen ball --n 1000 --dim 10 --rmin 0.5 --rmax 2 --out balls.csv
//   nejl ingest-graph edges.txt --out hops.csv
//   nejl project simplex.csv --method jl-pq --out-report r.json --out-matrix dhat.csv
//   nejl validate simplex.csv --method jl-power --sample 20 --out-csv pairs.csv
//   nejl kmeans simplex.csv --k 5 --method jl-power
//
// Exit codes: 0 ok, 1 usage, 2 data, 3 numerical.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nejl/datagen.hpp"
#include "nejl/error.hpp"
#include "nejl/io.hpp"
#include "nejl/kmeans.hpp"
#include "nejl/pipeline.hpp"
#include "nejl/report.hpp"
#include "nejl/simd/kernels.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct ProjectFlags {
  std::string input;
  std::string method = "jl-pq";
  double epsilon = 0.5;
  double dim_constant = 2.0;
  std::uint64_t seed = 0;
  std::optional<double> radius_override;
};

void add_project_flags(CLI::App* cmd, ProjectFlags& f) {
  cmd->add_option("input", f.input, "Matrix CSV")->required();
  cmd->add_option("--method", f.method, "jl, jl-pq or jl-power")->capture_default_str();
  cmd->add_option("--epsilon", f.epsilon, "Distortion parameter in (0,1)")->capture_default_str();
  cmd->add_option("--const", f.dim_constant, "Target dimension constant")->capture_default_str();
  cmd->add_option("--seed", f.seed, "Projection seed")->capture_default_str();
  cmd->add_option("--radius-override", f.radius_override, "Ball radius for jl-power (default: smallest sufficient)");
}

nejl::PipelineOptions pipeline_options(const ProjectFlags& f) {
  nejl::PipelineOptions opts;
  opts.method = nejl::parse_method(f.method);
  opts.config.epsilon = f.epsilon;
  opts.config.dim_constant = f.dim_constant;
  opts.config.seed = f.seed;
  opts.config.validate();
  opts.radius_override = f.radius_override;
  if (f.radius_override && !(*f.radius_override >= 0.0)) throw nejl::UsageError("--radius-override must be >= 0");
  return opts;
}

json config_json(const ProjectFlags& f) {
  json c = {{"method", f.method}, {"epsilon", f.epsilon}, {"const", f.dim_constant}, {"seed", f.seed}};
  c["radius_override"] = f.radius_override ? json(*f.radius_override) : json(nullptr);
  return c;
}

void emit_json(const json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw nejl::DataError("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw nejl::DataError("write failed for '" + path + "'");
}

void emit_matrix(const nejl::RowMatrix& m, const std::string& path) {
  if (path.empty() || path == "-") {
    nejl::write_matrix_csv(std::cout, m);
  } else {
    nejl::write_matrix_csv(fs::path(path), m);
  }
}

std::vector<nejl::PairRecord> sample_records(std::vector<nejl::PairRecord> records, std::size_t count,
                                             std::uint64_t seed) {
  if (count == 0 || count >= records.size()) return records;
  std::vector<std::size_t> idx(records.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  chosen.reserve(count);
  std::sample(idx.begin(), idx.end(), std::back_inserter(chosen), static_cast<std::ptrdiff_t>(count), rng);
  std::vector<nejl::PairRecord> out;
  out.reserve(count);
  for (std::size_t k : chosen) out.push_back(records[k]);
  return out;
}

void write_records(std::ostream& out, const std::vector<nejl::PairRecord>& records, bool pq) {
  out << "i,j,d,dhat,ratio," << (pq ? "c_ij" : "residual") << ",lower,upper,violated\n";
  for (const auto& r : records) {
    const double ratio = r.d != 0.0 ? r.dhat / r.d : std::numeric_limits<double>::quiet_NaN();
    out << r.i << ',' << r.j << ',' << nejl::format_double(r.d) << ',' << nejl::format_double(r.dhat) << ','
        << nejl::format_double(ratio) << ',' << nejl::format_double(r.factor) << ','
        << nejl::format_double(r.lower) << ',' << nejl::format_double(r.upper) << ',' << (r.violated ? 1 : 0)
        << '\n';
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Johnson-Lindenstrauss transforms for non-Euclidean dissimilarity matrices"};
  app.set_version_flag("--version", std::string(nejl::library_version()));
  app.require_subcommand(1);
  std::string isa;
  app.add_option("--isa", isa, "Kernel variant: scalar, avx2, neon (default: best available)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic matrix");
  gen->require_subcommand(1);
  nejl::SimplexSpec simplex;
  std::string simplex_out;
  auto* gen_simplex = gen->add_subcommand("simplex", "Perturbed-simplex non-Euclidean matrix");
  gen_simplex->add_option("--n", simplex.n, "Number of points")->required();
  gen_simplex->add_option("--seed", simplex.seed)->capture_default_str();
  gen_simplex->add_option("--alpha", simplex.dominance, "Perturbation range (default 20n)");
  gen_simplex->add_option("--out", simplex_out, "Output CSV (default stdout)");

  nejl::BallSpec ball;
  std::string ball_out;
  auto* gen_ball = gen->add_subcommand("ball", "Distances between random balls");
  gen_ball->add_option("--n", ball.n, "Number of balls")->required();
  gen_ball->add_option("--seed", ball.seed)->capture_default_str();
  gen_ball->add_option("--dim", ball.dim)->capture_default_str();
  gen_ball->add_option("--rmin", ball.r_min)->capture_default_str();
  gen_ball->add_option("--rmax", ball.r_max)->capture_default_str();
  gen_ball->add_option("--out", ball_out, "Output CSV (default stdout)");

  // ingest-graph
  std::string edges_path;
  std::string hops_out;
  auto* ingest = app.add_subcommand("ingest-graph", "Hop-distance matrix of an edge list");
  ingest->add_option("edges", edges_path, "Edge list: one 'u v' per line")->required();
  ingest->add_option("--out", hops_out, "Output CSV (default stdout)");

  // project
  ProjectFlags pf;
  std::string out_report;
  std::string out_matrix;
  auto* project = app.add_subcommand("project", "Project a matrix and report distortion");
  add_project_flags(project, pf);
  project->add_option("--out-report", out_report, "Report JSON (default stdout)");
  project->add_option("--out-matrix", out_matrix, "Reconstructed matrix CSV");

  // validate
  ProjectFlags vf;
  std::string out_csv;
  std::string out_summary;
  std::size_t sample = 0;
  bool identity_debug = false;
  auto* validate = app.add_subcommand("validate", "Per-pair bound check with plot data");
  add_project_flags(validate, vf);
  validate->add_option("--out-csv", out_csv, "Per-pair records CSV (default stdout)");
  validate->add_option("--out-summary", out_summary, "Summary JSON (default stderr)");
  validate->add_option("--sample", sample, "Emit this many randomly chosen pairs (0 = all)");
  validate->add_flag("--identity-debug", identity_debug, "Score D itself in place of the reconstruction");

  // kmeans
  ProjectFlags kf;
  nejl::KMeansOptions kopts;
  std::string out_kmeans;
  auto* kmeans = app.add_subcommand("kmeans", "Compare clustering cost before and after projection");
  add_project_flags(kmeans, kf);
  kmeans->add_option("--k", kopts.k, "Number of clusters")->required();
  kmeans->add_option("--restarts", kopts.restarts)->capture_default_str();
  kmeans->add_option("--max-iter", kopts.max_iter)->capture_default_str();
  kmeans->add_option("--out", out_kmeans, "Result JSON (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(nejl::ExitCode::usage);
  }

  if (!isa.empty()) {
    nejl::simd::Isa chosen{};
    if (!nejl::simd::parse_isa(isa, chosen)) throw nejl::UsageError("unknown --isa '" + isa + "'");
    if (!nejl::simd::force_isa(chosen)) throw nejl::UsageError("--isa " + isa + " is not available on this machine");
  }

  nejl::RunManifest manifest;
  manifest.start();

  if (gen_simplex->parsed()) {
    if (simplex.dominance < 0.0) throw nejl::UsageError("--alpha must be >= 0");
    const auto d = nejl::gen_simplex(simplex);
    emit_matrix(d.entries(), simplex_out);
    return 0;
  }
  if (gen_ball->parsed()) {
    const auto d = nejl::gen_balls(ball);
    emit_matrix(d.entries(), ball_out);
    return 0;
  }
  if (ingest->parsed()) {
    const auto hops = nejl::graph_hops(nejl::read_edge_list(fs::path(edges_path)));
    if (hops.truncated) {
      std::cerr << "warning: graph is disconnected; kept the largest component (" << hops.vertices.size() << " of "
                << hops.original_vertices << " vertices)\n";
    }
    emit_matrix(hops.matrix.entries(), hops_out);
    return 0;
  }
  if (project->parsed()) {
    const auto opts = pipeline_options(pf);
    manifest.command = "project";
    manifest.inputs = {pf.input};
    manifest.config = config_json(pf);
    const auto d = nejl::read_matrix_csv(fs::path(pf.input));
    const auto result = nejl::run_projection(d, opts);
    if (!out_matrix.empty()) emit_matrix(result.dhat, out_matrix);
    manifest.finish();
    emit_json(nejl::to_json(result.report, manifest), out_report);
    return 0;
  }
  if (validate->parsed()) {
    auto opts = pipeline_options(vf);
    if (opts.method == nejl::Method::jl) {
      throw nejl::UsageError("validate checks the jl-pq or jl-power bound; choose one of those methods");
    }
    opts.keep_records = true;
    opts.identity_debug = identity_debug;
    manifest.command = "validate";
    manifest.inputs = {vf.input};
    manifest.config = config_json(vf);
    manifest.config["sample"] = sample;
    manifest.config["identity_debug"] = identity_debug;
    const auto d = nejl::read_matrix_csv(fs::path(vf.input));
    const auto result = nejl::run_projection(d, opts);
    const bool pq = opts.method == nejl::Method::jl_pq;
    const auto& all = pq ? result.report.pq_check->records : result.report.power_check->records;
    const auto rows = sample_records(all, sample, vf.seed);
    if (out_csv.empty() || out_csv == "-") {
      write_records(std::cout, rows, pq);
    } else {
      std::ofstream out(out_csv);
      if (!out) throw nejl::DataError("cannot write '" + out_csv + "'");
      write_records(out, rows, pq);
    }
    manifest.finish();
    json summary = nejl::to_json(result.report, manifest);
    summary["rows"] = rows.size();
    if (out_summary.empty()) {
      std::cerr << summary.dump(2) << '\n';
    } else {
      emit_json(summary, out_summary);
    }
    return 0;
  }
  if (kmeans->parsed()) {
    const auto opts = pipeline_options(kf);
    kopts.seed = kf.seed;
    manifest.command = "kmeans";
    manifest.inputs = {kf.input};
    manifest.config = config_json(kf);
    manifest.config["k"] = kopts.k;
    manifest.config["restarts"] = kopts.restarts;
    manifest.config["max_iter"] = kopts.max_iter;
    const auto d = nejl::read_matrix_csv(fs::path(kf.input));
    if (kopts.k < 1 || kopts.k > d.n()) {
      throw nejl::UsageError("--k must be in [1, " + std::to_string(d.n()) + "]");
    }
    nejl::KMeansComparison cmp;
    cmp.method = opts.method;
    cmp.n = d.n();
    cmp.restarts = kopts.restarts;
    cmp.config = opts.config;
    cmp.original = nejl::relational_kmeans(d, kopts);
    const auto projected = nejl::run_projection(d, opts);
    cmp.projected = nejl::kmeans_projected(projected.coords, d, kopts);
    manifest.finish();
    emit_json(nejl::to_json(cmp, manifest), out_kmeans);
    return 0;
  }
  return static_cast<int>(nejl::ExitCode::usage);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const nejl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.exit_code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(nejl::ExitCode::data);
  }
}
