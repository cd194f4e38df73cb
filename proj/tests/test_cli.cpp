#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "nejl/dissim.hpp"
#include "nejl/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

/// Runs the CLI with `args`; stderr is discarded unless `merge_err`.
Result cli(const std::string& args, bool merge_err = false) {
  const std::string cmd = std::string(NEJL_CLI) + " " + args + (merge_err ? " 2>&1" : " 2>/dev/null");
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t got = 0;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("nejl_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  [[nodiscard]] std::string file(const std::string& name) const { return (path / name).string(); }
};

void write_text(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

bool schema_tool_available() {
#ifdef NEJL_PYTHON
  return std::system(NEJL_PYTHON " -c \"import jsonschema\" >/dev/null 2>&1") == 0;
#else
  return false;
#endif
}

}  // namespace

TEST_CASE("gen simplex writes a valid matrix") {
  TempDir tmp;
  REQUIRE(cli("gen simplex --n 4 --seed 1 --out " + tmp.file("s.csv")).code == 0);
  const auto d = nejl::read_matrix_csv(fs::path(tmp.file("s.csv")));
  CHECK(d.n() == 4);
  CHECK(cli("gen simplex --n 4 --seed 1").out == cli("gen simplex --n 4 --seed 1").out);
}

TEST_CASE("gen ball with overlapping radii is all zero") {
  const auto r = cli("gen ball --n 3 --rmin 10 --rmax 10 --dim 2 --seed 1");
  CHECK(r.code == 0);
  CHECK(r.out == "0,0,0\n0,0,0\n0,0,0\n");
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli("gen simplex --seed 1").code == 1);
  CHECK(cli("").code == 1);
  CHECK(cli("frobnicate").code == 1);
  CHECK(cli("gen ball --n 3 --rmin 2 --rmax 1").code == 1);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("ingest-graph") {
  TempDir tmp;
  write_text(tmp.file("path.txt"), "0 1\n1 2\n");
  const auto r = cli("ingest-graph " + tmp.file("path.txt"));
  CHECK(r.code == 0);
  CHECK(r.out == "0,1,2\n1,0,1\n2,1,0\n");

  write_text(tmp.file("split.txt"), "0 1\n1 2\n7 8\n");
  const auto split = cli("ingest-graph " + tmp.file("split.txt"), true);
  CHECK(split.code == 0);
  CHECK(split.out.find("warning") != std::string::npos);
  CHECK(split.out.find("0,1,2\n1,0,1\n2,1,0\n") != std::string::npos);

  write_text(tmp.file("bad.txt"), "0 1\n1 two\n");
  const auto bad = cli("ingest-graph " + tmp.file("bad.txt"), true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("line 2") != std::string::npos);

  write_text(tmp.file("empty.txt"), "");
  CHECK(cli("ingest-graph " + tmp.file("empty.txt")).code == 2);
  CHECK(cli("ingest-graph " + tmp.file("missing.txt")).code == 2);
}

TEST_CASE("project on a Euclidean matrix with jl-power") {
  TempDir tmp;
  write_text(tmp.file("e.csv"), "0,1,4\n1,0,1\n4,1,0\n");
  const auto r = cli("project " + tmp.file("e.csv") + " --method jl-power --out-matrix " + tmp.file("dhat.csv"));
  REQUIRE(r.code == 0);
  const auto rep = json::parse(r.out);
  CHECK(rep["radius"] == 0.0);
  CHECK(rep["signature"]["q"] == 0);
  CHECK(rep["method"] == "jl-power");
  CHECK(rep["manifest"]["command"] == "project");
  CHECK(fs::exists(tmp.file("dhat.csv")));
}

TEST_CASE("project echoes m = 80 at n = 1000") {
  TempDir tmp;
  REQUIRE(cli("gen simplex --n 1000 --seed 3 --out " + tmp.file("s.csv")).code == 0);
  const auto r = cli("project " + tmp.file("s.csv") + " --method jl-pq --epsilon 0.5 --const 2 --out-report " +
                     tmp.file("r.json"));
  REQUIRE(r.code == 0);
  std::ifstream in(tmp.file("r.json"));
  const auto rep = json::parse(in);
  CHECK(rep["m"] == 80);
  CHECK(rep["n"] == 1000);
  CHECK(rep["bounds"].contains("pq_violation_rate"));
}

TEST_CASE("project flag and data errors") {
  TempDir tmp;
  write_text(tmp.file("e.csv"), "0,1\n1,0\n");
  CHECK(cli("project " + tmp.file("e.csv") + " --epsilon 1.5").code == 1);
  CHECK(cli("project " + tmp.file("e.csv") + " --method pca").code == 1);
  CHECK(cli("project " + tmp.file("e.csv") + " --method jl-pq --radius-override 1").code == 1);
  write_text(tmp.file("asym.csv"), "0,1\n2,0\n");
  CHECK(cli("project " + tmp.file("asym.csv")).code == 2);
  CHECK(cli("project " + tmp.file("nope.csv")).code == 2);
}

TEST_CASE("theorem-literal radius override is a numerical failure") {
  TempDir tmp;
  write_text(tmp.file("t.csv"), "0,1,1\n1,0,5\n1,5,0\n");
  // e_n = -1/6: sqrt(|e_n|)/2 is below the minimal sqrt(1/12).
  CHECK(cli("project " + tmp.file("t.csv") + " --method jl-power --radius-override 0.2041241452").code == 3);
  CHECK(cli("project " + tmp.file("t.csv") + " --method jl-power --radius-override 0.3").code == 0);
}

TEST_CASE("validate emits records and a summary") {
  TempDir tmp;
  std::ostringstream csv;
  // Squared distances of four collinear points: Euclidean, so every C_ij is 1.
  write_text(tmp.file("e.csv"), "0,1,4,9\n1,0,1,4\n4,1,0,1\n9,4,1,0\n");
  const auto r = cli("validate " + tmp.file("e.csv") + " --method jl-pq --out-summary " + tmp.file("sum.json"));
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "i,j,d,dhat,ratio,c_ij,lower,upper,violated");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    ++rows;
    std::istringstream fields(line);
    std::string cell;
    for (int k = 0; k < 6; ++k) std::getline(fields, cell, ',');
    CHECK(cell == "1");
  }
  CHECK(rows == 6);

  const auto ident = cli("validate " + tmp.file("e.csv") + " --method jl-power --identity-debug --out-summary " +
                         tmp.file("id.json") + " --out-csv " + tmp.file("id.csv"));
  REQUIRE(ident.code == 0);
  std::ifstream in(tmp.file("id.json"));
  const auto summary = json::parse(in);
  CHECK(summary["bounds"]["fraction_within"] == 1.0);
  CHECK(summary["bounds"]["power_residual_max"] == 0.0);
}

TEST_CASE("validate --sample emits exactly that many rows") {
  TempDir tmp;
  REQUIRE(cli("gen simplex --n 40 --seed 2 --out " + tmp.file("s.csv")).code == 0);
  const auto r = cli("validate " + tmp.file("s.csv") + " --method jl-pq --sample 20 --out-summary " +
                     tmp.file("sum.json"));
  REQUIRE(r.code == 0);
  CHECK(line_count(r.out) == 21);
  const auto id = cli("validate " + tmp.file("s.csv") + " --method jl-pq --identity-debug --out-summary " +
                      tmp.file("id.json"));
  std::ifstream in(tmp.file("id.json"));
  CHECK(json::parse(in)["bounds"]["pq_violation_rate"] == 0.0);
  CHECK(cli("validate " + tmp.file("s.csv") + " --method jl").code == 1);
}

TEST_CASE("kmeans costs and ratio") {
  TempDir tmp;
  write_text(tmp.file("d.csv"), "0,1,4,9\n1,0,1,4\n4,1,0,1\n9,4,1,0\n");
  const auto all = json::parse(cli("kmeans " + tmp.file("d.csv") + " --k 4 --method jl-pq").out);
  CHECK(all["original_cost"] == 0.0);
  CHECK(all["method_cost"] == 0.0);
  const auto one = json::parse(cli("kmeans " + tmp.file("d.csv") + " --k 1 --method jl").out);
  CHECK(one["original_cost"].get<double>() == doctest::Approx(40.0 / 8.0));
  CHECK(one["ratio"].get<double>() == doctest::Approx(1.0));
  CHECK(cli("kmeans " + tmp.file("d.csv") + " --k 5").code == 1);
  CHECK(cli("kmeans " + tmp.file("d.csv") + " --k 0").code == 1);
}

TEST_CASE("commands are deterministic given the seed") {
  TempDir tmp;
  REQUIRE(cli("gen ball --n 30 --seed 4 --out " + tmp.file("b.csv")).code == 0);
  const std::string cmd = "project " + tmp.file("b.csv") + " --method jl-power --seed 7 --out-matrix ";
  REQUIRE(cli(cmd + tmp.file("a.csv")).code == 0);
  REQUIRE(cli(cmd + tmp.file("b2.csv")).code == 0);
  std::ifstream a(tmp.file("a.csv"));
  std::ifstream b(tmp.file("b2.csv"));
  std::stringstream sa;
  std::stringstream sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}

TEST_CASE("reports validate against the shipped schemas") {
  if (!schema_tool_available()) {
    MESSAGE("python3 with jsonschema not found; schema check skipped");
    return;
  }
#ifdef NEJL_PYTHON
  TempDir tmp;
  REQUIRE(cli("gen simplex --n 30 --seed 5 --out " + tmp.file("s.csv")).code == 0);
  std::string reports;
  for (const char* m : {"jl", "jl-pq", "jl-power"}) {
    const std::string out = tmp.file(std::string("r_") + m + ".json");
    REQUIRE(cli("project " + tmp.file("s.csv") + " --method " + m + " --out-report " + out).code == 0);
    reports += " " + out;
  }
  REQUIRE(cli("validate " + tmp.file("s.csv") + " --method jl-power --sample 5 --out-csv " + tmp.file("v.csv") +
              " --out-summary " + tmp.file("v.json"))
              .code == 0);
  reports += " " + tmp.file("v.json");
  const std::string check = std::string(NEJL_PYTHON) + " " + NEJL_SCHEMA_CHECK + " " + NEJL_DOCS_DIR;
  CHECK(std::system((check + "/report.schema.json" + reports).c_str()) == 0);

  REQUIRE(cli("kmeans " + tmp.file("s.csv") + " --k 3 --out " + tmp.file("k.json")).code == 0);
  CHECK(std::system((check + "/kmeans.schema.json " + tmp.file("k.json")).c_str()) == 0);
#endif
}
