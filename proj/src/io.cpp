#include "nejl/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "nejl/error.hpp"

namespace nejl {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw DataError("format_double: conversion failed");
  return {buf.data(), ptr};
}

std::vector<std::vector<double>> read_csv_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    std::size_t field = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      const std::string_view cell = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
      double v = 0.0;
      if (!parse_double(cell, v)) {
        throw DataError("line " + std::to_string(line_no) + ", field " + std::to_string(field + 1) +
                        ": not a number: '" + std::string(trim(cell)) + "'");
      }
      row.push_back(v);
      ++field;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw DataError("read error while parsing CSV");
  return rows;
}

DissimilarityMatrix read_matrix_csv(std::istream& in) {
  const auto rows = read_csv_rows(in);
  if (rows.empty()) throw DataError("matrix file is empty");
  return validate_matrix(rows);
}

DissimilarityMatrix read_matrix_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open matrix file '" + path.string() + "'");
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const RowMatrix& m) {
  std::string line;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) line += ',';
      line += format_double(m(i, j));
    }
    line += '\n';
    out << line;
  }
}

void write_matrix_csv(const std::filesystem::path& path, const RowMatrix& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  write_matrix_csv(out, m);
  out.flush();
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

std::vector<Edge> read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#' || body.front() == '%') continue;
    std::istringstream fields{std::string(body)};
    std::string a;
    std::string b;
    std::string extra;
    fields >> a >> b;
    if (b.empty() || (fields >> extra)) {
      throw DataError("line " + std::to_string(line_no) + ": expected two vertex ids, got '" + std::string(body) + "'");
    }
    std::size_t u = 0;
    std::size_t v = 0;
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), u);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), v);
    if (ra.ec != std::errc() || ra.ptr != a.data() + a.size() || rb.ec != std::errc() ||
        rb.ptr != b.data() + b.size()) {
      throw DataError("line " + std::to_string(line_no) + ": vertex ids must be non-negative integers, got '" +
                      std::string(body) + "'");
    }
    edges.emplace_back(u, v);
  }
  if (in.bad()) throw DataError("read error while parsing edge list");
  if (edges.empty()) throw DataError("edge list is empty");
  return edges;
}

std::vector<Edge> read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open edge list '" + path.string() + "'");
  return read_edge_list(in);
}

}  // namespace nejl
