#pragma once

// Matrix CSV and edge-list file formats.
//
// Matrix CSV: n lines of n comma-separated decimal values, no header.
// Values are written in shortest round-trip form (at most 17 significant
// digits), so a write/read cycle reproduces every double exactly.
//
// Edge list: one "u v" pair per line, whitespace separated, 0-based ids.
// Blank lines and lines starting with '#' or '%' are skipped.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nejl/datagen.hpp"
#include "nejl/dissim.hpp"
#include "nejl/matrix.hpp"

namespace nejl {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// Parses CSV rows. Throws DataError naming the line on malformed values.
std::vector<std::vector<double>> read_csv_rows(std::istream& in);

DissimilarityMatrix read_matrix_csv(std::istream& in);
DissimilarityMatrix read_matrix_csv(const std::filesystem::path& path);

void write_matrix_csv(std::ostream& out, const RowMatrix& m);
void write_matrix_csv(const std::filesystem::path& path, const RowMatrix& m);

std::vector<Edge> read_edge_list(std::istream& in);
std::vector<Edge> read_edge_list(const std::filesystem::path& path);

}  // namespace nejl
