#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gelasso/generation.hpp"
#include "gelasso/linalg.hpp"

namespace gelasso::io {

// Shortest round-trip decimal form (std::to_chars), so written files parse
// back to the same bits.
std::string format_double(double v);

// "NA" for NaN, otherwise format_double.
std::string format_metric(double v);

struct Table {
  std::vector<std::string> header;   // empty when the file had none
  std::vector<std::vector<double>> rows;
};

// Numeric CSV with an optional (auto-detected) non-numeric header row.
// Lines starting with '#' are skipped. Throws InputError naming the file
// and line on malformed content or an empty file.
Table read_table(const std::string& path);

void write_dataset(const std::string& path, const Matrix& data,
                   const std::vector<std::string>& names);
void write_dataset(const std::string& path, const IntMatrix& data,
                   const std::vector<std::string>& names);

// Square matrix CSV with a names header (V1..Vp when none given).
void write_matrix(const std::string& path, const Matrix& m,
                  const std::vector<std::string>& names = {});
Matrix read_matrix(const std::string& path);

// Truth files: canonical form is a '# p=N' header plus 'node_i,node_j,weight'
// 1-based upper-triangle edge rows; a plain square matrix CSV is accepted
// too (told apart by the header line).
void write_network(const std::string& path, const PcorNetwork& net);
PcorNetwork read_network(const std::string& path);

}  // namespace gelasso::io
