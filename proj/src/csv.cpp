#include "gelasso/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "gelasso/errors.hpp"

namespace gelasso::io {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::optional<double> parse_double(const std::string& s) {
  if (s == "NA" || s == "nan" || s == "NaN")
    return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& what) {
  throw InputError(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> default_names(Eigen::Index p) {
  std::vector<std::string> names(p);
  for (Eigen::Index j = 0; j < p; ++j) names[j] = "V" + std::to_string(j + 1);
  return names;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "NA";
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_metric(double v) { return format_double(v); }

Table read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");

  Table table;
  std::string line;
  int lineno = 0;
  bool saw_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto fields = split_csv(t);
    if (!saw_content) {
      saw_content = true;
      // Header row iff any field fails to parse as a number.
      bool all_numeric = true;
      for (const auto& f : fields)
        if (!parse_double(f)) {
          all_numeric = false;
          break;
        }
      if (!all_numeric) {
        table.header = fields;
        continue;
      }
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      const auto v = parse_double(f);
      if (!v) fail(path, lineno, "not a number: '" + f + "'");
      row.push_back(*v);
    }
    if (!table.rows.empty() && row.size() != table.rows.front().size())
      fail(path, lineno, "row has " + std::to_string(row.size()) +
                             " fields, expected " +
                             std::to_string(table.rows.front().size()));
    if (!table.header.empty() && row.size() != table.header.size())
      fail(path, lineno, "row width does not match the header");
    table.rows.push_back(std::move(row));
  }
  if (!saw_content)
    throw InputError("'" + path + "' is empty");
  if (table.rows.empty())
    throw InputError("'" + path + "' has a header but no data rows");
  return table;
}

void write_dataset(const std::string& path, const Matrix& data,
                   const std::vector<std::string>& names) {
  auto out = open_out(path);
  const auto cols =
      names.empty() ? default_names(data.cols()) : names;
  for (std::size_t j = 0; j < cols.size(); ++j)
    out << (j ? "," : "") << cols[j];
  out << "\n";
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      out << (j ? "," : "") << format_double(data(r, j));
    out << "\n";
  }
}

void write_dataset(const std::string& path, const IntMatrix& data,
                   const std::vector<std::string>& names) {
  auto out = open_out(path);
  const auto cols =
      names.empty() ? default_names(data.cols()) : names;
  for (std::size_t j = 0; j < cols.size(); ++j)
    out << (j ? "," : "") << cols[j];
  out << "\n";
  for (Eigen::Index r = 0; r < data.rows(); ++r) {
    for (Eigen::Index j = 0; j < data.cols(); ++j)
      out << (j ? "," : "") << data(r, j);
    out << "\n";
  }
}

void write_matrix(const std::string& path, const Matrix& m,
                  const std::vector<std::string>& names) {
  auto out = open_out(path);
  const auto cols = names.empty() ? default_names(m.cols()) : names;
  for (std::size_t j = 0; j < cols.size(); ++j)
    out << (j ? "," : "") << cols[j];
  out << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out << (j ? "," : "") << format_double(m(r, j));
    out << "\n";
  }
}

Matrix read_matrix(const std::string& path) {
  const Table t = read_table(path);
  const Eigen::Index rows = static_cast<Eigen::Index>(t.rows.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(t.rows.front().size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index j = 0; j < cols; ++j) m(r, j) = t.rows[r][j];
  return m;
}

void write_network(const std::string& path, const PcorNetwork& net) {
  auto out = open_out(path);
  const Eigen::Index p = net.weights.rows();
  out << "# p=" << p << "\n";
  out << "node_i,node_j,weight\n";
  for (Eigen::Index j = 0; j < p; ++j)
    for (Eigen::Index i = 0; i < j; ++i)
      if (net.weights(i, j) != 0.0)
        out << (i + 1) << "," << (j + 1) << ","
            << format_double(net.weights(i, j)) << "\n";
}

PcorNetwork read_network(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::string first;
  std::getline(in, first);
  first = trim(first);
  in.close();

  if (first.rfind("# p=", 0) == 0) {
    int p = 0;
    {
      const std::string num = first.substr(4);
      auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), p);
      if (ec != std::errc{} || p < 1)
        throw InputError(path + ":1: malformed '# p=<count>' header");
    }
    PcorNetwork net = PcorNetwork::empty(p);
    std::ifstream edges(path);
    std::string line;
    int lineno = 0;
    while (std::getline(edges, line)) {
      ++lineno;
      const std::string t = trim(line);
      if (t.empty() || t[0] == '#') continue;
      const auto fields = split_csv(t);
      if (fields.size() != 3)
        fail(path, lineno, "edge rows need exactly node_i,node_j,weight");
      if (!parse_double(fields[0])) continue;  // column-name header row
      const auto i = parse_double(fields[0]);
      const auto j = parse_double(fields[1]);
      const auto w = parse_double(fields[2]);
      if (!i || !j || !w) fail(path, lineno, "malformed edge row");
      const int ii = static_cast<int>(*i) - 1;
      const int jj = static_cast<int>(*j) - 1;
      if (ii < 0 || jj < 0 || ii >= p || jj >= p || ii == jj)
        fail(path, lineno, "edge indices out of range");
      net.weights(ii, jj) = *w;
      net.weights(jj, ii) = *w;
    }
    return net;
  }

  // Plain matrix form.
  Matrix m = read_matrix(path);
  if (m.rows() != m.cols())
    throw InputError("'" + path + "': network matrix must be square");
  if (symmetry_gap(m) > 1e-8)
    throw InputError("'" + path + "': network matrix must be symmetric");
  symmetrize(m);
  m.diagonal().setZero();
  return {std::move(m)};
}

}  // namespace gelasso::io
