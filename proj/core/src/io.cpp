#include "rws/io.hpp"

#include "rws/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace rws::io {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && errno != ERANGE;
}

std::vector<std::vector<std::string>> read_rows(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  return rows;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  return in;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Table read_numeric_csv(std::istream& in) {
  auto rows = read_rows(in);
  Table t;
  if (rows.empty()) throw InvalidInput("empty CSV input");
  std::size_t start = 0;
  double dummy = 0.0;
  for (const auto& cell : rows.front()) {
    if (!parse_double(cell, dummy)) {
      t.header = rows.front();
      start = 1;
      break;
    }
  }
  if (start == rows.size()) throw InvalidInput("CSV has a header but no data rows");
  const std::size_t cols = rows[start].size();
  t.values.resize(static_cast<Index>(rows.size() - start), static_cast<Index>(cols));
  for (std::size_t r = start; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw InvalidInput("CSV row " + std::to_string(r + 1) + " has " +
                         std::to_string(rows[r].size()) + " cells, expected " +
                         std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) {
      double v = 0.0;
      if (!parse_double(rows[r][c], v)) {
        throw InvalidInput("CSV row " + std::to_string(r + 1) + ": non-numeric cell '" +
                           rows[r][c] + "'");
      }
      t.values(static_cast<Index>(r - start), static_cast<Index>(c)) = v;
    }
  }
  return t;
}

Table read_numeric_csv(const std::string& path) {
  auto in = open_input(path);
  return read_numeric_csv(in);
}

SymmetricMatrix read_matrix_csv(std::istream& in) {
  Table t = read_numeric_csv(in);
  if (!t.header.empty()) throw InvalidInput("matrix CSV must not have a header");
  if (t.values.rows() != t.values.cols()) {
    throw InvalidInput("matrix CSV is " + std::to_string(t.values.rows()) + "x" +
                       std::to_string(t.values.cols()) + ", expected square");
  }
  return SymmetricMatrix(t.values);
}

SymmetricMatrix read_matrix_csv(const std::string& path) {
  auto in = open_input(path);
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
  std::ostringstream ss;
  write_matrix_csv(ss, m);
  write_text(path, ss.str());
}

DataMatrix read_data_csv(const std::string& path) {
  return DataMatrix(read_numeric_csv(path).values);
}

void write_data_csv(const std::string& path, const Eigen::MatrixXd& x,
                    const std::vector<std::string>& header) {
  std::ostringstream ss;
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) ss << (c ? "," : "") << header[c];
    ss << '\n';
  }
  write_matrix_csv(ss, x);
  write_text(path, ss.str());
}

ReturnsTable read_returns_csv(std::istream& in) {
  auto rows = read_rows(in);
  if (rows.size() < 2) throw InvalidInput("returns CSV needs a header and at least one row");
  ReturnsTable t;
  const auto& header = rows.front();
  if (header.size() < 2) throw InvalidInput("returns CSV needs a date column and assets");
  t.assets.assign(header.begin() + 1, header.end());
  const std::size_t cols = header.size();
  t.returns.resize(static_cast<Index>(rows.size() - 1), static_cast<Index>(cols - 1));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw InvalidInput("returns CSV row " + std::to_string(r + 1) + " has wrong width");
    }
    t.dates.push_back(rows[r][0]);
    for (std::size_t c = 1; c < cols; ++c) {
      double v = 0.0;
      if (!parse_double(rows[r][c], v)) {
        throw InvalidInput("returns CSV row " + std::to_string(r + 1) + ": bad value '" +
                           rows[r][c] + "'");
      }
      t.returns(static_cast<Index>(r - 1), static_cast<Index>(c - 1)) = v;
    }
  }
  return t;
}

ReturnsTable read_returns_csv(const std::string& path) {
  auto in = open_input(path);
  return read_returns_csv(in);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
  if (!out) throw InvalidInput("write failed for " + path);
}

}  // namespace rws::io
