#pragma once

#include "rws/data.hpp"
#include "rws/matrix.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rws::io {

/// Shortest decimal form that round-trips: 17 significant digits.
std::string format_double(double v);

/// p rows of p comma-separated values, no header. Validates squareness and
/// symmetrizes.
SymmetricMatrix read_matrix_csv(std::istream& in);
SymmetricMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m);
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m);

struct Table {
  std::vector<std::string> header;  // empty when the file had none
  Eigen::MatrixXd values;
};

/// Numeric CSV; a first row containing any non-numeric cell is a header.
Table read_numeric_csv(std::istream& in);
Table read_numeric_csv(const std::string& path);

DataMatrix read_data_csv(const std::string& path);
void write_data_csv(const std::string& path, const Eigen::MatrixXd& x,
                    const std::vector<std::string>& header = {});

/// Asset returns: a header row, first column a date string, remaining columns
/// decimal returns per asset.
struct ReturnsTable {
  std::vector<std::string> dates;
  std::vector<std::string> assets;
  Eigen::MatrixXd returns;  // T x p
};

ReturnsTable read_returns_csv(std::istream& in);
ReturnsTable read_returns_csv(const std::string& path);

/// Writes text to path, throwing InvalidInput when the file cannot be opened.
void write_text(const std::string& path, const std::string& text);

}  // namespace rws::io
