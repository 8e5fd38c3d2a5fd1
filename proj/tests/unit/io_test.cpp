#include "rws/errors.hpp"
#include "rws/io.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace rws {
namespace {

TEST(Io, MatrixRoundTripIsBitIdentical) {
  std::mt19937_64 rng(42);
  const SymmetricMatrix a(oracle::random_symmetric(rng, 7, 1e3));
  std::stringstream buf;
  io::write_matrix_csv(buf, a.matrix());
  const SymmetricMatrix b = io::read_matrix_csv(buf);
  EXPECT_TRUE(a == b);
}

TEST(Io, FormatDoubleRoundTrips) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 1e22, 123456789.123456789}) {
    EXPECT_EQ(std::stod(io::format_double(v)), v);
  }
}

TEST(Io, RejectsNonSquareMatrix) {
  std::stringstream buf("1,2\n3,4\n5,6\n");
  EXPECT_THROW(io::read_matrix_csv(buf), InvalidInput);
}

TEST(Io, DetectsHeaderRow) {
  std::stringstream with("a,b\n1,2\n3,4\n");
  const io::Table t = io::read_numeric_csv(with);
  ASSERT_EQ(t.header.size(), 2u);
  EXPECT_EQ(t.header[1], "b");
  EXPECT_EQ(t.values.rows(), 2);

  std::stringstream without("1,2\n3,4\n");
  const io::Table u = io::read_numeric_csv(without);
  EXPECT_TRUE(u.header.empty());
  EXPECT_EQ(u.values.rows(), 2);
}

TEST(Io, RejectsRaggedOrNonNumericBody) {
  std::stringstream ragged("1,2\n3\n");
  EXPECT_THROW(io::read_numeric_csv(ragged), InvalidInput);
  std::stringstream text("1,2\n3,x\n");
  EXPECT_THROW(io::read_numeric_csv(text), InvalidInput);
}

TEST(Io, ReadsReturnsTable) {
  std::stringstream buf("date,A,B\n2020-01,0.01,-0.02\n2020-02,0.03,0.00\n");
  const io::ReturnsTable r = io::read_returns_csv(buf);
  ASSERT_EQ(r.dates.size(), 2u);
  EXPECT_EQ(r.dates[1], "2020-02");
  EXPECT_EQ(r.assets[0], "A");
  EXPECT_DOUBLE_EQ(r.returns(0, 1), -0.02);
}

TEST(Io, MissingFileIsInvalidInput) {
  EXPECT_THROW(io::read_matrix_csv(std::string("/nonexistent/file.csv")), InvalidInput);
}

}  // namespace
}  // namespace rws
