#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "psc/compressions.hpp"
#include "psc/matrix_io.hpp"
#include "psc/rand_frames.hpp"

using namespace psc;

TEST(ParseComplex, Forms) {
  EXPECT_EQ(parse_complex("1"), Complex(1, 0));
  EXPECT_EQ(parse_complex(" -2.5e-3 "), Complex(-2.5e-3, 0));
  EXPECT_EQ(parse_complex("3j"), Complex(0, 3));
  EXPECT_EQ(parse_complex("1+2j"), Complex(1, 2));
  EXPECT_EQ(parse_complex("1.5-0.25i"), Complex(1.5, -0.25));
  EXPECT_EQ(parse_complex("-1e-3+4.5e2j"), Complex(-1e-3, 450));
  EXPECT_EQ(parse_complex("2-j"), Complex(2, -1));
  EXPECT_THROW(parse_complex("abc"), std::invalid_argument);
  EXPECT_THROW(parse_complex(""), std::invalid_argument);
}

TEST(Generators, Shapes) {
  const CMatrix j = generate_matrix("jordan:4");
  EXPECT_EQ(j.rows(), 4);
  EXPECT_EQ(j(0, 1), Complex(1, 0));
  EXPECT_EQ(j(1, 0), Complex(0, 0));
  const CMatrix d = generate_matrix("diag:1,2+1j,-3j");
  EXPECT_EQ(d(1, 1), Complex(2, 1));
  EXPECT_EQ(d(2, 2), Complex(0, -3));
  const CMatrix g1 = generate_matrix("ginibre:20:5"), g2 = generate_matrix("ginibre:20:5");
  EXPECT_EQ((g1 - g2).norm(), 0.0);
  EXPECT_NEAR(g1.squaredNorm() / 20.0, 1.0, 0.2);  // entries CN(0, 1/n)
  const CMatrix u = generate_matrix("haar-unitary:6:1");
  EXPECT_LE((u.adjoint() * u - CMatrix::Identity(6, 6)).norm(), 1e-12);
  EXPECT_TRUE(is_generator("jordan:3"));
  EXPECT_FALSE(is_generator("matrix.json"));
  EXPECT_THROW(generate_matrix("jordan:x"), GeneratorError);
  EXPECT_THROW(generate_matrix("ginibre:4"), GeneratorError);
  EXPECT_THROW(generate_matrix("hilbert:4"), GeneratorError);
  EXPECT_THROW(generate_matrix("diag:1,q"), GeneratorError);
}

TEST(MatrixText, JsonAndCsvRoundTrip) {
  RngStream rng(91, 0);
  const CMatrix m = sample_ginibre(4, rng);
  EXPECT_EQ((parse_matrix_json(matrix_to_json(m)) - m).norm(), 0.0);
  EXPECT_EQ((parse_matrix_csv(matrix_to_csv(m)) - m).norm(), 0.0);
  const CMatrix r = parse_matrix_json(R"({"nrows": 1, "ncols": 2, "entries": [[1, 0], [0, -1]]})");
  EXPECT_EQ(r(0, 1), Complex(0, -1));
}

TEST(MatrixText, ParseErrorsCarryLineNumbers) {
  try {
    parse_matrix_csv("# header\n1,2\n3,oops\n");
    FAIL();
  } catch (const MatrixParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  try {
    parse_matrix_csv("1,2\n3\n");
    FAIL();
  } catch (const MatrixParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_matrix_json("{\n\"nrows\": 1,\n\"ncols\": ]\n}");
    FAIL();
  } catch (const MatrixParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_matrix_json(R"({"nrows": 2, "ncols": 2, "entries": [[1, 0]]})"), MatrixParseError);
  EXPECT_THROW(parse_matrix_csv("\n# nothing\n"), MatrixParseError);
}

TEST(MatrixText, FilesAndSources) {
  const std::string path = testing::TempDir() + "psc_matrix_io.csv";
  {
    std::ofstream out(path);
    out << "1+1j,0\n0,2\n";
  }
  const CMatrix m = load_matrix(path);
  EXPECT_EQ(m(0, 0), Complex(1, 1));
  EXPECT_EQ(load_matrix("jordan:3").rows(), 3);
  std::remove(path.c_str());
  EXPECT_THROW(load_matrix("/nonexistent/psc.json"), std::runtime_error);
}
