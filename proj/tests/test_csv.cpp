// test_csv.cpp — CSV ingest/export: header detection, strict parsing errors,
// 17-digit round trips, and column-block reordering.
#include "ecdm/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <gtest/gtest.h>

#include "ecdm/errors.hpp"

namespace {

namespace fs = std::filesystem;

class CsvTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ecdm_csv_" + std::to_string(::testing::UnitTest::GetInstance()
                                             ->random_seed()) +
            "_" + std::string(::testing::UnitTest::GetInstance()
                                  ->current_test_info()
                                  ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  std::string write_file(const std::string& name, const std::string& body) {
    const fs::path p = dir_ / name;
    std::ofstream out(p);
    out << body;
    return p.string();
  }

  fs::path dir_;
};

TEST_F(CsvTest, ReadsHeaderlessNumericTable) {
  const std::string path = write_file("plain.csv", "1,2,3\n4,5,6\n");
  const ecdm::CsvTable t = ecdm::read_csv(path);
  EXPECT_FALSE(t.had_header);
  EXPECT_TRUE(t.columns.empty());
  ASSERT_EQ(t.data.rows(), 2);
  ASSERT_EQ(t.data.cols(), 3);
  EXPECT_DOUBLE_EQ(t.data(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(t.data(1, 2), 6.0);
}

TEST_F(CsvTest, DetectsHeaderRow) {
  const std::string path =
      write_file("named.csv", "alpha,beta,gamma\n1.5,-2,3e2\n0,0.25,-1e-3\n");
  const ecdm::CsvTable t = ecdm::read_csv(path);
  EXPECT_TRUE(t.had_header);
  ASSERT_EQ(t.columns.size(), 3u);
  EXPECT_EQ(t.columns[0], "alpha");
  EXPECT_EQ(t.columns[2], "gamma");
  ASSERT_EQ(t.data.rows(), 2);
  EXPECT_DOUBLE_EQ(t.data(0, 2), 300.0);
  EXPECT_DOUBLE_EQ(t.data(1, 1), 0.25);
  EXPECT_DOUBLE_EQ(t.data(1, 2), -1e-3);
}

TEST_F(CsvTest, ToleratesPaddingCrlfAndBlankLines) {
  const std::string path = write_file(
      "messy.csv", "x , y\r\n 1 ,\t2 \r\n\n  3,4\r\n\n");
  const ecdm::CsvTable t = ecdm::read_csv(path);
  EXPECT_TRUE(t.had_header);
  ASSERT_EQ(t.columns.size(), 2u);
  EXPECT_EQ(t.columns[0], "x");
  EXPECT_EQ(t.columns[1], "y");
  ASSERT_EQ(t.data.rows(), 2);
  EXPECT_DOUBLE_EQ(t.data(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(t.data(1, 1), 4.0);
}

TEST_F(CsvTest, RaggedRowNamesTheLine) {
  const std::string path = write_file("ragged.csv", "1,2\n3,4\n5\n");
  try {
    ecdm::read_csv(path);
    FAIL() << "expected ArgumentError";
  } catch (const ecdm::ArgumentError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
    EXPECT_NE(msg.find("expected 2"), std::string::npos) << msg;
  }
}

TEST_F(CsvTest, BadFieldNamesLineAndField) {
  const std::string path = write_file("bad.csv", "1,2\n3,oops\n");
  try {
    ecdm::read_csv(path);
    FAIL() << "expected ArgumentError";
  } catch (const ecdm::ArgumentError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("line 2"), std::string::npos) << msg;
    EXPECT_NE(msg.find("oops"), std::string::npos) << msg;
  }
}

TEST_F(CsvTest, PartialNumericParseIsRejected) {
  // "1.5x" starts like a number; strict parsing must still refuse it.
  const std::string path = write_file("partial.csv", "h1,h2\n1.5x,2\n");
  EXPECT_THROW(ecdm::read_csv(path), ecdm::ArgumentError);
}

TEST_F(CsvTest, EmptyAndMissingFiles) {
  const std::string empty = write_file("empty.csv", "");
  EXPECT_THROW(ecdm::read_csv(empty), ecdm::ArgumentError);
  const std::string blank = write_file("blank.csv", "\n\n");
  EXPECT_THROW(ecdm::read_csv(blank), ecdm::ArgumentError);
  const std::string header_only = write_file("header_only.csv", "a,b\n");
  EXPECT_THROW(ecdm::read_csv(header_only), ecdm::ArgumentError);
  EXPECT_THROW(ecdm::read_csv((dir_ / "nope.csv").string()),
               ecdm::ArgumentError);
}

TEST_F(CsvTest, RoundTripIsExactAtFullPrecision) {
  ecdm::Matrix m(3, 2);
  m << 1.0 / 3.0, -2.718281828459045e-7,  //
      6.02214076e23, 0.1,                 //
      -0.0, 123456789.123456789;
  const std::string path = (dir_ / "round.csv").string();
  ecdm::write_csv_matrix(path, m, {"u", "v"});
  const ecdm::CsvTable t = ecdm::read_csv(path);
  EXPECT_TRUE(t.had_header);
  ASSERT_EQ(t.data.rows(), 3);
  ASSERT_EQ(t.data.cols(), 2);
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      EXPECT_EQ(t.data(i, j), m(i, j)) << i << "," << j;
    }
  }
}

TEST_F(CsvTest, WriteRejectsHeaderWidthMismatch) {
  ecdm::Matrix m = ecdm::Matrix::Zero(1, 3);
  EXPECT_THROW(
      ecdm::write_csv_matrix((dir_ / "w.csv").string(), m, {"one", "two"}),
      ecdm::ArgumentError);
}

TEST_F(CsvTest, SplitByNamesReordersAndCountsBlockOne) {
  const std::string path = write_file(
      "split.csv", "a,b,c,d\n1,2,3,4\n5,6,7,8\n");
  const ecdm::CsvTable t = ecdm::read_csv(path);
  const auto [m, p1] = ecdm::split_by_names(t, {"c", "a"});
  EXPECT_EQ(p1, 2);
  ASSERT_EQ(m.cols(), 4);
  // Leading block in the requested order, remainder in file order.
  EXPECT_DOUBLE_EQ(m(0, 0), 3.0);  // c
  EXPECT_DOUBLE_EQ(m(0, 1), 1.0);  // a
  EXPECT_DOUBLE_EQ(m(0, 2), 2.0);  // b
  EXPECT_DOUBLE_EQ(m(0, 3), 4.0);  // d
  EXPECT_DOUBLE_EQ(m(1, 0), 7.0);
}

TEST_F(CsvTest, SplitByNamesErrorCases) {
  const std::string path = write_file("s2.csv", "a,b,c\n1,2,3\n");
  const ecdm::CsvTable t = ecdm::read_csv(path);
  EXPECT_THROW(ecdm::split_by_names(t, {"nope"}), ecdm::ArgumentError);
  EXPECT_THROW(ecdm::split_by_names(t, {"a", "a"}), ecdm::ArgumentError);
  EXPECT_THROW(ecdm::split_by_names(t, {}), ecdm::ArgumentError);

  // Naming every column is legal here; the sample constructor rejects an
  // empty second block later, with the context to say so.
  const auto [all, p1_all] = ecdm::split_by_names(t, {"a", "b", "c"});
  EXPECT_EQ(p1_all, 3);

  // Requires a real header.
  const std::string bare = write_file("s3.csv", "1,2,3\n");
  const ecdm::CsvTable plain = ecdm::read_csv(bare);
  EXPECT_THROW(ecdm::split_by_names(plain, {"a"}), ecdm::ArgumentError);

  // Ambiguous duplicate header names are refused.
  const std::string dup = write_file("s4.csv", "a,b,a\n1,2,3\n");
  const ecdm::CsvTable dup_t = ecdm::read_csv(dup);
  EXPECT_THROW(ecdm::split_by_names(dup_t, {"a"}), ecdm::ArgumentError);
}

}  // namespace
