#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "softwall/experiment/csv.hpp"

namespace ex = softwall::experiment;

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(ex::format_number(0.5), "0.5");
  EXPECT_EQ(ex::format_number(1.0), "1");
  EXPECT_EQ(ex::format_number(0.1), "0.1");
  EXPECT_EQ(ex::format_number(NAN), "nan");
  EXPECT_EQ(ex::format_number(INFINITY), "inf");
  EXPECT_EQ(ex::format_number(-INFINITY), "-inf");
  for (double v : {1.0 / 3.0, 6.02214076e23, -1e-300, 0.30000000000000004}) {
    EXPECT_EQ(std::stod(ex::format_number(v)), v);
  }
}

TEST(CsvTable, SingleRow) {
  ex::CsvTable t({"a", "b"});
  t.add_row({1.0, 0.5});
  EXPECT_EQ(t.to_string(), "a,b\n1,0.5\n");
}

TEST(CsvTable, EmptyTableIsHeaderOnly) { EXPECT_EQ(ex::CsvTable({"x", "y", "z"}).to_string(), "x,y,z\n"); }

TEST(CsvTable, MixedCellsAndColumnLookup) {
  ex::CsvTable t({"name", "n", "v"});
  t.add_row({std::string("failed"), std::int64_t{3}, 2.5});
  EXPECT_EQ(t.to_string(), "name,n,v\nfailed,3,2.5\n");
  EXPECT_EQ(t.column("v"), 2u);
  EXPECT_THROW(t.column("w"), std::out_of_range);
  EXPECT_THROW(t.add_row({1.0}), std::invalid_argument);
}

TEST(CsvTable, ByteStableAcrossCalls) {
  ex::CsvTable t({"x"});
  for (int i = 0; i < 100; ++i) t.add_row({std::sin(0.37 * i)});
  EXPECT_EQ(t.to_string(), t.to_string());
}

TEST(EmitCsv, WritesFileAndCreatesDirectories) {
  const auto dir = std::filesystem::path(testing::TempDir()) / "softwall_csv_test" / "nested";
  std::filesystem::remove_all(dir.parent_path());
  ex::CsvTable t({"a"});
  t.add_row({2.0});
  ex::emit_csv(t, (dir / "t.csv").string());
  std::ifstream in(dir / "t.csv");
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), "a\n2\n");
}

TEST(EmitCsv, FailureNamesThePath) {
  const auto file = std::filesystem::path(testing::TempDir()) / "softwall_csv_blocker";
  std::ofstream(file) << "x";
  const auto target = (file / "inside.csv").string();
  try {
    ex::emit_csv(ex::CsvTable({"a"}), target);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("inside.csv"), std::string::npos);
  }
}
