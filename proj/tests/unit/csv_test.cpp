#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "dmimo/csv.hpp"
#include "dmimo/error.hpp"

namespace dmimo {
namespace {

TEST(Csv, HeaderVersionAndQuoting) {
  CsvTable t("demo", {"name", "value"});
  t.add_row({"plain", cell(1.5)});
  t.add_row({"has,comma", cell(2)});
  t.add_row({"quote\"d", cell(0.1)});
  EXPECT_EQ(t.to_csv(),
            "# dmimo-csv v1 kind=demo\n"
            "name,value\n"
            "plain,1.5\n"
            "\"has,comma\",2\n"
            "\"quote\"\"d\",0.1\n");
  EXPECT_THROW(t.add_row({"only one"}), std::invalid_argument);
}

TEST(Csv, ShortestRoundTripNumbers) {
  EXPECT_EQ(cell(0.1 + 0.2), "0.30000000000000004");
  EXPECT_EQ(std::stod(cell(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(cell(-7), "-7");
}

TEST(Csv, JsonMirrorsCsv) {
  CsvTable t("demo", {"scheme", "se"});
  t.add_row({"gpfzf", cell(2.25)});
  t.add_row({"pfzf", cell(2)});
  const auto j = nlohmann::json::parse(t.to_json());
  EXPECT_EQ(j["schema"], "dmimo-csv v1");
  EXPECT_EQ(j["kind"], "demo");
  EXPECT_EQ(j["columns"][1], "se");
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_EQ(j["rows"][0]["scheme"], "gpfzf");
  EXPECT_EQ(j["rows"][0]["se"].get<double>(), 2.25);
  EXPECT_EQ(j["rows"][1]["se"].get<double>(), 2.0);
}

TEST(Csv, AtomicWriteReplacesAndCleansUp) {
  const auto dir = std::filesystem::temp_directory_path() / "dmimo_csv_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto path = dir / "x.csv";
  write_file_atomic(path, "first\n");
  write_file_atomic(path, "second\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), "second\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "x.csv.tmp"));
  EXPECT_THROW(write_file_atomic(dir / "missing" / "y.csv", "z"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace dmimo
