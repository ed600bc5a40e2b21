#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "arctanpi/cli/app.hpp"
#include "frozen_values.hpp"

using namespace arctanpi;
namespace fz = arctanpi::frozen;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  const Result r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string strip_timing(std::string s) {
  return std::regex_replace(s, std::regex(R"(("?(elapsed|run)_ms"?:\s*)[0-9.e+-]+)"), "$1_");
}

}  // namespace

TEST(CliCount, AcceptsPowersOfTen) {
  EXPECT_EQ(cli::parse_count("10000", "--L"), 10000u);
  EXPECT_EQ(cli::parse_count("1e6", "--L"), 1000000u);
  EXPECT_EQ(cli::parse_count("10^8", "--L"), 100000000u);
  EXPECT_EQ(cli::parse_count("3e2", "--L"), 300u);
  EXPECT_THROW(cli::parse_count("0", "--L"), cli::UsageError);
  EXPECT_THROW(cli::parse_count("-5", "--L"), cli::UsageError);
  EXPECT_THROW(cli::parse_count("1.5", "--L"), cli::UsageError);
  EXPECT_THROW(cli::parse_count("2^8", "--L"), cli::UsageError);
  EXPECT_THROW(cli::parse_count("1e30", "--L"), cli::UsageError);
}

TEST(CliPi, DirectSingleTerm) {
  const Result r = run({"pi", "--method", "direct", "--L", "1", "--digits", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("value: 3.200000000\n"), std::string::npos);
  EXPECT_NE(r.out.find("digits_coinciding: 1\n"), std::string::npos);
}

TEST(CliPi, AsymptoticMatchesFrozenCount) {
  const auto j = run_json({"pi", "--method", "asym", "--L", "10000", "--x", "1/100", "--digits", "30"});
  EXPECT_EQ(j["digits_coinciding"], fz::kAsymCoinciding_L10000_x1_100);
  EXPECT_EQ(j["method"], "asym");
  EXPECT_EQ(j["parameters"]["x"], "1/100");
  EXPECT_TRUE(j.contains("elapsed_ms"));
}

TEST(CliPi, MachinBeatsDirect) {
  const auto m = run_json({"pi", "--method", "formula:machin", "--L", "100", "--digits", "20"});
  const auto d = run_json({"pi", "--method", "direct", "--L", "100", "--digits", "20"});
  EXPECT_GT(m["digits_coinciding"].get<int>(), d["digits_coinciding"].get<int>());
}

TEST(CliPi, UsageErrors) {
  EXPECT_EQ(run({"pi", "--method", "asym", "--L", "10"}).code, 2);
  EXPECT_EQ(run({"pi", "--method", "direct", "--L", "10", "--x", "1/2"}).code, 2);
  EXPECT_EQ(run({"pi", "--method", "asym", "--L", "10", "--x", "0"}).code, 2);
  EXPECT_EQ(run({"pi", "--method", "formula:nope", "--L", "10"}).code, 2);
  EXPECT_EQ(run({"pi", "--method", "direct", "--L", "ten"}).code, 2);
  EXPECT_EQ(run({"pi", "--method", "direct", "--L", "10", "--digits", "0"}).code, 2);
  EXPECT_EQ(run({"pi", "--method", "direct", "--L", "10", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"pi", "--method", "direct", "--L", "10", "--mode", "binary64"}).code, 2);
  EXPECT_EQ(run({"pi", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST(CliPi, HelpExitsZero) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"pi", "--help"}).code, 0);
}

TEST(CliPi, IdempotentApartFromTiming) {
  const std::vector<std::string> args{"--format", "json", "pi", "--method", "asym", "--L", "300", "--x", "2/7"};
  EXPECT_EQ(strip_timing(run(args).out), strip_timing(run(args).out));
}

TEST(CliArctan, ReportsFrozenError) {
  const auto j = run_json({"arctan", "--x", "1", "--L", "10000"});
  EXPECT_NEAR(std::stod(j["epsilon"].get<std::string>()), fz::kArctan1_L10000_Error, 1e-24);
}

TEST(CliErf, WithinFrozenTolerance) {
  const auto j = run_json({"erf", "--x", "1", "--L", "1000"});
  EXPECT_LT(std::fabs(std::stod(j["error"].get<std::string>())), fz::kErfTol_x1_L1000);
  EXPECT_EQ(run({"erf", "--x", "11", "--L", "10"}).code, 2);
}

TEST(CliSinc, AllRulesAtZero) {
  const auto j = run_json({"sinc", "--x", "0", "--L", "7"});
  EXPECT_EQ(j["midpoint"], "1");
  EXPECT_EQ(j["trapezoid"], "1");
  EXPECT_EQ(j["simpson"], "1");
  EXPECT_EQ(run({"sinc", "--x", "1", "--L", "7", "--rule", "gauss"}).code, 2);
}

TEST(CliFigure, ErrorCurveCsv) {
  const Result r = run({"--format", "csv", "figure", "--which", "1", "--points", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 10u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "epsilon_L100", "epsilon_L200", "epsilon_L300", "epsilon_L400",
                                               "epsilon_L500"}));
  // Row 5 is x = 0: every epsilon is exactly zero.
  EXPECT_EQ(std::stod(rows[5][0]), 0.0);
  for (std::size_t c = 1; c < rows[5].size(); ++c) EXPECT_EQ(std::stod(rows[5][c]), 0.0);
  // |epsilon| strictly increases on the positive half-grid for every L.
  for (std::size_t c = 1; c < rows[0].size(); ++c) {
    for (std::size_t i = 6; i < rows.size(); ++i) {
      EXPECT_LT(std::fabs(std::stod(rows[i - 1][c])), std::fabs(std::stod(rows[i][c])));
    }
  }
}

TEST(CliFigure, CounterpartNearTwo) {
  const Result r = run({"--format", "csv", "figure", "--which", "2", "--points", "11", "--xmin", "-10", "--xmax",
                        "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 12u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"x", "counterpart_series", "arctan_reference"}));
  // x = 2 is grid point 7.
  ASSERT_EQ(std::stod(rows[7][0]), 2.0);
  const double target = std::atan(2.0) - std::numbers::pi / 2;
  EXPECT_LT(std::fabs(std::stod(rows[7][1]) - target), fz::kCounterpart2_L100_Tol + 1e-15);
}

TEST(CliFigure, CsvRoundTripsRenderedStrings) {
  const Result r = run({"--format", "csv", "figure", "--which", "1", "--L", "100", "--points", "5"});
  const Result t = run({"--format", "json", "figure", "--which", "1", "--L", "100", "--points", "5"});
  const auto rows = parse_csv(r.out);
  const auto j = nlohmann::json::parse(t.out);
  ASSERT_EQ(j["rows"].size(), rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][0], j["rows"][i - 1]["x"]);
    EXPECT_EQ(rows[i][1], j["rows"][i - 1]["epsilon_L100"]);
  }
}

TEST(CliFigure, UsageAndOutputErrors) {
  EXPECT_EQ(run({"figure", "--which", "3"}).code, 2);
  EXPECT_EQ(run({"figure", "--which", "1", "--points", "1"}).code, 2);
  EXPECT_EQ(run({"--out", "/nonexistent-dir/f.csv", "figure", "--which", "1", "--points", "3"}).code, 3);
}

TEST(CliFigure, WritesToFile) {
  const auto path = std::filesystem::temp_directory_path() / "arctanpi_fig2.csv";
  const Result r = run({"--format", "csv", "--out", path.string(), "figure", "--which", "2", "--points", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "x,counterpart_series,arctan_reference");
  std::filesystem::remove(path);
}

TEST(CliConverge, TableAndOrders) {
  const auto j = run_json({"converge", "--L", "10,100,1000"});
  ASSERT_EQ(j["rows"].size(), 3u);
  EXPECT_EQ(j["rows"][0]["digits_coinciding"], std::to_string(fz::kDirectCoinciding_L10));
  EXPECT_EQ(j["rows"][0]["order"], "");
  EXPECT_NEAR(std::stod(j["rows"][2]["order"].get<std::string>()), fz::kOrder_1e2_1e3, 1e-6);
  EXPECT_EQ(run({"converge", "--L", "100,10"}).code, 2);
}

TEST(CliFormulas, ListAndVerify) {
  const auto list = run_json({"formulas", "list"});
  ASSERT_EQ(list["rows"].size(), 3u);
  EXPECT_EQ(list["rows"][1]["formula"], "16*arctan(1/5) - 4*arctan(1/239)");
  EXPECT_EQ(run({"formulas", "verify", "--digits", "50"}).code, 0);
}

TEST(CliFormulas, VerifyExitCodes) {
  const Result bogus = run({"formulas", "verify", "--digits", "50", "--add", "bogus=4:1/2"});
  EXPECT_EQ(bogus.code, 4);
  EXPECT_NE(bogus.err.find("bogus"), std::string::npos);
  EXPECT_EQ(run({"formulas", "verify", "--digits", "5"}).code, 2);
  EXPECT_EQ(run({"formulas", "verify", "--add", "nonsense"}).code, 2);
  EXPECT_EQ(run({"formulas"}).code, 2);
}

TEST(CliBench, SmallRunValidatesAndIsDeterministic) {
  const auto j = run_json({"bench", "--L", "20000", "--kernel", "pairwise", "--chunk", "64", "--threads", "3"});
  EXPECT_EQ(j["deterministic"], true);
  EXPECT_EQ(j["validation_L"], 20000);
  EXPECT_LE(j["validation_ulps"].get<double>(), 1000.0);
  EXPECT_GT(j["terms_per_second"].get<double>(), 0.0);
  EXPECT_EQ(run({"bench", "--L", "100", "--kernel", "fast"}).code, 2);
  EXPECT_EQ(run({"bench", "--L", "100", "--threads", "0"}).code, 2);
}
