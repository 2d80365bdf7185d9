#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "rtnq/cli/commands.hpp"
#include "rtnq/cli/csv.hpp"
#include "rtnq/cli/manifest.hpp"
#include "rtnq/parallel.hpp"

namespace fs = std::filesystem;

namespace rtnq::cli {
namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    root_ = fs::temp_directory_path() / (std::string("rtnq_cli_") + info->name());
    fs::remove_all(root_);
    fs::create_directories(root_);
  }
  void TearDown() override { fs::remove_all(root_); }

  int invoke(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run(args, out_, err_);
  }
  std::string dir(const std::string& name) const { return (root_ / name).string(); }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }
  static std::vector<std::vector<std::string>> rows(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> out;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      out.push_back(cells);
    }
    return out;
  }

  fs::path root_;
  std::ostringstream out_, err_;
};

TEST_F(CliTest, LambdaFirstRowAndHeader) {
  ASSERT_EQ(invoke({"lambda", "--out", dir("a")}), kExitOk) << err_.str();
  const std::string text = slurp(root_ / "a" / "lambda.csv");
  EXPECT_EQ(text.substr(0, text.find('\n', text.find('\n') + 1) + 1), "tau,re_lambda,im_lambda,abs_lambda\n0,1,0,1\n");
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(rows(root_ / "a" / "lambda.csv").size(), 2001u);
}

TEST_F(CliTest, BalancedFlagMatchesUnbalancedByteForByte) {
  ASSERT_EQ(invoke({"lambda", "--gamma0", "2.5", "--gamma1", "2.5", "--out", dir("u")}), kExitOk);
  ASSERT_EQ(invoke({"lambda", "--gamma0", "2.5", "--gamma1", "2.5", "--balanced", "--out", dir("b")}), kExitOk);
  EXPECT_EQ(slurp(root_ / "u" / "lambda.csv"), slurp(root_ / "b" / "lambda.csv"));
  EXPECT_EQ(invoke({"lambda", "--gamma0", "1", "--gamma1", "2", "--balanced", "--out", dir("x")}),
            kExitInvalidConfig);
  EXPECT_NE(err_.str().find("--balanced"), std::string::npos);
}

TEST_F(CliTest, ModulusColumnBoundedAndRoundTrips) {
  ASSERT_EQ(invoke({"lambda", "--n", "4", "--gamma0", "1", "--gamma1", "5", "--out", dir("a")}), kExitOk);
  for (const auto& r : rows(root_ / "a" / "lambda.csv")) {
    ASSERT_EQ(r.size(), 4u);
    EXPECT_LE(std::stod(r[3]), 1.0);
    for (const auto& cell : r) EXPECT_EQ(format_double(std::strtod(cell.c_str(), nullptr)), cell);
  }
}

TEST_F(CliTest, ManifestReplayReproducesPayload) {
  ASSERT_EQ(invoke({"lambda", "--n", "4", "--gamma0", "0.3", "--gamma1", "7", "--horizon", "5", "--out", dir("a")}),
            kExitOk);
  const fs::path a = root_ / "a";
  const auto manifest = nlohmann::json::parse(slurp(a / "manifest.json"));
  EXPECT_EQ(manifest["command"], "lambda");
  EXPECT_EQ(manifest["rng"]["algorithm"], "splitmix64");
  for (const auto& entry : manifest["outputs"]) {
    EXPECT_EQ(entry["sha256"], sha256_file(a / entry["file"].get<std::string>()));
  }
  ASSERT_EQ(invoke({"lambda", "--config", (a / "run_config.ini").string(), "--out", dir("b")}), kExitOk);
  EXPECT_EQ(slurp(a / "lambda.csv"), slurp(root_ / "b" / "lambda.csv"));
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  const fs::path ini = root_ / "c.ini";
  std::ofstream(ini) << "[lambda]\nn = 4\nhorizon = 1\nout = " << dir("from_file") << "\n";
  ASSERT_EQ(invoke({"lambda", "--config", ini.string(), "--horizon", "2"}), kExitOk) << err_.str();
  EXPECT_EQ(rows(root_ / "from_file" / "lambda.csv").size(), 201u);
  EXPECT_NE(slurp(root_ / "from_file" / "run_config.ini").find("n=4"), std::string::npos);
}

TEST_F(CliTest, InvalidConfigurationNamesKey) {
  EXPECT_EQ(invoke({"lambda", "--gamma0", "-1", "--out", dir("a")}), kExitInvalidConfig);
  EXPECT_NE(err_.str().find("--gamma0"), std::string::npos);
  EXPECT_EQ(invoke({"lambda", "--grid-step", "0", "--out", dir("a")}), kExitInvalidConfig);
  EXPECT_NE(err_.str().find("--grid-step"), std::string::npos);
  EXPECT_EQ(invoke({"negativity", "--topology", "both", "--out", dir("a")}), kExitInvalidConfig);
  EXPECT_NE(err_.str().find("--topology"), std::string::npos);
  const fs::path ini = root_ / "bad.ini";
  std::ofstream(ini) << "[lambda]\ngamma1 = fast\n";
  EXPECT_EQ(invoke({"lambda", "--config", ini.string()}), kExitInvalidConfig);
  EXPECT_NE(err_.str().find("gamma1"), std::string::npos);
  EXPECT_EQ(invoke({"lambda", "--no-such-flag"}), kExitInvalidConfig);
  EXPECT_EQ(invoke({}), kExitInvalidConfig);
  EXPECT_FALSE(fs::exists(root_ / "a" / "manifest.json"));
  EXPECT_EQ(invoke({"lambda", "--help"}), kExitOk);
}

TEST_F(CliTest, NegativityPanels) {
  ASSERT_EQ(invoke({"negativity", "--topology", "ie", "ce", "single", "--gamma0", "0.1", "--gamma1-min", "0.1",
                    "--gamma1-max", "0.1", "--horizon", "10", "--out", dir("a")}),
            kExitOk)
      << err_.str();
  const fs::path a = root_ / "a";
  const auto ie = rows(a / "fig1_ie_g0p1.csv");
  const auto ce = rows(a / "fig1_ce_g0p1.csv");
  const auto single = rows(a / "fig1_single_g0p1.csv");
  ASSERT_EQ(ie.size(), 1001u);
  EXPECT_EQ(ie[0][2], "1");
  EXPECT_EQ(ce[0][2], "1");
  for (std::size_t k = 0; k < ie.size(); ++k) {
    EXPECT_NEAR(std::stod(ie[k][2]), std::pow(std::stod(single[k][2]), 2), 1e-12);
  }
  // Mean spacing of interior maxima.
  const auto spacing = [](const std::vector<std::vector<std::string>>& r) {
    std::vector<double> peaks;
    for (std::size_t k = 1; k + 1 < r.size(); ++k) {
      const double v = std::stod(r[k][2]);
      if (v > std::stod(r[k - 1][2]) && v >= std::stod(r[k + 1][2])) peaks.push_back(std::stod(r[k][0]));
    }
    return (peaks.back() - peaks.front()) / static_cast<double>(peaks.size() - 1);
  };
  EXPECT_NEAR(spacing(ie) / spacing(ce), 2.0, 0.2);
}

TEST_F(CliTest, DefaultNegativityFileNames) {
  ASSERT_EQ(invoke({"negativity", "--horizon", "0.02", "--gamma1-max", "0.1", "--out", dir("a")}), kExitOk);
  for (const char* name : {"fig1_ie_g0p1.csv", "fig1_ie_g1.csv", "fig1_ie_g10.csv", "fig1_ce_g0p1.csv",
                           "fig1_ce_g1.csv", "fig1_ce_g10.csv"}) {
    EXPECT_TRUE(fs::exists(root_ / "a" / name)) << name;
  }
}

TEST_F(CliTest, RevivalMapIsSymmetric) {
  ASSERT_EQ(invoke({"revivals", "--rate-min", "0.5", "--rate-max", "4.5", "--rate-step", "0.5", "--out", dir("a")}),
            kExitOk);
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> cells;
  for (const auto& r : rows(root_ / "a" / "fig2_revivals.csv")) cells[{r[0], r[1]}] = {r[2], r[3]};
  ASSERT_EQ(cells.size(), 81u);
  for (const auto& [key, flags] : cells) EXPECT_EQ(flags, cells.at({key.second, key.first}));
  using Flags = std::pair<std::string, std::string>;
  const auto diagonal = [&](const std::string& g) { return cells[Flags{g, g}]; };
  EXPECT_EQ(diagonal("1.5"), Flags("1", "1"));
  EXPECT_EQ(diagonal("2.5"), Flags("0", "1"));
  EXPECT_EQ(diagonal("4.5"), Flags("0", "0"));
}

TEST_F(CliTest, NonMarkovSurface) {
  ASSERT_EQ(invoke({"nonmarkov", "--rate-min", "0.25", "--rate-max", "3", "--rate-step", "0.25", "--out", dir("a")}),
            kExitOk);
  std::map<std::pair<double, double>, double> nm;
  for (const auto& r : rows(root_ / "a" / "fig3_nm.csv")) nm[{std::stod(r[0]), std::stod(r[1])}] = std::stod(r[2]);
  for (double g = 0.25; g <= 3.0; g += 0.25) {
    const double value = nm[std::pair{g, g}];
    EXPECT_EQ(value == 0.0, g >= 2.0) << g;
  }
  // Along gamma1 at gamma0 = 0.25, past the maximum the measure only decreases.
  std::vector<double> line;
  for (double g = 0.25; g <= 3.0; g += 0.25) line.push_back(nm[{0.25, g}]);
  const auto peak = std::max_element(line.begin(), line.end()) - line.begin();
  for (std::size_t k = static_cast<std::size_t>(peak) + 1; k < line.size(); ++k) EXPECT_LE(line[k], line[k - 1]);
}

TEST_F(CliTest, TeleportPanels) {
  ASSERT_EQ(invoke({"teleport", "--gamma0", "0.5", "30", "--gamma1-min", "0.5", "--gamma1-step", "0.5", "--grid-step",
                    "0.1", "--out", dir("a")}),
            kExitOk)
      << err_.str();
  const fs::path a = root_ / "a";
  for (const std::string tag : {"0p5", "30"}) {
    for (const auto& r : rows(a / ("fig4_fav_g" + tag + ".csv")))
      if (r[0] == "0") EXPECT_EQ(r[2], "1");
    std::size_t diagonal = 0;
    for (const auto& r : rows(a / ("fig4_adv_g" + tag + ".csv"))) {
      if (r[1] != (tag == "30" ? "30" : "0.5")) continue;
      ++diagonal;
      EXPECT_EQ(r[2], "0");
    }
    EXPECT_EQ(diagonal, 201u) << tag;
  }
  ASSERT_EQ(invoke({"teleport", "--two-sided", "--gamma0", "1", "--horizon", "1", "--out", dir("b")}), kExitOk);
  EXPECT_TRUE(fs::exists(root_ / "b" / "fig4_adv_g1.csv"));
}

TEST_F(CliTest, ValidateIsDeterministicAcrossThreadCounts) {
  const std::vector<std::string> base{"validate", "--draws", "4", "--trajectories", "20000", "--negativity-draws",
                                      "10", "--teleport-draws", "3", "--seed", "77"};
  auto one = base;
  one.insert(one.end(), {"--threads", "1", "--out", dir("one")});
  auto three = base;
  three.insert(three.end(), {"--threads", "3", "--out", dir("three")});
  ASSERT_EQ(invoke(one), kExitOk) << out_.str();
  ASSERT_EQ(invoke(three), kExitOk);
  EXPECT_EQ(slurp(root_ / "one" / "validate_report.csv"), slurp(root_ / "three" / "validate_report.csv"));
}

TEST_F(CliTest, ValidateDetectsCorruptedLambda) {
  for (const char* offset : {"0.05", "-0.05"}) {
    EXPECT_EQ(invoke({"validate", "--draws", "4", "--trajectories", "20000", "--negativity-draws", "5",
                      "--teleport-draws", "2", "--inject-lambda-offset", offset, "--out", dir("bad")}),
              kExitValidationFailure);
    const std::string report = slurp(root_ / "bad" / "validate_report.csv");
    for (const char* check : {"noise_mc", "negativity", "teleport_fidelity", "teleport_average"}) {
      const auto at = report.find(std::string("summary,") + check + ",passed=");
      ASSERT_NE(at, std::string::npos) << check;
      const std::string line = report.substr(at, report.find('\n', at) - at);
      EXPECT_EQ(line.back(), '0') << line;
    }
  }
}

TEST(Threads, EnvironmentForcesSingleThread) {
  ::setenv(kSingleThreadEnv, "1", 1);
  EXPECT_EQ(resolve_threads(8), 1u);
  ::unsetenv(kSingleThreadEnv);
  EXPECT_EQ(resolve_threads(3), 3u);
  EXPECT_GE(resolve_threads(0), 1u);
}

TEST(Threads, ParallelForPropagatesExceptions) {
  EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) {
                 if (i == 7) throw std::runtime_error("boom");
               }),
               std::runtime_error);
  std::vector<int> hits(100, 0);
  parallel_for(100, 4, [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Csv, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(format_double(0.0), "0");
}

}  // namespace
}  // namespace rtnq::cli
