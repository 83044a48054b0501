// Copyright 2026 The xyecho Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "xyecho/cli/config.hpp"
#include "xyecho/cli/run.hpp"

namespace xyecho::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(ParseConfig, MissingCommandIsUsageError) {
  const auto r = parse_config({"--n", "10"});
  EXPECT_FALSE(r.config.has_value());
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.message.find("Usage"), std::string::npos);
}

TEST(ParseConfig, Defaults) {
  const auto r = parse_config({"echo"});
  ASSERT_TRUE(r.config.has_value());
  const auto& c = *r.config;
  EXPECT_EQ(c.command, Command::echo);
  EXPECT_EQ(c.spec.n_sites, 100);
  EXPECT_EQ(c.spec.gamma, 1.0);
  EXPECT_EQ(c.spec.lambda, 1.0);
  EXPECT_EQ(c.spec.coupling, 0.1);
  EXPECT_EQ(c.spec.site_a, 1);
  EXPECT_EQ(c.spec.site_b, 1);
  EXPECT_EQ(c.grid.t_end, 20.0);
  EXPECT_GT(c.grid.n_points, 2);
  EXPECT_TRUE(c.formats.csv);
}

TEST(ParseConfig, StrongCouplingScenario) {
  const auto r = parse_config(
      {"echo", "--n", "100", "--gamma", "1", "--lambda", "0.99", "--g", "50", "--d", "2"});
  ASSERT_TRUE(r.config.has_value()) << r.message;
  EXPECT_EQ(r.config->spec.site_b, 3);
  EXPECT_EQ(r.config->spec.distance(), 2);
  EXPECT_EQ(r.config->spec.coupling, 50.0);
  const auto named = parse_config({"--command", "echo", "--d", "2"});
  ASSERT_TRUE(named.config.has_value());
}

TEST(ParseConfig, RejectsInvalidValuesByField) {
  auto expect_usage = [](std::vector<std::string> args, const std::string& field) {
    const auto r = parse_config(args);
    EXPECT_FALSE(r.config.has_value());
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_NE(r.message.find(field), std::string::npos) << r.message;
  };
  expect_usage({"entanglement", "--alpha", "2"}, "alpha");
  expect_usage({"entanglement", "--alpha", "0.6", "--beta", "0.6"}, "alpha");
  expect_usage({"echo", "--p", "1.5"}, "p");
  expect_usage({"echo", "--n", "1"}, "n_sites");
  expect_usage({"echo", "--g", "-1"}, "coupling");
  expect_usage({"echo", "--boundary", "twisted"}, "boundary");
  expect_usage({"echo", "--a", "3"}, "a");
  expect_usage({"echo", "--format", "png"}, "format");
  expect_usage({"echo", "--format", "json"}, "out");
  expect_usage({"frobnicate"}, "command");
  expect_usage({"sweep-d", "--distances", "2..80"}, "distances");
  expect_usage({"oracle-check", "--n", "16"}, "n");
  expect_usage({"echo", "--d", "2", "--site-b", "4"}, "d");
  expect_usage({"echo", "--t-end", "-1"}, "t_end");
}

TEST(ParseConfig, StateNormalization) {
  const auto r = parse_config({"entanglement", "--alpha", "0.6", "--p", "0.1"});
  ASSERT_TRUE(r.config.has_value()) << r.message;
  EXPECT_DOUBLE_EQ(r.config->alpha_abs, 0.6);
  EXPECT_NEAR(r.config->beta_abs, 0.8, 1e-15);
  EXPECT_NO_THROW(r.config->state().validate());
}

TEST(ParseConfig, ListsAndRanges) {
  const auto r = parse_config({"sweep-d", "--distances", "2..4,7"});
  ASSERT_TRUE(r.config.has_value()) << r.message;
  EXPECT_EQ(r.config->distances, (std::vector<int>{2, 3, 4, 7}));
  EXPECT_EQ(r.config->grid.t_end, 2.5 * 7 + 5.0);
  const auto l = parse_config({"sweep-lambda", "--lambdas", "0.5, 0.99,1.5"});
  ASSERT_TRUE(l.config.has_value()) << l.message;
  EXPECT_EQ(l.config->lambdas, (std::vector<double>{0.5, 0.99, 1.5}));
}

TEST(ParseConfig, ConfigFileWithOverrides) {
  const auto path = fs::temp_directory_path() / "xyecho_cli_test.toml";
  std::ofstream(path) << "lambda = 0.99\ng = 50\nn = 40\n";
  const auto r = parse_config({"echo", "--config", path.string(), "--n", "30"});
  ASSERT_TRUE(r.config.has_value()) << r.message;
  EXPECT_EQ(r.config->spec.lambda, 0.99);
  EXPECT_EQ(r.config->spec.coupling, 50.0);
  EXPECT_EQ(r.config->spec.n_sites, 30);
  std::ofstream(path) << "lambda = 0.99\nunknown_key = 3\n";
  const auto bad = parse_config({"echo", "--config", path.string()});
  EXPECT_FALSE(bad.config.has_value());
  EXPECT_EQ(bad.exit_code, 2);
  fs::remove(path);
}

TEST(ParseConfig, HelpExitsZero) {
  const auto r = parse_config({"--help"});
  EXPECT_FALSE(r.config.has_value());
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_NE(r.message.find("--lambda"), std::string::npos);
}

TEST(ParseConfig, FingerprintIgnoresThreadsAndOutput) {
  const auto a = parse_config({"echo", "--threads", "1", "--out", "/tmp/a"});
  const auto b = parse_config({"echo", "--threads", "3"});
  const auto c = parse_config({"echo", "--lambda", "0.9"});
  ASSERT_TRUE(a.config && b.config && c.config);
  EXPECT_EQ(a.config->fingerprint(), b.config->fingerprint());
  EXPECT_NE(a.config->fingerprint(), c.config->fingerprint());
}

TEST(Run, ZeroCouplingEmitsConstantOne) {
  const auto r = parse_config({"echo", "--n", "12", "--g", "0", "--t-end", "3", "--n-points", "7"});
  ASSERT_TRUE(r.config.has_value());
  std::ostringstream data, log;
  EXPECT_EQ(run(*r.config, data, log), 0);
  std::istringstream in(data.str());
  std::string line;
  int rows = 0;
  bool header = false;
  bool fingerprint = false;
  while (std::getline(in, line)) {
    if (line.rfind("# fingerprint: " + r.config->fingerprint(), 0) == 0) fingerprint = true;
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      EXPECT_EQ(line, "t,L");
      header = true;
      continue;
    }
    EXPECT_EQ(line.substr(line.find(',')), ",1");
    ++rows;
  }
  EXPECT_TRUE(fingerprint);
  EXPECT_EQ(rows, 7);
}

TEST(Run, OutputsAreDeterministic) {
  const auto dir = fs::temp_directory_path() / "xyecho_cli_det";
  fs::create_directories(dir);
  const std::string out1 = (dir / "one").string(), out2 = (dir / "two").string();
  for (const auto& out : {out1, out2}) {
    const auto r = parse_config({"entanglement", "--n", "30", "--lambda", "0.99", "--g", "50",
                                 "--d", "2", "--p", "0.5", "--t-end", "6", "--out", out,
                                 "--format", "csv,json,svg", "--threads", out == out1 ? "1" : "2"});
    ASSERT_TRUE(r.config.has_value()) << r.message;
    std::ostringstream data, log;
    ASSERT_EQ(run(*r.config, data, log), 0) << log.str();
  }
  for (const char* ext : {".csv", ".json", ".svg"}) {
    const auto a = slurp(out1 + ext);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(out2 + ext)) << ext;
  }
  const auto j = nlohmann::json::parse(slurp(out1 + ".json"));
  for (const char* key : {"config", "results", "fits", "events", "version", "fingerprint"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_GT(j["events"].size(), 0u);
  EXPECT_NE(slurp(out1 + ".csv").find("t,L,purity,negativity"), std::string::npos);
  EXPECT_NE(slurp(out1 + ".svg").find(j["fingerprint"].get<std::string>()), std::string::npos);
  fs::remove_all(dir);
}

TEST(Run, SweepEmitsSlope) {
  const auto dir = fs::temp_directory_path() / "xyecho_cli_sweep";
  fs::create_directories(dir);
  const std::string out = (dir / "sweep").string();
  const auto r = parse_config({"sweep-d", "--n", "60", "--lambda", "0.99", "--g", "50",
                               "--distances", "2..6", "--t-end", "18", "--out", out,
                               "--format", "json"});
  ASSERT_TRUE(r.config.has_value()) << r.message;
  std::ostringstream data, log;
  ASSERT_EQ(run(*r.config, data, log), 0) << log.str();
  const auto j = nlohmann::json::parse(slurp(out + ".json"));
  const double slope = j["fits"]["t_r_linear"]["slope"].get<double>();
  EXPECT_GT(slope, 1.5);
  EXPECT_LT(slope, 2.5);
  fs::remove_all(dir);
}

TEST(Run, OracleCheckPasses) {
  const auto r = parse_config({"oracle-check", "--lambda", "0.5", "--g", "0.1", "--d", "2",
                               "--t-end", "10", "--n-points", "200", "--format", "csv"});
  ASSERT_TRUE(r.config.has_value()) << r.message;
  EXPECT_EQ(r.config->spec.n_sites, 8);
  std::ostringstream data, log;
  EXPECT_EQ(run(*r.config, data, log), 0) << log.str();
  EXPECT_NE(log.str().find("max deviation"), std::string::npos);
}

TEST(Run, UnwritablePathIsIoError) {
  const auto r = parse_config({"echo", "--n", "8", "--t-end", "1", "--n-points", "3", "--out",
                               "/nonexistent/dir/x"});
  ASSERT_TRUE(r.config.has_value());
  std::ostringstream data, log;
  EXPECT_EQ(run(*r.config, data, log), 1);
  EXPECT_NE(log.str().find("/nonexistent/dir/x.csv"), std::string::npos);
}

TEST(Svg, RendersPolylines) {
  const auto svg = render_svg("title", "t", {0, 1, 2}, {{"L", {1.0, 0.5, 0.7}}, {"x", {0.1, NAN, 0.3}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

}  // namespace
}  // namespace xyecho::cli
