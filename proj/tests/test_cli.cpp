// Copyright 2026 The isoising Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "isoising/cli.hpp"

using namespace isoising;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json invoke_json(const std::vector<std::string>& args) {
  auto o = invoke(args);
  EXPECT_EQ(o.code, 0) << o.err;
  return Json::parse(o.out);
}

}  // namespace

TEST(Cli, Fnv1aReferenceValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(Cli, ReportFieldOrder) {
  auto j = invoke_json({"partition", "--graph", "square", "--n", "1"});
  std::vector<std::string> keys;
  for (const auto& [k, _] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "input_hash", "parameters", "results",
                                            "residuals", "tolerances", "provenance",
                                            "wall_seconds"}));
  EXPECT_EQ(j["command"], "partition");
  EXPECT_EQ(j["input_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(j["parameters"]["n"], 1);
  EXPECT_EQ(j["parameters"]["graph"], "square");
}

TEST(Cli, PartitionMatchesOracle) {
  auto j = invoke_json({"partition", "--graph", "square", "--n", "1"});
  const auto& r = j["results"];
  EXPECT_NEAR(r["z"].get<double>(), 12 + 8 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(r["z"].get<double>(), r["oracle_z"].get<double>(), 1e-9 * r["z"].get<double>());
  EXPECT_LT(j["residuals"]["z_vs_oracle"].get<double>(), 1e-9);
  EXPECT_EQ(j["provenance"]["oracle_z"], "oracle");
  EXPECT_EQ(r["pfaffians"].size(), 4u);
  for (const char* key : {"theta", "tau", "phase", "log_abs", "coefficient"})
    EXPECT_TRUE(r["pfaffians"][0].contains(key)) << key;
}

TEST(Cli, HashDependsOnInputs) {
  auto a = invoke_json({"partition", "--n", "1"});
  auto b = invoke_json({"partition", "--n", "1"});
  auto c = invoke_json({"partition", "--n", "2"});
  EXPECT_EQ(a["input_hash"], b["input_hash"]);
  EXPECT_NE(a["input_hash"], c["input_hash"]);
}

TEST(Cli, VerifySquare) {
  auto o = invoke({"verify", "--graph", "square"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto j = Json::parse(o.out);
  ASSERT_EQ(j["residuals"].size(), 7u);
  for (const auto& [k, v] : j["residuals"].items()) EXPECT_LT(v.get<double>(), 1e-7) << k;
  EXPECT_TRUE(j["results"]["passed"].get<bool>());
}

TEST(Cli, VerifyGraphFile) {
  auto o = invoke({"verify", "--graph", ISOISING_DATA_DIR "/generic.json", "--suite", "iv,vi"});
  ASSERT_EQ(o.code, 0) << o.err;
  auto j = Json::parse(o.out);
  EXPECT_EQ(j["residuals"].size(), 2u);
  EXPECT_TRUE(j["residuals"].contains("iv"));
}

TEST(Cli, IdentityViolationExitsOne) {
  EXPECT_EQ(invoke({"verify", "--suite", "i", "--tol", "0"}).code, 1);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(invoke({"partition", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({"nonsense"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"partition", "--n", "0"}).code, 2);
  EXPECT_EQ(invoke({"prob"}).code, 2);
  EXPECT_EQ(invoke({"prob", "--edges", "1@x"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "viii"}).code, 2);
  EXPECT_EQ(invoke({"spectral", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"lattice", "--graph", "/nonexistent/graph.json"}).code, 2);
}

TEST(Cli, MalformedGraphFileExitsTwo) {
  auto path = std::filesystem::temp_directory_path() / "isoising_bad_graph.json";
  std::ofstream(path) << R"({"basis": [[1, 0], [0, 1]], "vertices": [], "edges": []})";
  EXPECT_EQ(invoke({"lattice", "--graph", path.string()}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, SpectralCsvTable) {
  auto o = invoke({"spectral", "--graph", "square", "--format", "csv"});
  ASSERT_EQ(o.code, 0) << o.err;
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,re,im");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 5);
}

TEST(Cli, CouplingClosedForm) {
  auto j = invoke_json({"coupling", "--theta", "0.7853981633974483"});
  EXPECT_NEAR(j["results"]["J"][0].get<double>(), 0.5 * std::log(1 + std::sqrt(2.0)), 1e-12);
  EXPECT_LT(j["residuals"]["closed_form"].get<double>(), 1e-12);
}

TEST(Cli, OracleContoursReproduceSpins) {
  auto a = invoke_json({"oracle", "--what", "contours", "--n", "2"});
  auto b = invoke_json({"oracle", "--what", "spins", "--n", "2"});
  double x = a["results"]["ising"], y = b["results"]["ising"];
  EXPECT_NEAR(x, y, 1e-12 * y);
  auto c = invoke_json({"oracle", "--what", "crsf", "--graph", "square"});
  EXPECT_EQ(c["results"]["forests"], 2);
}

TEST(Cli, LatticeSummary) {
  auto j = invoke_json({"lattice", "--graph", "honeycomb", "--n", "2"});
  EXPECT_EQ(j["results"]["vertices"], 2);
  EXPECT_EQ(j["results"]["faces"], 1);
  EXPECT_EQ(j["results"]["fisher_vertices"], 18);
  EXPECT_EQ(j["results"]["torus_vertices"], 8);
}
