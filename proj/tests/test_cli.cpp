//------------------------------------------------------------------------------
//
//   Copyright 2026 The anonprice Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "anonprice/scenario.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace anonprice;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

std::string const kMinimal = R"({
  "schema": 1,
  "name": "one",
  "agents": [{"id": "u", "model": "linear", "value": {"kind": "uniform", "a": 0, "b": 1}}],
  "analyses": ["ap"]
})";

std::string slurp(fs::path const &p)
{
  std::ifstream     in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(std::string const &name)
{
  auto p = fs::temp_directory_path() / ("anonprice_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string error_of(std::string const &txt)
{
  try
  {
    parse_scenario(txt);
  }
  catch (ScenarioError const &e)
  {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("load a minimal scenario", "[cli]")
{
  auto s = parse_scenario(kMinimal);
  REQUIRE(s.agents.size() == 1);
  CHECK(s.agents[0].id() == "u");
  CHECK(s.name == "one");
  CHECK(s.analyses == std::set<Analysis>{Analysis::ap});
  CHECK(s.oracle.betas == std::vector<double>{1.0, 2.0, 3.0, 4.0});

  auto f = load_scenario(fs::path(ANONPRICE_SOURCE_DIR) / "scenarios" / "two_uniform.json");
  CHECK(f.agents.size() == 2);
  CHECK(f.analyses.count(Analysis::verify));
  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), ScenarioError);
}

TEST_CASE("fixture references expand to agents", "[cli]")
{
  auto s = parse_scenario(R"({"schema": 1, "name": "m", "agents": ["mhr-fail:n=5"],
                              "analyses": ["ap"]})");
  REQUIRE(s.agents.size() == 5);
  for (std::size_t i = 0; i < 5; ++i)
    CHECK(s.agents[i].model_name() == "private-budget");
  CHECK(s.fixtures == std::vector<std::string>{"mhr-fail:n=5"});

  auto t = parse_scenario(R"({"schema": 1, "name": "t", "agents": [{"fixture": "tightness"}],
                              "analyses": ["ap"]})");
  CHECK(t.agents.size() == 2);
  CHECK(t.agents[0].is_synthetic());

  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": ["nope"], "analyses": ["ap"]})")
            .find("$.agents[0]") == 0);
}

TEST_CASE("scenario validation", "[cli]")
{
  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": ["uniform-linear"],
                    "closeness": {"betas": [0.5]}, "analyses": ["closeness"]})")
            .find("$.closeness.betas[0]") == 0);
  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": ["uniform-linear"], "colour": 1,
                    "analyses": ["ap"]})")
            .find("$.colour: unknown key") == 0);
  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": [{"id": "a", "model": "linear",
                    "value": {"kind": "uniform", "a": 0, "b": 1, "c": 2}}], "analyses": ["ap"]})")
            .find("$.agents[0].value.c") == 0);
  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": [{"id": "c", "model": "capacitated",
                    "value": {"kind": "uniform", "a": 1, "b": 2}, "capacity": 3}],
                    "analyses": ["ap"]})")
            .find("capacity must not exceed hbar") != std::string::npos);
  CHECK(error_of(R"({"schema": 2, "name": "x", "agents": ["uniform-linear"], "analyses": ["ap"]})")
            .find("$.schema") == 0);
  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": [], "analyses": ["ap"]})")
            .find("$.agents") == 0);
  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": ["uniform-linear"], "analyses": ["plot"]})")
            .find("$.analyses[0]") == 0);
  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": ["uniform-linear"],
                    "oracle": {"values": 1}, "analyses": ["ap"]})")
            .find("$.oracle.values") == 0);
  CHECK(error_of(R"({"schema": 1, "name": "x", "agents": ["tightness", "tightness"],
                    "analyses": ["ap"]})")
            .find("duplicate agent id") != std::string::npos);
  CHECK(error_of("{\"schema\": 1,\n\"name\": \n}").find("line 3") != std::string::npos);
}

TEST_CASE("emit curve", "[cli]")
{
  auto dir = scratch("emit");
  fs::create_directories(dir);

  emit_curve(Agent::linear("u", Distribution::uniform(0, 1)), 5, dir / "u.csv");
  CHECK(slurp(dir / "u.csv") == "q,P\n0,0\n0.25,0.1875\n0.5,0.25\n0.75,0.1875\n1,0\n");

  // Two segments: 10 q up to q = 0.1, then flat at 1.
  emit_curve(Agent::linear("e", Distribution::equal_revenue(10)), 21, dir / "e.csv");
  std::istringstream rows(slurp(dir / "e.csv"));
  std::string        line;
  std::getline(rows, line);
  CHECK(line == "q,P");
  std::size_t n = 0;
  while (std::getline(rows, line))
  {
    auto const   comma = line.find(',');
    double const q     = std::stod(line.substr(0, comma));
    double const v     = std::stod(line.substr(comma + 1));
    CHECK(v == Approx(std::min(10.0 * q, 1.0)).margin(1e-9));
    ++n;
  }
  CHECK(n == 21);

  auto tf = fixtures::tightness(2.0, 4.0);
  emit_curve(tf.agents[0], 33, dir / "t.csv");
  CHECK(slurp(dir / "t.csv") == "q,P\n0,0\n0.25,1\n1,2\n");
  fs::remove_all(dir);
}

TEST_CASE("scenario runs are byte-reproducible", "[cli]")
{
  auto s = load_scenario(fs::path(ANONPRICE_SOURCE_DIR) / "scenarios" / "two_uniform.json");
  auto a = scratch("run_a");
  auto b = scratch("run_b");
  auto ra = run_scenario(s, a);
  auto rb = run_scenario(s, b);
  CHECK(ra.exit_code == 0);
  REQUIRE(ra.files == rb.files);
  CHECK(ra.files.size() == 10);
  for (auto const &f : ra.files)
    CHECK(slurp(a / f) == slurp(b / f));

  auto const summary = slurp(a / "summary.txt");
  CHECK(summary.find("# seed: 20261017") != std::string::npos);
  CHECK(summary.find("ratio: 1.29903810568") != std::string::npos);
  CHECK(summary.find("bound: 2.71828182846") != std::string::npos);
  CHECK(summary.find("result: pass") != std::string::npos);
  CHECK(slurp(a / "ap.csv").rfind("scenario,mechanism,agent,price,quantile,revenue\n", 0) == 0);
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("fixture scenarios report their expectations", "[cli]")
{
  auto s = parse_scenario(R"({"schema": 1, "name": "r",
                              "agents": ["risk-equal-revenue:h=100,C=5"], "analyses": ["ap"]})");
  auto dir = scratch("risk");
  auto r   = run_scenario(s, dir);
  CHECK(r.exit_code == 0);
  CHECK(r.summary.find("PASS risk-equal-revenue:h=100,C=5 giveaway_revenue") != std::string::npos);
  fs::remove_all(dir);

  auto o = parse_scenario(R"({"schema": 1, "name": "o", "agents": ["overpay:h=100"],
                              "analyses": ["ap"]})");
  auto od = scratch("overpay");
  auto orr = run_scenario(o, od);
  CHECK(orr.exit_code == 0);
  CHECK(orr.summary.find("FAIL") == std::string::npos);
  fs::remove_all(od);
}

TEST_CASE("a violated bound makes the run fail", "[cli]")
{
  // The ladder's P is not concave, so the zeta-based bound is the only one
  // and EAR(R)/AP(P) exceeds e once enough agents are present.
  auto s = parse_scenario(R"({"schema": 1, "name": "l", "agents": ["mhr-fail:n=30"],
                              "analyses": ["verify"]})");
  auto dir = scratch("ladder");
  auto r   = run_scenario(s, dir);
  CHECK(r.exit_code == 1);
  CHECK(r.summary.find("FAIL ratio <= bound") != std::string::npos);
  CHECK(r.summary.find("result: fail") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("built-in fixtures check", "[cli][fixtures]")
{
  auto all = fixtures::all();
  CHECK(all.size() == 9);
  for (auto const &f : all)
    for (auto const &r : f.check())
    {
      INFO(f.name << " " << r.expected.name << " actual " << r.actual);
      CHECK(r.ok);
    }
}

TEST_CASE("random bound check is seeded", "[cli]")
{
  auto a = random_bound_check(5, 10, 1024);
  auto b = random_bound_check(5, 10, 1024);
  CHECK(a.trials == 10);
  CHECK(a.failures == 0);
  CHECK(a.worst_ratio == b.worst_ratio);
  CHECK(a.worst_ratio <= std::numbers::e + 1e-6);
}
