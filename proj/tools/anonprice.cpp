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

// anonprice: command-line front end for scenarios and fixtures.
//
//   anonprice curve|ap|ear|closeness|verify|report <scenario.json | fixture-ref> [options]
//   anonprice fixtures [fixture-ref ...]
//
// Exit status: 0 pass, 1 verification failure, 2 input error.

#include "anonprice/scenario.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

using namespace anonprice;
namespace fs = std::filesystem;

namespace {

struct Options
{
  std::string                input;
  std::string                out;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> oracle_values;
  std::optional<std::size_t> oracle_budgets;
  std::optional<std::uint64_t> seed;
  std::size_t                trials = 200;
};

Scenario load_input(std::string const &input)
{
  if (fs::exists(input))
    return load_scenario(input);
  // Not a file: treat it as a fixture reference.
  nlohmann::json j{{"schema", kScenarioSchema},
                   {"name", input},
                   {"agents", nlohmann::json::array({input})},
                   {"analyses", nlohmann::json::array({"curves"})}};
  try
  {
    return parse_scenario(j.dump(), input);
  }
  catch (ScenarioError const &e)
  {
    throw ScenarioError(input + ": no such file; as a fixture reference: " + e.what());
  }
}

std::string safe_name(std::string s)
{
  for (char &c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.')
      c = '_';
  return s;
}

int run(std::string const &verb, Options const &o)
{
  auto s = load_input(o.input);
  if (o.grid)
    s.curve_grid = *o.grid;
  if (o.oracle_values)
    s.oracle.n_values = *o.oracle_values;
  if (o.oracle_budgets)
    s.oracle.n_budgets = *o.oracle_budgets;
  if (o.seed)
    s.seed = *o.seed;
  try
  {
    s.oracle.validate();
  }
  catch (std::invalid_argument const &e)
  {
    throw ScenarioError(e.what());
  }

  if (verb == "curve")
    s.analyses = {Analysis::curves};
  else if (verb == "ap")
    s.analyses = {Analysis::ap};
  else if (verb == "ear")
    s.analyses = {Analysis::ear};
  else if (verb == "closeness")
    s.analyses = {Analysis::closeness};
  else if (verb == "verify")
    s.analyses.insert(Analysis::verify);
  else if (verb == "report")
    s.analyses = {Analysis::curves, Analysis::ap, Analysis::ear, Analysis::closeness,
                  Analysis::verify};

  fs::path out = !o.out.empty()      ? fs::path(o.out)
                 : !s.output.empty() ? fs::path(s.output)
                                     : fs::path("out") / safe_name(s.name);
  auto res = run_scenario(s, out);

  if (verb == "report")
  {
    auto const rc = random_bound_check(s.seed, o.trials, s.oracle.price_grid);
    std::ofstream os(out / "summary.txt", std::ios::app | std::ios::binary);
    char          line[200];
    std::snprintf(line, sizeof line,
                  "%s random bound check: %zu/%zu within e, worst ratio %.12g\nresult: %s\n",
                  rc.failures == 0 ? "PASS" : "FAIL", rc.trials - rc.failures, rc.trials,
                  rc.worst_ratio, rc.failures == 0 && res.exit_code == 0 ? "pass" : "fail");
    os << line;
    res.summary += line;
    if (rc.failures)
      res.exit_code = 1;
  }
  std::cout << res.summary;
  std::cout << "wrote " << res.files.size() << " files to " << out.string() << '\n';
  return res.exit_code;
}

int check_fixtures(std::vector<std::string> const &refs)
{
  std::vector<Fixture> fs;
  if (refs.empty())
    fs = fixtures::all();
  else
    for (auto const &r : refs)
      fs.push_back(fixtures::from_reference(r));
  bool ok = true;
  for (auto const &f : fs)
  {
    for (auto const &r : f.check())
    {
      char line[256];
      std::snprintf(line, sizeof line, "%s %s %s: %.12g %s %.12g +- %.3g (%s)\n",
                    r.ok ? "PASS" : "FAIL", f.name.c_str(), r.expected.name.c_str(), r.actual,
                    to_string(r.expected.relation), r.expected.value, r.expected.tolerance,
                    r.expected.origin.c_str());
      std::cout << line;
      ok = ok && r.ok;
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Anonymous pricing versus the ex ante relaxation"};
  app.require_subcommand(1);

  Options                  o;
  std::vector<std::string> refs;

  for (auto const *verb : {"curve", "ap", "ear", "closeness", "verify", "report"})
  {
    auto *sub = app.add_subcommand(verb);
    sub->add_option("input", o.input, "scenario JSON file or fixture reference")->required();
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--grid", o.grid, "curve sample count (0 writes knots)");
    sub->add_option("--oracle-values", o.oracle_values, "value atoms per oracle type space");
    sub->add_option("--oracle-budgets", o.oracle_budgets, "budget atoms per oracle type space");
    sub->add_option("--seed", o.seed, "seed for randomized checks");
    if (std::string(verb) == "report")
      sub->add_option("--trials", o.trials, "random instances for the bound check");
  }
  auto *fx = app.add_subcommand("fixtures", "check named fixtures against their expectations");
  fx->add_option("refs", refs, "fixture references (default: all)");

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try
  {
    auto *sub = app.get_subcommands().front();
    if (sub->get_name() == "fixtures")
      return check_fixtures(refs);
    return run(sub->get_name(), o);
  }
  catch (ScenarioError const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  catch (std::invalid_argument const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
