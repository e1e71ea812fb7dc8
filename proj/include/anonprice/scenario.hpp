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

// Scenario files, runs and report emission. Needs nlohmann/json (vendor/json.hpp).

#pragma once

#include "anonprice/closeness.hpp"
#include "anonprice/fixtures.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonprice {

inline constexpr int kScenarioSchema = 1;

/// Malformed or invalid scenario input (exit status 2).
class ScenarioError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Analysis
{
  curves,
  ap,
  ear,
  closeness,
  verify
};

inline char const *to_string(Analysis a)
{
  switch (a)
  {
  case Analysis::curves:
    return "curves";
  case Analysis::ap:
    return "ap";
  case Analysis::ear:
    return "ear";
  case Analysis::closeness:
    return "closeness";
  case Analysis::verify:
    return "verify";
  }
  return "?";
}

struct Scenario
{
  int                      schema = kScenarioSchema;
  std::string              name;
  std::uint64_t            seed = 20261017;
  std::vector<Agent>       agents;
  std::vector<std::string> fixtures;  // references expanded into `agents`
  OracleConfig             oracle;
  std::set<Analysis>       analyses;
  std::size_t              curve_grid = 33;
  std::string              output;
};

namespace scenario_detail {

using json = nlohmann::json;

[[noreturn]] inline void fail(std::string const &path, std::string const &msg)
{
  throw ScenarioError(path + ": " + msg);
}

inline void check_keys(json const &j, std::string const &path, std::set<std::string> const &allowed)
{
  if (!j.is_object())
    fail(path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail(path + "." + it.key(), "unknown key");
}

inline json const &require(json const &j, std::string const &path, char const *key)
{
  if (!j.contains(key))
    fail(path + "." + key, "missing");
  return j.at(key);
}

inline double number(json const &j, std::string const &path)
{
  if (!j.is_number())
    fail(path, "expected a number");
  return j.get<double>();
}

inline std::size_t count(json const &j, std::string const &path, std::size_t lo, std::size_t hi)
{
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    fail(path, "expected a nonnegative integer");
  auto const v = j.get<std::uint64_t>();
  if (v < lo || v > hi)
    fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<std::size_t>(v);
}

inline std::string text(json const &j, std::string const &path)
{
  if (!j.is_string())
    fail(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<double> numbers(json const &j, std::string const &path)
{
  if (!j.is_array())
    fail(path, "expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::pair<double, double>> pairs(json const &j, std::string const &path)
{
  if (!j.is_array())
    fail(path, "expected an array of [x, y] pairs");
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < j.size(); ++i)
  {
    auto const p = path + "[" + std::to_string(i) + "]";
    auto const v = numbers(j[i], p);
    if (v.size() != 2)
      fail(p, "expected [x, y]");
    out.emplace_back(v[0], v[1]);
  }
  return out;
}

inline Distribution distribution(json const &j, std::string const &path)
{
  if (!j.is_object())
    fail(path, "expected a distribution object");
  auto const kind = text(require(j, path, "kind"), path + ".kind");
  try
  {
    if (kind == "uniform")
    {
      check_keys(j, path, {"kind", "a", "b"});
      return Distribution::uniform(number(require(j, path, "a"), path + ".a"),
                                   number(require(j, path, "b"), path + ".b"));
    }
    if (kind == "equal-revenue")
    {
      check_keys(j, path, {"kind", "h"});
      return Distribution::equal_revenue(number(require(j, path, "h"), path + ".h"));
    }
    if (kind == "exponential")
    {
      check_keys(j, path, {"kind", "rate", "hi"});
      double const hi = j.contains("hi") ? number(j.at("hi"), path + ".hi") : 0.0;
      return Distribution::exponential(number(require(j, path, "rate"), path + ".rate"), hi);
    }
    if (kind == "point-mass")
    {
      check_keys(j, path, {"kind", "v"});
      return Distribution::point_mass(number(require(j, path, "v"), path + ".v"));
    }
    if (kind == "discrete")
    {
      check_keys(j, path, {"kind", "values", "probs"});
      return Distribution::discrete(numbers(require(j, path, "values"), path + ".values"),
                                    numbers(require(j, path, "probs"), path + ".probs"));
    }
    if (kind == "piecewise-linear-cdf")
    {
      check_keys(j, path, {"kind", "knots"});
      std::vector<CdfKnot> kn;
      for (auto const &[x, c] : pairs(require(j, path, "knots"), path + ".knots"))
        kn.push_back({x, c});
      return Distribution::piecewise_linear_cdf(std::move(kn));
    }
  }
  catch (std::invalid_argument const &e)
  {
    fail(path, e.what());
  }
  fail(path + ".kind", "unknown distribution kind '" + kind + "'");
}

inline RevenueCurve curve(json const &j, std::string const &path, std::string name)
{
  std::vector<CurvePoint> kn;
  for (auto const &[q, v] : pairs(j, path))
    kn.push_back({q, v});
  try
  {
    return RevenueCurve::synthetic(std::move(kn), std::move(name));
  }
  catch (std::invalid_argument const &e)
  {
    fail(path, e.what());
  }
}

inline void add_agents(json const &j, std::string const &path, Scenario &s)
{
  if (j.is_string())
  {
    auto const ref = j.get<std::string>();
    try
    {
      auto f = fixtures::from_reference(ref);
      s.fixtures.push_back(ref);
      for (auto &a : f.agents)
        s.agents.push_back(std::move(a));
    }
    catch (std::invalid_argument const &e)
    {
      fail(path, e.what());
    }
    return;
  }
  if (!j.is_object())
    fail(path, "expected an agent object or a fixture reference");
  if (j.contains("fixture"))
  {
    check_keys(j, path, {"fixture"});
    add_agents(j.at("fixture"), path + ".fixture", s);
    return;
  }
  auto const id    = text(require(j, path, "id"), path + ".id");
  auto const model = text(require(j, path, "model"), path + ".model");
  try
  {
    if (model == "linear")
    {
      check_keys(j, path, {"id", "model", "value"});
      s.agents.push_back(Agent::linear(id, distribution(require(j, path, "value"), path + ".value")));
    }
    else if (model == "public-budget")
    {
      check_keys(j, path, {"id", "model", "value", "budget"});
      s.agents.push_back(Agent::public_budget(
          id, distribution(require(j, path, "value"), path + ".value"),
          number(require(j, path, "budget"), path + ".budget")));
    }
    else if (model == "private-budget")
    {
      check_keys(j, path, {"id", "model", "value", "budget"});
      s.agents.push_back(Agent::private_budget(
          id, distribution(require(j, path, "value"), path + ".value"),
          distribution(require(j, path, "budget"), path + ".budget")));
    }
    else if (model == "capacitated")
    {
      check_keys(j, path, {"id", "model", "value", "capacity", "hbar"});
      auto const F = distribution(require(j, path, "value"), path + ".value");
      double const C = number(require(j, path, "capacity"), path + ".capacity");
      double const h = j.contains("hbar") ? number(j.at("hbar"), path + ".hbar") : F.hi();
      if (C > h)
        fail(path + ".capacity", "capacity must not exceed hbar");
      s.agents.push_back(Agent::capacitated(id, F, C, h));
    }
    else if (model == "synthetic")
    {
      check_keys(j, path, {"id", "model", "P", "R"});
      s.agents.push_back(Agent::synthetic(id, curve(require(j, path, "P"), path + ".P", "P"),
                                          curve(require(j, path, "R"), path + ".R", "R")));
    }
    else
    {
      fail(path + ".model", "unknown model '" + model + "'");
    }
  }
  catch (std::invalid_argument const &e)
  {
    fail(path, e.what());
  }
}

inline void oracle(json const &j, std::string const &path, OracleConfig &cfg)
{
  check_keys(j, path,
             {"values", "budgets", "quantile_grid", "price_grid", "compare_grid", "two_priced_grid",
              "lp_slack", "closed_slack", "max_kappa"});
  if (j.contains("values"))
    cfg.n_values = count(j.at("values"), path + ".values", 2, 400);
  if (j.contains("budgets"))
    cfg.n_budgets = count(j.at("budgets"), path + ".budgets", 2, 200);
  if (j.contains("quantile_grid"))
    cfg.quantile_grid = count(j.at("quantile_grid"), path + ".quantile_grid", 8, 1025);
  if (j.contains("price_grid"))
    cfg.price_grid = count(j.at("price_grid"), path + ".price_grid", 64, 1 << 16);
  if (j.contains("compare_grid"))
    cfg.compare_grid = count(j.at("compare_grid"), path + ".compare_grid", 16, 1 << 16);
  if (j.contains("two_priced_grid"))
    cfg.two_priced_grid = count(j.at("two_priced_grid"), path + ".two_priced_grid", 8, 1 << 14);
  auto slack = [&](char const *key, double &dst) {
    if (!j.contains(key))
      return;
    double const v = number(j.at(key), path + "." + key);
    if (!(v >= 0.0 && v <= 1.0))
      fail(path + "." + key, "must lie in [0, 1]");
    dst = v;
  };
  slack("lp_slack", cfg.lp_slack);
  slack("closed_slack", cfg.closed_slack);
  if (j.contains("max_kappa"))
  {
    double const v = number(j.at("max_kappa"), path + ".max_kappa");
    if (!(v >= 1.0))
      fail(path + ".max_kappa", "must be >= 1");
    cfg.max_kappa = v;
  }
}

inline std::size_t line_of(std::string const &txt, std::size_t byte)
{
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, txt.size()); ++i)
    if (txt[i] == '\n')
      ++line;
  return line;
}

}  // namespace scenario_detail

/// Parses and validates a scenario document. `origin` prefixes diagnostics.
inline Scenario parse_scenario(std::string const &txt, std::string const &origin = "scenario")
{
  using namespace scenario_detail;
  json j;
  try
  {
    j = json::parse(txt);
  }
  catch (json::parse_error const &e)
  {
    throw ScenarioError(origin + ": line " + std::to_string(line_of(txt, e.byte)) + ": " +
                        e.what());
  }
  std::string const root = "$";
  check_keys(j, root,
             {"schema", "name", "seed", "agents", "oracle", "analyses", "closeness", "curve_grid",
              "output"});
  Scenario s;
  auto const schema = count(require(j, root, "schema"), "$.schema", 0, 1000);
  if (schema != static_cast<std::size_t>(kScenarioSchema))
    fail("$.schema", "unsupported schema version " + std::to_string(schema));
  s.schema = kScenarioSchema;
  s.name   = text(require(j, root, "name"), "$.name");
  if (j.contains("seed"))
  {
    auto const &sd = j.at("seed");
    if (!sd.is_number_unsigned())
      fail("$.seed", "expected a nonnegative integer");
    s.seed = sd.get<std::uint64_t>();
  }

  auto const &agents = require(j, root, "agents");
  if (!agents.is_array() || agents.empty())
    fail("$.agents", "expected a nonempty array");
  for (std::size_t i = 0; i < agents.size(); ++i)
    add_agents(agents[i], "$.agents[" + std::to_string(i) + "]", s);
  std::set<std::string> ids;
  for (auto const &a : s.agents)
    if (!ids.insert(a.id()).second)
      fail("$.agents", "duplicate agent id '" + a.id() + "'");

  if (j.contains("oracle"))
    oracle(j.at("oracle"), "$.oracle", s.oracle);
  if (j.contains("closeness"))
  {
    auto const &c = j.at("closeness");
    check_keys(c, "$.closeness", {"betas"});
    if (c.contains("betas"))
    {
      auto const betas = numbers(c.at("betas"), "$.closeness.betas");
      if (betas.empty())
        fail("$.closeness.betas", "need at least one beta");
      for (std::size_t i = 0; i < betas.size(); ++i)
        if (!(betas[i] >= 1.0))
          fail("$.closeness.betas[" + std::to_string(i) + "]", "beta must be >= 1");
      s.oracle.betas = betas;
    }
  }
  if (j.contains("curve_grid"))
    s.curve_grid = count(j.at("curve_grid"), "$.curve_grid", 0, 1 << 16);
  if (j.contains("output"))
    s.output = text(j.at("output"), "$.output");

  auto const &an = require(j, root, "analyses");
  if (!an.is_array() || an.empty())
    fail("$.analyses", "expected a nonempty array");
  for (std::size_t i = 0; i < an.size(); ++i)
  {
    auto const  path = "$.analyses[" + std::to_string(i) + "]";
    auto const  v    = text(an[i], path);
    bool        hit  = false;
    for (auto a : {Analysis::curves, Analysis::ap, Analysis::ear, Analysis::closeness, Analysis::verify})
      if (v == to_string(a))
      {
        s.analyses.insert(a);
        hit = true;
      }
    if (!hit)
      fail(path, "unknown analysis '" + v + "'");
  }
  return s;
}

inline Scenario load_scenario(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
    throw ScenarioError(path.string() + ": cannot read");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path.string());
}

// ---------------------------------------------------------------------------
// Emission

namespace scenario_detail {

inline std::string fmt(double v)
{
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::ofstream open_out(std::filesystem::path const &p)
{
  std::ofstream os(p, std::ios::binary);
  if (!os)
    throw std::runtime_error(p.string() + ": cannot write");
  return os;
}

}  // namespace scenario_detail

/// q,<name> rows: the knots when grid == 0, else `grid` evenly spaced samples.
inline void write_curve_csv(std::ostream &os, RevenueCurve const &c, std::size_t grid)
{
  using scenario_detail::fmt;
  os << "q," << c.name() << '\n';
  if (grid == 0)
  {
    for (auto const &k : c.knots())
      os << fmt(k.q) << ',' << fmt(k.value) << '\n';
    return;
  }
  for (auto const &k : sample(c, grid))
    os << fmt(k.q) << ',' << fmt(k.value) << '\n';
}

/// Writes the agent's price-posting curve; synthetic curves keep their knots.
inline void emit_curve(Agent const &agent, std::size_t grid, std::filesystem::path const &path,
                       std::size_t price_grid = kDefaultPriceGrid)
{
  auto os = scenario_detail::open_out(path);
  write_curve_csv(os, price_posting_curve(agent, price_grid), agent.is_synthetic() ? 0 : grid);
}

struct RunResult
{
  int                      exit_code = 0;  // 0 pass, 1 verification failure
  std::vector<std::string> files;
  std::string              summary;
};

/**
 * Runs the requested analyses and writes CSVs plus summary.txt into `out`.
 * Output is deterministic for a given scenario.
 */
inline RunResult run_scenario(Scenario const &s, std::filesystem::path const &out)
{
  using scenario_detail::fmt;
  namespace fs = std::filesystem;
  fs::create_directories(out);
  RunResult          res;
  std::ostringstream sum;
  bool               ok = true;
  auto add_file = [&](fs::path const &p) { res.files.push_back(p.filename().string()); };

  sum << "# anonprice report\n";
  sum << "# scenario: " << s.name << '\n';
  sum << "# seed: " << s.seed << '\n';
  sum << "# schema: " << s.schema << '\n';
  sum << "agents: " << s.agents.size() << '\n';
  for (auto const &a : s.agents)
    sum << "agent " << a.id() << ": " << a.model_name() << '\n';

  try
  {
    std::vector<RevenueCurve> Ps, Hs;
    for (auto const &a : s.agents)
    {
      Ps.push_back(price_posting_curve(a, s.oracle.price_grid));
      Hs.push_back(concave_hull(Ps.back()));
    }
    bool const need_report =
        s.analyses.count(Analysis::closeness) || s.analyses.count(Analysis::verify);
    std::optional<ClosenessReport> rep;
    if (need_report)
      rep = verify_instance(s.agents, s.oracle);

    if (s.analyses.count(Analysis::curves))
    {
      for (std::size_t i = 0; i < s.agents.size(); ++i)
      {
        auto const  &a    = s.agents[i];
        std::size_t  grid = a.is_synthetic() ? 0 : s.curve_grid;
        auto write = [&](RevenueCurve const &c, char const *tag, std::size_t g) {
          fs::path p = out / ("curve_" + a.id() + "_" + tag + ".csv");
          auto     os = scenario_detail::open_out(p);
          write_curve_csv(os, c.renamed(tag), g);
          add_file(p);
        };
        write(Ps[i], "P", grid);
        write(Hs[i], "H", grid);
        if (rep)
          write(rep->agents[i].Rbar, "R", a.is_synthetic() ? 0 : grid);
      }
    }

    auto mech_header = "scenario,mechanism,agent,price,quantile,revenue\n";
    if (s.analyses.count(Analysis::ap))
    {
      auto const ap = ap_optimize(Ps);
      fs::path   p  = out / "ap.csv";
      auto       os = scenario_detail::open_out(p);
      os << mech_header;
      for (std::size_t i = 0; i < s.agents.size(); ++i)
        os << s.name << ",ap," << s.agents[i].id() << ',' << fmt(ap.price) << ',' << fmt(ap.Q[i])
           << ',' << fmt(ap.price * ap.Q[i]) << '\n';
      os << s.name << ",ap,*," << fmt(ap.price) << ",," << fmt(ap.revenue) << '\n';
      add_file(p);
      sum << "ap.price: " << fmt(ap.price) << '\n';
      sum << "ap.revenue: " << fmt(ap.revenue) << '\n';
      if (ap.at_price_cap)
        sum << "ap.note: optimum at the largest candidate price\n";
    }

    if (s.analyses.count(Analysis::ear))
    {
      fs::path p  = out / "ear.csv";
      auto     os = scenario_detail::open_out(p);
      os << mech_header;
      auto emit = [&](char const *mech, std::vector<RevenueCurve> const &cs) {
        auto const e = ear_optimize(cs);
        for (std::size_t i = 0; i < cs.size(); ++i)
          os << s.name << ',' << mech << ',' << s.agents[i].id() << ",," << fmt(e.q[i]) << ','
             << fmt(cs[i](e.q[i])) << '\n';
        os << s.name << ',' << mech << ",*,,," << fmt(e.revenue) << '\n';
        return e;
      };
      auto const eh = emit("ear-hull-P", Hs);
      sum << "ear.hull_P: " << fmt(eh.revenue) << '\n';
      if (rep)
      {
        std::vector<RevenueCurve> Rs;
        for (auto const &a : rep->agents)
          Rs.push_back(a.Rbar);
        auto const er = emit("ear-R", Rs);
        sum << "ear.R: " << fmt(er.revenue) << '\n';
      }
      add_file(p);
    }

    if (rep)
    {
      fs::path p  = out / "closeness.csv";
      auto     os = scenario_detail::open_out(p);
      os << "agent,model,rbar_source,beta,alpha,alpha_exact,zeta,eta,kappa,table_model,table_param\n";
      for (auto const &a : rep->agents)
        for (std::size_t b = 0; b < rep->betas.size(); ++b)
          os << a.id << ',' << a.model << ',' << a.rbar_source << ',' << fmt(rep->betas[b]) << ','
             << fmt(a.alpha[b]) << ',' << fmt(a.alpha_exact[b]) << ',' << fmt(a.zeta) << ','
             << fmt(a.eta) << ',' << (a.kappa ? fmt(*a.kappa) : "") << ','
             << (a.table_model ? to_string(*a.table_model) : "") << ',' << fmt(a.table_param)
             << '\n';
      for (std::size_t b = 0; b < rep->betas.size(); ++b)
        os << "*,,," << fmt(rep->betas[b]) << ',' << fmt(rep->alpha[b]) << ','
           << fmt(rep->alpha_exact[b]) << ',' << fmt(rep->zeta) << ',' << fmt(rep->eta) << ",,,\n";
      add_file(p);

      for (std::size_t b = 0; b < rep->betas.size(); ++b)
        sum << "alpha(" << fmt(rep->betas[b]) << "): " << fmt(rep->alpha[b]) << '\n';
      sum << "zeta: " << fmt(rep->zeta) << '\n';
      sum << "eta: " << fmt(rep->eta) << '\n';
      sum << "rho: " << fmt(rep->rho) << '\n';
      sum << "AP(P): " << fmt(rep->ap_P.revenue) << '\n';
      sum << "AP(R): " << fmt(rep->ap_R.revenue) << '\n';
      sum << "EAR(R): " << fmt(rep->ear_R.revenue) << '\n';
      sum << "ratio: " << fmt(rep->ratio) << '\n';
      sum << "bound: " << fmt(rep->bound) << " (" << rep->bound_source << ")\n";
      sum << "table1: " << fmt(rep->table1) << " (" << rep->table1_label << ")\n";
      sum << "slack: " << fmt(rep->slack) << '\n';
      for (auto const &a : rep->agents)
        for (auto const &n : a.notes)
          sum << "note " << a.id << ": " << n << '\n';
      for (auto const &c : rep->checks)
      {
        sum << (c.ok ? "PASS " : "FAIL ") << c.name << ": " << fmt(c.lhs) << " vs " << fmt(c.rhs)
            << '\n';
        ok = ok && c.ok;
      }
      if (s.analyses.count(Analysis::verify))
      {
        sum << (rep->pass ? "PASS " : "FAIL ") << "ratio <= bound: " << fmt(rep->ratio) << " vs "
            << fmt(rep->bound) << '\n';
        if (rep->assumption_violated || !std::isfinite(rep->table1))
          sum << "INFO table bound: " << rep->table1_label << '\n';
        else
          sum << (rep->table1_pass ? "PASS " : "FAIL ") << "ratio <= table bound: "
              << fmt(rep->ratio) << " vs " << fmt(rep->table1) << '\n';
        ok = ok && rep->pass;
      }
    }

    for (auto const &ref : s.fixtures)
    {
      for (auto const &r : fixtures::from_reference(ref).check())
      {
        sum << (r.ok ? "PASS " : "FAIL ") << ref << ' ' << r.expected.name << ": " << fmt(r.actual)
            << ' ' << to_string(r.expected.relation) << ' ' << fmt(r.expected.value) << " +- "
            << fmt(r.expected.tolerance) << " (" << r.expected.origin << ")\n";
        ok = ok && r.ok;
      }
    }
  }
  catch (std::exception const &e)
  {
    sum << "error: " << e.what() << '\n';
    ok = false;
  }

  sum << "result: " << (ok ? "pass" : "fail") << '\n';
  res.summary   = sum.str();
  res.exit_code = ok ? 0 : 1;
  fs::path p    = out / "summary.txt";
  auto     os   = scenario_detail::open_out(p);
  os << res.summary;
  add_file(p);
  return res;
}

struct RandomCheck
{
  std::size_t trials = 0;
  std::size_t failures = 0;
  double      worst_ratio = 0.0;
};

/// EAR(hull P) / AP(P) <= e on random regular linear instances drawn from `seed`.
inline RandomCheck random_bound_check(std::uint64_t seed, std::size_t trials,
                                      std::size_t price_grid = kDefaultPriceGrid)
{
  std::mt19937_64                        rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  RandomCheck                            out;
  for (std::size_t t = 0; t < trials; ++t)
  {
    std::size_t const         n = 1 + rng() % 5;
    std::vector<RevenueCurve> Ps, Hs;
    for (std::size_t i = 0; i < n; ++i)
    {
      Distribution F = Distribution::point_mass(1.0);
      switch (rng() % 3)
      {
      case 0: {
        double const a = 2.0 * U(rng);
        F              = Distribution::uniform(a, a + 0.1 + 3.0 * U(rng));
        break;
      }
      case 1:
        F = Distribution::equal_revenue(1.5 + 50.0 * U(rng));
        break;
      default:
        F = Distribution::exponential(0.2 + 3.0 * U(rng));
        break;
      }
      Ps.push_back(price_posting_curve(Agent::linear("r" + std::to_string(i), F), price_grid));
      Hs.push_back(concave_hull(Ps.back()));
    }
    double const ratio = ear_optimize(Hs).revenue / ap_optimize(Ps).revenue;
    out.worst_ratio    = std::max(out.worst_ratio, ratio);
    if (!(ratio <= kRho + 1e-6))
      ++out.failures;
    ++out.trials;
  }
  return out;
}

}  // namespace anonprice
