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

#pragma once

#include "anonprice/closeness.hpp"
#include "anonprice/curves.hpp"
#include "anonprice/distributions.hpp"
#include "anonprice/mechanisms.hpp"
#include "anonprice/numerics.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonprice {

enum class Relation
{
  eq,  // |actual - value| <= tolerance
  le,  // actual <= value + tolerance
  ge   // actual >= value - tolerance
};

inline char const *to_string(Relation r)
{
  switch (r)
  {
  case Relation::eq:
    return "==";
  case Relation::le:
    return "<=";
  case Relation::ge:
    return ">=";
  }
  return "?";
}

struct Expectation
{
  std::string name;
  Relation    relation = Relation::eq;
  double      value = 0.0;
  double      tolerance = 0.0;
  std::string origin;  // closed form | quadrature | example | grid search
  std::string note;
};

struct ExpectationResult
{
  Expectation expected;
  double      actual = 0.0;
  bool        ok = false;
};

inline bool satisfies(Expectation const &e, double actual)
{
  switch (e.relation)
  {
  case Relation::eq:
    return std::abs(actual - e.value) <= e.tolerance;
  case Relation::le:
    return actual <= e.value + e.tolerance;
  case Relation::ge:
    return actual >= e.value - e.tolerance;
  }
  return false;
}

struct Fixture
{
  std::string                   name;    // canonical reference, e.g. "mhr-fail:n=30"
  std::string                   recipe;
  std::map<std::string, double> params;
  std::vector<Agent>            agents;
  std::vector<Expectation>      expected;
  // Computes every named quantity in `expected` from the agents.
  std::function<std::map<std::string, double>()> measure;

  std::vector<ExpectationResult> check() const
  {
    auto const                     got = measure();
    std::vector<ExpectationResult> out;
    for (auto const &e : expected)
    {
      auto it = got.find(e.name);
      if (it == got.end())
      {
        throw std::logic_error("fixture " + name + ": no measurement for " + e.name);
      }
      out.push_back({e, it->second, satisfies(e, it->second)});
    }
    return out;
  }
};

namespace fixtures {

namespace detail {

inline std::string format_param(double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string reference(std::string const &kind, std::map<std::string, double> const &params,
                             std::vector<std::string> const &order)
{
  std::string s = kind;
  char        sep = ':';
  for (auto const &k : order)
  {
    s += sep + k + "=" + format_param(params.at(k));
    sep = ',';
  }
  return s;
}

inline Agent ladder_agent(int i)
{
  double const v  = i;
  double const pr = 1.0 / (v * v);
  auto         w  = i == 1 ? Distribution::point_mass(1.0)
                           : Distribution::discrete({0.0, v}, {1.0 - pr, pr});
  return Agent::private_budget("a" + std::to_string(i), Distribution::point_mass(v), w);
}

inline std::vector<RevenueCurve> price_curves(std::vector<Agent> const &agents)
{
  return price_posting_curves(agents);
}

inline std::vector<RevenueCurve> hulls(std::vector<RevenueCurve> const &cs)
{
  std::vector<RevenueCurve> out;
  for (auto const &c : cs)
    out.push_back(concave_hull(c));
  return out;
}

}  // namespace detail

/// Two linear agents with uniform(0,1) values.
inline Fixture uniform_linear()
{
  Fixture f;
  f.name   = "uniform-linear";
  f.recipe = "two linear agents, values uniform(0,1)";
  auto U   = Distribution::uniform(0, 1);
  f.agents = {Agent::linear("u1", U), Agent::linear("u2", U)};
  double const ap = 2.0 / (3.0 * std::sqrt(3.0));
  f.expected = {
      {"ap_revenue", Relation::eq, ap, 1e-9, "closed form", "max of p(1 - p^2)"},
      {"ap_price", Relation::eq, 1.0 / std::sqrt(3.0), 1e-6, "closed form", "stationary point"},
      {"ear", Relation::eq, 0.5, 1e-6, "closed form", "q = (1/2, 1/2)"},
      {"ratio", Relation::eq, 0.5 / ap, 1e-5, "closed form", "about 1.2990"},
  };
  auto agents = f.agents;
  f.measure   = [agents] {
    auto const P  = detail::price_curves(agents);
    auto const ap = ap_optimize(P);
    auto const e  = ear_optimize(detail::hulls(P));
    return std::map<std::string, double>{{"ap_revenue", ap.revenue},
                                         {"ap_price", ap.price},
                                         {"ear", e.revenue},
                                         {"ratio", e.revenue / ap.revenue}};
  };
  return f;
}

/// One linear agent with an equal-revenue value law on [1, h].
inline Fixture equal_revenue(double h = 10.0)
{
  if (!(h > 1.0))
    throw std::invalid_argument("equal-revenue: h must be > 1");
  Fixture f;
  f.params = {{"h", h}};
  f.name   = detail::reference("equal-revenue", f.params, {"h"});
  f.recipe = "one linear agent, density 1/v^2 on [1,h) and an atom 1/h at h";
  f.agents = {Agent::linear("er", Distribution::equal_revenue(h))};
  f.expected = {
      {"max_P", Relation::eq, 1.0, 1e-9, "closed form", "every price earns 1"},
      {"P_at_half_top", Relation::eq, 0.5, 1e-9, "closed form", "P(q) = h q below q = 1/h"},
      {"P_at_1", Relation::eq, 1.0, 1e-9, "closed form", "flat above q = 1/h"},
      {"reserve_quantile", Relation::eq, 1.0, 1e-9, "example", "ties go to the largest quantile"},
      {"ear", Relation::eq, 1.0, 1e-9, "closed form", "single agent, flat top"},
  };
  auto agents = f.agents;
  f.measure   = [agents, h] {
    auto const P = price_posting_curve(agents[0]);
    return std::map<std::string, double>{{"max_P", P.max_value()},
                                         {"P_at_half_top", P(0.5 / h)},
                                         {"P_at_1", P(1.0)},
                                         {"reserve_quantile", myerson_reserve(P).quantile},
                                         {"ear", ear_optimize({concave_hull(P)}).revenue}};
  };
  return f;
}

/// One public-budget agent, uniform(0,1) values, budget w.
inline Fixture public_budget(double w = 0.3)
{
  if (!(w > 0.0 && w < 1.0))
    throw std::invalid_argument("public-budget: w must lie in (0,1)");
  Fixture f;
  f.params = {{"w", w}};
  f.name   = detail::reference("public-budget", f.params, {"w"});
  f.recipe = "one public-budget agent, values uniform(0,1)";
  f.agents = {Agent::public_budget("pb", Distribution::uniform(0, 1), w)};
  double const m   = std::min(w, 0.5);
  double const qmc = 0.5 * (1.0 - w);
  f.expected = {
      {"max_P", Relation::eq, m * (1.0 - m), 1e-9, "closed form", "price min(w, 1/2)"},
      {"random_price", Relation::eq, w * w / 2.0 - w * w * w / 3.0 + w * (1.0 - w) * (1.0 - w) / 2.0,
       1e-9, "closed form", "E[min(r,w)(1-r)], r uniform"},
      {"random_price_vs_half_benchmark", Relation::ge, 0.5 * m * (1.0 - m), 1e-8, "closed form",
       "half the revenue of price min(w, m*)"},
      {"clearing_price", Relation::eq, w / (qmc + w), 1e-9, "closed form",
       "q(p) = (1-p) w / p above the budget, at q = (1-w)/2"},
  };
  auto agents = f.agents;
  f.measure   = [agents, w, qmc] {
    auto const P  = price_posting_curve(agents[0]);
    double const r = random_price_revenue_public(*agents[0].value(), w);
    return std::map<std::string, double>{
        {"max_P", P.max_value()},
        {"random_price", r},
        {"random_price_vs_half_benchmark", r},
        {"clearing_price", market_clearing_price(offer_curve(agents[0]), qmc)}};
  };
  return f;
}

/// One private-budget agent, values and budgets uniform(0,1).
inline Fixture private_uniform_mhr()
{
  Fixture f;
  f.name   = "private-uniform-mhr";
  f.recipe = "one private-budget agent, value and budget independent uniform(0,1)";
  auto U   = Distribution::uniform(0, 1);
  f.agents = {Agent::private_budget("pv", U, U)};
  double const p = (3.0 - std::sqrt(3.0)) / 3.0;
  f.expected = {
      {"max_P", Relation::eq, (p - p * p / 2.0) * (1.0 - p), 1e-6, "closed form",
       "max of (p - p^2/2)(1 - p); about 0.19245"},
      {"reserve_price", Relation::eq, p, 1e-6, "closed form", "(3 - sqrt 3)/3"},
      {"kappa", Relation::eq, 2.0, 1e-9, "closed form", "P[w > E w] = 1/2"},
      {"zeta", Relation::le, 3.0, 0.05, "example", "LP upper bound at 60 x 20"},
      {"eta", Relation::le, 2.0, 0.05, "example", "LP upper bound at 60 x 20"},
  };
  auto agents = f.agents;
  f.measure   = [agents] {
    auto const ac = agent_closeness(agents[0], OracleConfig{});
    return std::map<std::string, double>{{"max_P", ac.P.max_value()},
                                         {"reserve_price", myerson_reserve(ac.P).price},
                                         {"kappa", ac.kappa.value_or(numerics::kInf)},
                                         {"zeta", ac.zeta},
                                         {"eta", ac.eta}};
  };
  return f;
}

/**
 * n private-budget agents; agent i has value i and budget i with probability
 * 1/i^2, else 0. The budget laws are far from MHR (kappa = i^2).
 */
inline Fixture mhr_fail(int n = 30)
{
  if (n < 1 || n > 200)
    throw std::invalid_argument("mhr-fail: n must lie in [1, 200]");
  Fixture f;
  f.params = {{"n", static_cast<double>(n)}};
  f.name   = detail::reference("mhr-fail", f.params, {"n"});
  f.recipe = "agent i: value i, budget i w.p. 1/i^2 else 0";
  for (int i = 1; i <= n; ++i)
    f.agents.push_back(detail::ladder_agent(i));
  double H = 0.0, S = 0.0;
  for (int i = 1; i <= n; ++i)
  {
    H += 1.0 / i;
    S += 1.0 / (static_cast<double>(i) * i);
  }
  f.expected = {
      {"ap_revenue", Relation::eq, 1.0, 1e-9, "closed form",
       "price k earns (n + 1 - k)/n; best at k = 1"},
      {"ear", Relation::eq, H + 1.0 - S, 1e-6, "closed form",
       "agents i >= 2 served at mass 1/i^2 (revenue 1/i), the rest of the unit to agent 1"},
      {"ratio", Relation::eq, H + 1.0 - S, 1e-6, "closed form", "EAR / AP"},
      {"assumption_violated", Relation::eq, n > 3 ? 1.0 : 0.0, 0.0, "closed form",
       "kappa = i^2 exceeds the default window 10 once i >= 4"},
  };
  auto agents = f.agents;
  f.measure   = [agents] {
    auto const rep = verify_instance(agents);
    return std::map<std::string, double>{{"ap_revenue", rep.ap_P.revenue},
                                         {"ear", rep.ear_R.revenue},
                                         {"ratio", rep.ratio},
                                         {"assumption_violated", rep.assumption_violated ? 1.0 : 0.0}};
  };
  return f;
}

/**
 * Value density (h/(h-1))/v^2 on [1, h] with budget 2h - v, which never binds
 * at prices <= h, so P is the linear price-posting curve. The mechanism
 * charging about v extracts nearly E[v] = (h/(h-1)) ln h, a lower bound on R(1).
 */
inline Fixture correlated_fail(double h = 100.0)
{
  if (!(h > 1.0))
    throw std::invalid_argument("correlated-fail: h must be > 1");
  Fixture f;
  f.params = {{"h", h}};
  f.name   = detail::reference("correlated-fail", f.params, {"h"});
  f.recipe = "synthetic (P, R lower bound) pair";

  double const c = h / (h - 1.0);
  auto         S = [h, c](double p) {
    if (p <= 1.0)
      return 1.0;
    if (p > h)
      return 0.0;
    return c * (1.0 / p - 1.0 / h);
  };
  auto V = [h](double q) { return h / (1.0 + q * (h - 1.0)); };
  auto offer = std::make_shared<OfferCurve const>(S, S, std::vector<double>{1.0, h},
                                                  V(1.0 - 1e-6), V(1e-6), "cf", V);
  auto P      = price_posting_curve(offer).renamed("P");
  double const r1 = c * std::log(h);
  std::vector<CurvePoint> kn(P.knots().begin(), P.knots().end());
  kn.back().value = std::max(kn.back().value, r1);
  auto R      = concave_hull(RevenueCurve::synthetic(kn, "R")).renamed("R");
  f.agents    = {Agent::synthetic("cf", P, R)};
  f.expected = {
      {"max_P", Relation::eq, 1.0, 1e-9, "closed form", "P(q) = h q / (1 + q (h - 1))"},
      {"R_at_1", Relation::eq, r1, 1e-9, "closed form", "(h/(h-1)) ln h"},
      {"mean_value", Relation::eq, r1, 1e-8, "quadrature", "E[v] under the value density"},
      {"ap_revenue", Relation::le, 1.2, 0.0, "grid search",
       "anonymous pricing stays O(1); 1.2 is an implementation-derived cap"},
  };
  f.measure = [P, R, h, c] {
    double const mean = numerics::integrate([c](double v) { return v * c / (v * v); }, 1.0, h, 1e-12);
    return std::map<std::string, double>{{"max_P", P.max_value()},
                                         {"R_at_1", R(1.0)},
                                         {"mean_value", mean},
                                         {"ap_revenue", ap_optimize(std::vector<RevenueCurve>{P}).revenue}};
  };
  return f;
}

/// Capacitated agent with equal-revenue values on [1, h] and capacity C.
inline Fixture risk_equal_revenue(double h = 100.0, double C = 5.0)
{
  if (!(h > 1.0) || !(C >= 1.0) || C > h)
    throw std::invalid_argument("risk-equal-revenue: need 1 <= C <= h");
  Fixture f;
  f.params = {{"h", h}, {"C", C}};
  f.name   = detail::reference("risk-equal-revenue", f.params, {"h", "C"});
  f.recipe = "capacitated agent, equal-revenue values, capacity C";
  auto F   = Distribution::equal_revenue(h);
  f.agents = {Agent::capacitated("ra", F, C, h)};
  f.expected = {
      {"giveaway_revenue", Relation::eq, std::log(h / C), 1e-6, "closed form",
       "always allocate, charge (v - C)+"},
      {"max_P", Relation::eq, 1.0, 1e-9, "closed form", "every price earns 1"},
      {"zeta", Relation::le, 2.0 + std::log(h / C), 1e-6, "closed form",
       "two-priced upper bound over P(q')"},
  };
  auto agents = f.agents;
  f.measure   = [agents, F, C] {
    double const give = F.expectation([C](double v) { return std::max(0.0, v - C); }, {C}, 1e-12);
    auto const   ac   = agent_closeness(agents[0], OracleConfig{});
    return std::map<std::string, double>{
        {"giveaway_revenue", give}, {"max_P", ac.P.max_value()}, {"zeta", ac.zeta}};
  };
  return f;
}

/// Linear equal-revenue agent facing a lottery that collects half the welfare.
inline Fixture overpay(double h = 100.0)
{
  if (!(h > 1.0))
    throw std::invalid_argument("overpay: h must be > 1");
  Fixture f;
  f.params = {{"h", h}};
  f.name   = detail::reference("overpay", f.params, {"h"});
  f.recipe = "equal-revenue agent, capacity h; charge v - h or h with probability 1/2 each";
  auto F   = Distribution::equal_revenue(h);
  f.agents = {Agent::capacitated("op", F, h, h)};
  f.expected = {
      {"overpay_revenue", Relation::eq, (1.0 + std::log(h)) / 2.0, 1e-6, "closed form",
       "half of E[v] = 1 + ln h"},
      {"max_P", Relation::eq, 1.0, 1e-9, "closed form", "every price earns 1"},
  };
  auto agents = f.agents;
  f.measure   = [agents, F] {
    return std::map<std::string, double>{{"overpay_revenue", F.mean() / 2.0},
                                         {"max_P", price_posting_curve(agents[0]).max_value()}};
  };
  return f;
}

/**
 * sqrt(beta) identical synthetic agents with P knots (1/beta, 1), (1, sqrt beta)
 * and R knots (1/sqrt beta, alpha sqrt beta), (1, alpha sqrt beta); eta = alpha.
 */
inline Fixture tightness(double alpha = 2.0, double beta = 4.0)
{
  double const r = std::round(std::sqrt(beta));
  if (!(alpha >= 1.0) || !(beta >= 1.0) || std::abs(r * r - beta) > 1e-9 || r > 64)
    throw std::invalid_argument("tightness: need alpha >= 1 and beta a perfect square <= 4096");
  Fixture f;
  f.params = {{"alpha", alpha}, {"beta", beta}};
  f.name   = detail::reference("tightness", f.params, {"alpha", "beta"});
  f.recipe = "sqrt(beta) synthetic agents";
  auto P = RevenueCurve::synthetic({{0, 0}, {1.0 / beta, 1.0}, {1.0, r}}, "P");
  auto R = RevenueCurve::synthetic({{0, 0}, {1.0 / r, alpha * r}, {1.0, alpha * r}}, "R");
  for (int i = 0; i < static_cast<int>(r); ++i)
    f.agents.push_back(Agent::synthetic("t" + std::to_string(i + 1), P, R));

  double const n       = r;
  double const sale    = 1.0 - std::pow(1.0 - 1.0 / n, n);
  double const ap_r    = alpha * beta * sale;
  double const ear_p   = n + n * (n - 1.0) / (n + 1.0);
  f.expected = {
      {"sale_probability", Relation::eq, sale, 1e-9, "closed form", "1 - (1 - 1/sqrt beta)^sqrt beta"},
      {"ap_R_at_alpha_beta", Relation::ge, ap_r, 1e-6, "closed form", "price alpha beta on R"},
      {"ear_P", Relation::le, ear_p, 1e-6, "closed form", "water-filling on P"},
      {"eta", Relation::eq, alpha, 1e-12, "closed form", "max R / max P"},
  };
  auto agents = f.agents;
  f.measure   = [agents, alpha, beta] {
    std::vector<RevenueCurve> Ps, Rs;
    for (auto const &a : agents)
    {
      auto const &syn = std::get<model::Synthetic>(a.model());
      Ps.push_back(syn.P);
      Rs.push_back(syn.R);
    }
    auto const at = ap_revenue(Rs, alpha * beta);
    return std::map<std::string, double>{{"sale_probability", at.revenue / at.price},
                                         {"ap_R_at_alpha_beta", at.revenue},
                                         {"ear_P", ear_optimize(detail::hulls(Ps)).revenue},
                                         {"eta", eta(Ps[0], Rs[0])}};
  };
  return f;
}

/// Parses "name" or "name:key=value,key=value" and builds the fixture.
inline Fixture from_reference(std::string const &ref)
{
  auto const  colon = ref.find(':');
  std::string kind  = ref.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos)
  {
    std::string rest = ref.substr(colon + 1);
    std::size_t pos  = 0;
    while (pos <= rest.size())
    {
      auto const  comma = rest.find(',', pos);
      std::string item  = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      auto const  eq    = item.find('=');
      if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("fixture '" + ref + "': expected key=value, got '" + item + "'");
      std::string const key = item.substr(0, eq);
      std::string const val = item.substr(eq + 1);
      double            x   = 0.0;
      auto const [end, ec]  = std::from_chars(val.data(), val.data() + val.size(), x);
      if (ec != std::errc{} || end != val.data() + val.size())
        throw std::invalid_argument("fixture '" + ref + "': bad number '" + val + "'");
      if (!kv.emplace(key, x).second)
        throw std::invalid_argument("fixture '" + ref + "': duplicate key '" + key + "'");
      if (comma == std::string::npos)
        break;
      pos = comma + 1;
    }
  }
  auto take = [&](char const *key, double def) {
    auto it = kv.find(key);
    if (it == kv.end())
      return def;
    double v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&](Fixture f) {
    if (!kv.empty())
      throw std::invalid_argument("fixture '" + ref + "': unknown parameter '" + kv.begin()->first + "'");
    return f;
  };
  if (kind == "uniform-linear")
    return finish(uniform_linear());
  if (kind == "equal-revenue")
    return finish(equal_revenue(take("h", 10.0)));
  if (kind == "public-budget")
    return finish(public_budget(take("w", 0.3)));
  if (kind == "private-uniform-mhr")
    return finish(private_uniform_mhr());
  if (kind == "mhr-fail")
  {
    double const n = take("n", 30.0);
    if (n != std::floor(n))
      throw std::invalid_argument("fixture '" + ref + "': n must be an integer");
    return finish(mhr_fail(static_cast<int>(n)));
  }
  if (kind == "correlated-fail")
    return finish(correlated_fail(take("h", 100.0)));
  if (kind == "risk-equal-revenue")
  {
    double const h = take("h", 100.0);
    return finish(risk_equal_revenue(h, take("C", 5.0)));
  }
  if (kind == "overpay")
    return finish(overpay(take("h", 100.0)));
  if (kind == "tightness")
  {
    double const a = take("alpha", 2.0);
    return finish(tightness(a, take("beta", 4.0)));
  }
  throw std::invalid_argument("unknown fixture '" + kind + "'");
}

/// The built-in set with default parameters.
inline std::vector<Fixture> all()
{
  return {uniform_linear(),      equal_revenue(10.0), public_budget(0.3),
          private_uniform_mhr(), mhr_fail(30),        correlated_fail(100.0),
          risk_equal_revenue(),  overpay(100.0),      tightness(2.0, 4.0)};
}

}  // namespace fixtures

}  // namespace anonprice
