#pragma once
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

#include "anonprice/curves.hpp"
#include "anonprice/distributions.hpp"
#include "anonprice/mechanisms.hpp"
#include "anonprice/numerics.hpp"
#include "anonprice/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonprice {

inline constexpr double kRho = std::numbers::e;

namespace detail {

inline constexpr double kMinQuantile = 1e-6;

/// Sorted evaluation points: a uniform grid on [0, top] plus every knot of both curves inside.
inline std::vector<double> comparison_points(RevenueCurve const &P, RevenueCurve const &R,
                                             double top, std::size_t grid)
{
  std::vector<double> qs = numerics::lin_space(0.0, top, grid + 1);
  for (auto const *c : {&P, &R})
    for (auto const &k : c->knots())
      if (k.q <= top)
        qs.push_back(k.q);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  return qs;
}

}  // namespace detail

/**
 * sup of R / P over [1e-6, 1/beta] (at least 1); infinite where P = 0 < R.
 * `abs_slack` is subtracted from R first, absorbing discretization error of an
 * LP-backed R.
 */
inline double alpha_for_beta(RevenueCurve const &P, RevenueCurve const &R, double beta,
                             std::size_t grid = 4096, double abs_slack = 0.0)
{
  if (!(beta >= 1.0))
  {
    throw std::invalid_argument("alpha_for_beta: beta must be >= 1");
  }
  double alpha = 1.0;
  for (double q : detail::comparison_points(P, R, 1.0 / beta, grid))
  {
    if (q < detail::kMinQuantile)
      continue;
    double const r = R(q) - abs_slack;
    if (r <= 0.0)
      continue;
    double const p = P(q);
    if (p <= 0.0)
      return numerics::kInf;
    alpha = std::max(alpha, r / p);
  }
  return alpha;
}

/// max over q of R(q) / max_{q' <= q} P(q') (at least 1).
inline double zeta(RevenueCurve const &P, RevenueCurve const &R, std::size_t grid = 4096)
{
  double z      = 1.0;
  double runmax = 0.0;
  for (double q : detail::comparison_points(P, R, 1.0, grid))
  {
    runmax = std::max(runmax, P(q));
    if (q < detail::kMinQuantile)
      continue;
    double const r = R(q);
    if (r <= 0.0)
      continue;
    if (runmax <= 0.0)
      return numerics::kInf;
    z = std::max(z, r / runmax);
  }
  return z;
}

/// max R / max P.
inline double eta(RevenueCurve const &P, RevenueCurve const &R)
{
  double const mp = P.max_value();
  double const mr = R.max_value();
  if (mp <= 0.0)
    return mr > 0.0 ? numerics::kInf : 1.0;
  return mr / mp;
}

/// True when R >= P at every knot of either curve (within round-off).
inline bool dominates(RevenueCurve const &R, RevenueCurve const &P)
{
  for (double q : detail::comparison_points(P, R, 1.0, 0))
  {
    double const p = P(q);
    if (R(q) < p - 1e-9 * std::max(1.0, std::abs(p)))
      return false;
  }
  return true;
}

struct TransferBounds
{
  double basic;     // alpha beta
  double improved;  // sqrt(alpha beta eta) if alpha <= beta eta, else alpha
};

inline TransferBounds transfer_bounds(double alpha, double beta, double eta_value)
{
  TransferBounds t;
  t.basic    = alpha * beta;
  t.improved = alpha <= beta * eta_value ? std::sqrt(alpha * beta * eta_value) : alpha;
  return t;
}

enum class Table1Model
{
  public_budget,
  private_mhr,
  private_kappa,
  risk_averse
};

inline char const *to_string(Table1Model m)
{
  switch (m)
  {
  case Table1Model::public_budget:
    return "public";
  case Table1Model::private_mhr:
    return "private-mhr";
  case Table1Model::private_kappa:
    return "private-kappa";
  case Table1Model::risk_averse:
    return "risk-averse";
  }
  return "?";
}

inline Table1Model parse_table1_model(std::string const &s)
{
  if (s == "public")
    return Table1Model::public_budget;
  if (s == "private-mhr")
    return Table1Model::private_mhr;
  if (s == "private-kappa")
    return Table1Model::private_kappa;
  if (s == "risk-averse")
    return Table1Model::risk_averse;
  throw std::invalid_argument("table1_bound: unknown model '" + s + "'");
}

/**
 * Anonymous pricing vs ex ante relaxation bound per utility model.
 * `param` is kappa for private-kappa and hbar / C for risk-averse.
 */
inline double table1_bound(Table1Model model, double param = 0.0)
{
  constexpr double e = std::numbers::e;
  switch (model)
  {
  case Table1Model::public_budget:
    return e;
  case Table1Model::private_mhr:
    return 3.0 * e;
  case Table1Model::private_kappa:
    if (!(param >= 1.0))
      throw std::invalid_argument("table1_bound: kappa must be >= 1");
    return std::sqrt(2.0 * (2.0 + param) * (1.0 + param)) * e;
  case Table1Model::risk_averse:
    if (!(param >= 1.0))
      throw std::invalid_argument("table1_bound: hbar / C must be >= 1");
    return (2.0 + std::log(param)) * e;
  }
  throw std::invalid_argument("table1_bound: unknown model");
}

inline double table1_bound(std::string const &model, double param = 0.0)
{
  return table1_bound(parse_table1_model(model), param);
}

// ---------------------------------------------------------------------------
// Instance verification

struct OracleConfig
{
  std::size_t         n_values        = kDefaultOracleValues;
  std::size_t         n_budgets       = kDefaultOracleBudgets;
  std::size_t         quantile_grid   = kDefaultOracleGrid;
  std::size_t         price_grid      = kDefaultPriceGrid;
  std::size_t         compare_grid    = 4096;
  std::size_t         two_priced_grid = 257;
  std::vector<double> betas{1.0, 2.0, 3.0, 4.0};
  double              lp_slack        = 0.05;
  double              closed_slack    = 1e-6;
  double              max_kappa       = 10.0;

  void validate() const
  {
    if (betas.empty())
      throw std::invalid_argument("oracle config: need at least one beta");
    for (double b : betas)
      if (!(b >= 1.0))
        throw std::invalid_argument("oracle config: beta must be >= 1");
    if (n_values < 2 || n_budgets < 2)
      throw std::invalid_argument("oracle config: discretization sizes must be >= 2");
    if (quantile_grid < 8)
      throw std::invalid_argument("oracle config: quantile grid must be >= 8");
    if (price_grid < 64)
      throw std::invalid_argument("oracle config: price grid must be >= 64");
    if (!(lp_slack >= 0.0) || !(closed_slack >= 0.0))
      throw std::invalid_argument("oracle config: slacks must be >= 0");
  }
};

struct AgentCloseness
{
  std::string         id;
  std::string         model;
  std::string         rbar_source;  // hull | lp-upper-bound | two-priced-upper-bound | given
  RevenueCurve        P;
  RevenueCurve        H;
  RevenueCurve        Rbar;
  std::vector<double> alpha;        // one per beta, LP slack applied
  std::vector<double> alpha_exact;  // one per beta, no slack
  double              zeta = 1.0;
  double              eta = 1.0;
  std::optional<double> kappa;
  std::optional<Table1Model> table_model;
  double              table_param = 0.0;
  bool                lp_backed = false;
  std::vector<std::string> notes;  // assumption diagnostics
  bool                assumption_violated = false;
};

struct PropertyCheck
{
  std::string name;
  bool        ok = true;
  double      lhs = 0.0;
  double      rhs = 0.0;
};

struct ClosenessReport
{
  std::vector<double>         betas;
  std::vector<AgentCloseness> agents;
  std::vector<double>         alpha;  // instance alpha(beta): max over agents
  std::vector<double>         alpha_exact;
  double                      zeta = 1.0;
  double                      eta = 1.0;
  double                      rho = kRho;
  ApResult                    ap_P;
  ApResult                    ap_R;
  EarResult                   ear_R;
  EarResult                   ear_H;
  double                      ratio = 0.0;  // EAR(Rbar) / AP(P)
  std::vector<TransferBounds> transfer;     // per beta
  double                      bound_ear = numerics::kInf;  // zeta rho
  double                      bound = numerics::kInf;      // smallest applicable transfer bound times rho
  std::string                 bound_source;
  double                      table1 = numerics::kInf;
  std::string                 table1_label;
  bool                        assumption_violated = false;
  double                      slack = 0.0;
  bool                        pass = false;
  bool                        table1_pass = false;
  std::vector<PropertyCheck>  checks;

  bool checks_ok() const
  {
    return std::all_of(checks.begin(), checks.end(), [](auto const &c) { return c.ok; });
  }
};

namespace detail {

inline void classify_assumptions(Agent const &agent, OracleConfig const &cfg, AgentCloseness &ac)
{
  auto note_regular = [&](Distribution const &F) {
    if (!regularity_report(F, 1024).regular)
    {
      ac.notes.push_back("value law not regular");
      return false;
    }
    return true;
  };
  std::visit(
      [&](auto const &m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, model::Linear>)
        {
          note_regular(m.value);
          ac.table_model = Table1Model::public_budget;
        }
        else if constexpr (std::is_same_v<T, model::PublicBudget>)
        {
          if (!note_regular(m.value))
            ac.assumption_violated = true;
          ac.table_model = Table1Model::public_budget;
        }
        else if constexpr (std::is_same_v<T, model::PrivateBudget>)
        {
          bool const   reg   = note_regular(m.value);
          auto const   mhr   = mhr_report(m.budget, 1024);
          double const pexc  = exceed_mean_probability(m.budget);
          ac.kappa           = pexc > 0.0 ? 1.0 / pexc : numerics::kInf;
          if (!reg)
            ac.assumption_violated = true;
          if (mhr.status == MhrStatus::mhr)
          {
            ac.table_model = Table1Model::private_mhr;
          }
          else if (*ac.kappa <= cfg.max_kappa)
          {
            ac.notes.push_back(std::string("budget law ") + to_string(mhr.status) +
                               "; using kappa window");
            ac.table_model = Table1Model::private_kappa;
            ac.table_param = *ac.kappa;
          }
          else
          {
            ac.notes.push_back("budget law not MHR and kappa = " + std::to_string(*ac.kappa) +
                               " exceeds " + std::to_string(cfg.max_kappa));
            ac.assumption_violated = true;
          }
        }
        else if constexpr (std::is_same_v<T, model::Capacitated>)
        {
          ac.table_model = Table1Model::risk_averse;
          ac.table_param = m.hbar / m.capacity;
        }
        else
        {
          ac.notes.push_back("synthetic curves: no model assumptions");
        }
      },
      agent.model());
}

}  // namespace detail

/// Per-agent curves and closeness parameters.
inline AgentCloseness agent_closeness(Agent const &agent, OracleConfig const &cfg)
{
  AgentCloseness ac;
  ac.id    = agent.id();
  ac.model = agent.model_name();
  ac.P     = price_posting_curve(agent, cfg.price_grid);
  ac.H     = concave_hull(ac.P);

  RevenueCurve raw;
  if (auto const *syn = std::get_if<model::Synthetic>(&agent.model()))
  {
    raw            = syn->R;
    ac.rbar_source = "given";
  }
  else if (auto const *cap = std::get_if<model::Capacitated>(&agent.model()))
  {
    raw            = two_priced_bound_curve(ac.H, cap->capacity, cap->hbar, cfg.two_priced_grid);
    ac.rbar_source = "two-priced-upper-bound";
  }
  else if (std::holds_alternative<model::Linear>(agent.model()))
  {
    raw            = ac.H;
    ac.rbar_source = "hull";
  }
  else
  {
    raw = ex_ante_curve_oracle(type_space(agent, cfg.n_values, cfg.n_budgets), cfg.quantile_grid);
    ac.rbar_source = "lp-upper-bound";
    ac.lp_backed   = true;
  }
  ac.Rbar = concave_hull(raw).renamed("R");
  if (!dominates(ac.Rbar, ac.P))
    ac.notes.push_back("upper-bound curve does not dominate P everywhere");

  double const slack = ac.lp_backed ? cfg.lp_slack * ac.P.max_value() : 0.0;
  for (double b : cfg.betas)
  {
    ac.alpha_exact.push_back(alpha_for_beta(ac.P, ac.Rbar, b, cfg.compare_grid));
    ac.alpha.push_back(slack > 0.0 ? alpha_for_beta(ac.P, ac.Rbar, b, cfg.compare_grid, slack)
                                   : ac.alpha_exact.back());
  }
  ac.zeta = zeta(ac.P, ac.Rbar, cfg.compare_grid);
  ac.eta  = eta(ac.P, ac.Rbar);
  detail::classify_assumptions(agent, cfg, ac);
  return ac;
}

inline void append_property_checks(ClosenessReport &rep)
{
  double const scale = std::max({1.0, rep.ap_R.revenue, rep.ear_R.revenue});
  double const tol   = 1e-6 * scale;
  for (auto const &a : rep.agents)
  {
    for (std::size_t b = 0; b < rep.betas.size(); ++b)
    {
      if (!std::isfinite(a.alpha_exact[b]))
        continue;
      double const rhs = a.alpha_exact[b] * rep.betas[b];
      rep.checks.push_back({a.id + ": zeta <= alpha*beta at beta=" + std::to_string(rep.betas[b]),
                            a.zeta <= rhs * (1.0 + 1e-9) + 1e-9, a.zeta, rhs});
      if (b + 1 < rep.betas.size() && rep.betas[b + 1] >= rep.betas[b])
        rep.checks.push_back({a.id + ": alpha nonincreasing in beta",
                              a.alpha_exact[b + 1] <= a.alpha_exact[b] + 1e-12,
                              a.alpha_exact[b + 1], a.alpha_exact[b]});
    }
    rep.checks.push_back({a.id + ": eta <= zeta", a.eta <= a.zeta * (1.0 + 1e-9), a.eta, a.zeta});
  }
  for (std::size_t b = 0; b < rep.betas.size(); ++b)
  {
    double const ab = rep.alpha_exact[b] * rep.betas[b];
    if (!std::isfinite(ab))
      continue;
    double const rhs = rep.ap_R.revenue / ab - tol;
    rep.checks.push_back({"AP(P) >= AP(R)/(alpha beta) at beta=" + std::to_string(rep.betas[b]),
                          rep.ap_P.revenue >= rhs, rep.ap_P.revenue, rhs});
  }
  if (std::isfinite(rep.zeta))
  {
    double const rhs = rep.ear_R.revenue / rep.zeta - tol;
    rep.checks.push_back({"EAR(hull P) >= EAR(R)/zeta", rep.ear_H.revenue >= rhs,
                          rep.ear_H.revenue, rhs});
  }
}

/**
 * Builds P, hull(P) and an upper bound on R per agent, the instance closeness
 * parameters (maximum over agents), the achieved AP(P) and EAR(R), and checks
 * the ratio against the applicable bounds.
 */
inline ClosenessReport verify_instance(std::vector<Agent> const &agents,
                                       OracleConfig const       &cfg = {})
{
  cfg.validate();
  if (agents.empty())
  {
    throw std::invalid_argument("verify_instance: need at least one agent");
  }
  ClosenessReport rep;
  rep.betas = cfg.betas;
  rep.alpha.assign(cfg.betas.size(), 1.0);
  rep.alpha_exact.assign(cfg.betas.size(), 1.0);
  bool lp_backed = false;
  std::vector<RevenueCurve> Ps, Hs, Rs;
  for (auto const &a : agents)
  {
    rep.agents.push_back(agent_closeness(a, cfg));
    auto const &ac = rep.agents.back();
    for (std::size_t b = 0; b < cfg.betas.size(); ++b)
    {
      rep.alpha[b]       = std::max(rep.alpha[b], ac.alpha[b]);
      rep.alpha_exact[b] = std::max(rep.alpha_exact[b], ac.alpha_exact[b]);
    }
    rep.zeta = std::max(rep.zeta, ac.zeta);
    rep.eta  = std::max(rep.eta, ac.eta);
    rep.assumption_violated = rep.assumption_violated || ac.assumption_violated;
    lp_backed               = lp_backed || ac.lp_backed;
    Ps.push_back(ac.P);
    Hs.push_back(ac.H);
    Rs.push_back(ac.Rbar);
  }

  rep.ap_P  = ap_optimize(Ps);
  rep.ap_R  = ap_optimize(Rs);
  rep.ear_R = ear_optimize(Rs);
  rep.ear_H = ear_optimize(Hs);
  rep.ratio = rep.ap_P.revenue > 0.0 ? rep.ear_R.revenue / rep.ap_P.revenue : numerics::kInf;

  rep.bound_ear = rep.zeta * rep.rho;
  rep.bound     = rep.bound_ear;
  rep.bound_source = "zeta";
  for (std::size_t b = 0; b < cfg.betas.size(); ++b)
  {
    rep.transfer.push_back(transfer_bounds(rep.alpha[b], cfg.betas[b], rep.eta));
    auto const &t  = rep.transfer.back();
    std::string tag = "beta=" + std::to_string(cfg.betas[b]);
    if (t.basic * rep.rho < rep.bound)
    {
      rep.bound        = t.basic * rep.rho;
      rep.bound_source = "alpha*beta at " + tag;
    }
    if (t.improved * rep.rho < rep.bound)
    {
      rep.bound        = t.improved * rep.rho;
      rep.bound_source = "improved at " + tag;
    }
  }

  if (rep.assumption_violated)
  {
    rep.table1_label = "assumption violated";
  }
  else
  {
    rep.table1 = 0.0;
    for (auto const &a : rep.agents)
    {
      if (a.table_model)
      {
        rep.table1 = std::max(rep.table1, table1_bound(*a.table_model, a.table_param));
        rep.table1_label = to_string(*a.table_model);
      }
    }
    if (rep.table1 == 0.0)
    {
      rep.table1       = numerics::kInf;
      rep.table1_label = "n/a";
    }
  }

  rep.slack       = lp_backed ? cfg.lp_slack : cfg.closed_slack;
  rep.pass        = rep.ratio <= rep.bound * (1.0 + rep.slack);
  rep.table1_pass = std::isfinite(rep.table1) && rep.ratio <= rep.table1 * (1.0 + rep.slack);
  append_property_checks(rep);
  return rep;
}

}  // namespace anonprice
