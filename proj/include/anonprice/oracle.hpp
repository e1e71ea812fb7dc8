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
#include "anonprice/numerics.hpp"
#include "anonprice/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonprice {

enum class SpaceModel
{
  linear,
  public_budget,
  private_budget
};

inline char const *to_string(SpaceModel m)
{
  switch (m)
  {
  case SpaceModel::linear:
    return "linear";
  case SpaceModel::public_budget:
    return "public-budget";
  case SpaceModel::private_budget:
    return "private-budget";
  }
  return "?";
}

/**
 * Finite product type space: values v_1 < ... < v_m with masses f, budgets
 * w_1 < ... < w_n with masses g. The linear model has the single budget +inf.
 */
struct DiscreteTypeSpace
{
  SpaceModel          model = SpaceModel::linear;
  std::vector<double> values;
  std::vector<double> f;
  std::vector<double> budgets{numerics::kInf};
  std::vector<double> g{1.0};

  static DiscreteTypeSpace make(SpaceModel model, std::vector<double> values, std::vector<double> f,
                                std::vector<double> budgets, std::vector<double> g)
  {
    DiscreteTypeSpace s{model, std::move(values), std::move(f), std::move(budgets), std::move(g)};
    if (model == SpaceModel::linear)
    {
      s.budgets = {numerics::kInf};
      s.g       = {1.0};
    }
    s.validate();
    return s;
  }

  std::size_t value_count() const
  {
    return values.size();
  }

  std::size_t budget_count() const
  {
    return budgets.size();
  }

  void validate() const
  {
    auto check_axis = [](std::vector<double> const &x, std::vector<double> const &m,
                         char const *axis) {
      if (x.empty() || x.size() != m.size())
      {
        throw std::invalid_argument(std::string("type space: ") + axis +
                                    " support and masses differ in length");
      }
      double total = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
      {
        if (!(m[i] > 0.0))
          throw std::invalid_argument(std::string("type space: ") + axis + " masses must be > 0");
        if (i > 0 && !(x[i] > x[i - 1]))
          throw std::invalid_argument(std::string("type space: ") + axis +
                                      " support must increase strictly");
        total += m[i];
      }
      if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument(std::string("type space: ") + axis + " masses must sum to 1");
    };
    check_axis(values, f, "value");
    check_axis(budgets, g, "budget");
    if (values.front() < 0.0)
      throw std::invalid_argument("type space: values must be >= 0");
  }
};

namespace detail {

inline void split_atoms(Distribution const &d, std::vector<double> &x, std::vector<double> &m)
{
  x.clear();
  m.clear();
  for (auto const &a : d.atoms())
  {
    x.push_back(a.value);
    m.push_back(a.mass);
  }
}

}  // namespace detail

/// Discretizes a non-synthetic, non-capacitated agent onto a product grid.
inline DiscreteTypeSpace type_space(Agent const &agent, std::size_t n_values, std::size_t n_budgets)
{
  DiscreteTypeSpace s;
  auto const       *F = agent.value();
  if (F == nullptr)
  {
    throw std::invalid_argument("type space: synthetic agent '" + agent.id() +
                                "' has no value law");
  }
  detail::split_atoms(discretize(*F, n_values), s.values, s.f);
  if (auto const *pb = std::get_if<model::PublicBudget>(&agent.model()))
  {
    s.model   = SpaceModel::public_budget;
    s.budgets = {pb->budget};
    s.g       = {1.0};
  }
  else if (auto const *pv = std::get_if<model::PrivateBudget>(&agent.model()))
  {
    s.model = SpaceModel::private_budget;
    detail::split_atoms(discretize(pv->budget, n_budgets), s.budgets, s.g);
  }
  else if (std::holds_alternative<model::Linear>(agent.model()))
  {
    s.model = SpaceModel::linear;
  }
  else
  {
    throw std::invalid_argument("type space: capacitated agent '" + agent.id() +
                                "' has no LP formulation");
  }
  s.validate();
  return s;
}

/// Product law of a discrete space as a value law (for price-posting curves).
inline Agent space_agent(DiscreteTypeSpace const &s, std::string id = "space")
{
  auto F = Distribution::discrete(s.values, s.f);
  switch (s.model)
  {
  case SpaceModel::linear:
    return Agent::linear(std::move(id), F);
  case SpaceModel::public_budget:
    return Agent::public_budget(std::move(id), F, s.budgets.front());
  case SpaceModel::private_budget:
    return Agent::private_budget(std::move(id), F, Distribution::discrete(s.budgets, s.g));
  }
  throw std::logic_error("space_agent: unknown model");
}

struct LpSolution
{
  LpStatus                         status = LpStatus::infeasible;
  std::vector<std::vector<double>> x;  // x[i][j]: value level i, budget level j
  std::vector<std::vector<double>> p;
  double                           objective = 0.0;
  double                           max_residual = 0.0;
  std::size_t                      pivots = 0;

  void write_csv(std::ostream &os) const
  {
    os << "i,j,x,p\n";
    os.precision(12);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < x[i].size(); ++j)
        os << i << ',' << j << ',' << x[i][j] << ',' << p[i][j] << '\n';
  }
};

/**
 * Single-agent ex ante revenue LP at mass q.
 *
 * Variables are allocation increments d_kj >= 0 (x_ij = sum_{k<=i} d_kj, so x
 * is monotone in value by construction) and u_j >= 0, the utility left to the
 * lowest value type at budget level j. Payments follow the discrete payment
 * identity p_ij = sum_{k<=i} v_k d_kj - u_j. Constraints per level: x_mj <= 1,
 * p_mj <= w_j (finite budgets), p_1j >= 0; plus sum_ij f_i g_j x_ij = q.
 * Budget-IC across levels is not imposed, so the optimum upper-bounds R(q).
 */
inline LpProblem build_ex_ante_lp(DiscreteTypeSpace const &s, double q)
{
  std::size_t const m  = s.value_count();
  std::size_t const n  = s.budget_count();
  std::size_t const nv = m * n + n;
  auto d = [m](std::size_t k, std::size_t j) { return j * m + k; };
  auto u = [m, n](std::size_t j) { return m * n + j; };

  std::vector<double> tail(m);
  double              acc = 0.0;
  for (std::size_t i = m; i-- > 0;)
  {
    acc += s.f[i];
    tail[i] = acc;
  }

  LpProblem lp;
  lp.objective.assign(nv, 0.0);
  for (std::size_t j = 0; j < n; ++j)
  {
    for (std::size_t k = 0; k < m; ++k)
      lp.objective[d(k, j)] = s.g[j] * s.values[k] * tail[k];
    lp.objective[u(j)] = -s.g[j];
  }
  for (std::size_t j = 0; j < n; ++j)
  {
    std::vector<double> row(nv, 0.0);
    for (std::size_t k = 0; k < m; ++k)
      row[d(k, j)] = 1.0;
    lp.add_row(std::move(row), Sense::le, 1.0);

    if (std::isfinite(s.budgets[j]))
    {
      std::vector<double> cap(nv, 0.0);
      for (std::size_t k = 0; k < m; ++k)
        cap[d(k, j)] = s.values[k];
      cap[u(j)] = -1.0;
      lp.add_row(std::move(cap), Sense::le, s.budgets[j]);
    }

    std::vector<double> ir(nv, 0.0);
    ir[u(j)]    = 1.0;
    ir[d(0, j)] = -s.values[0];
    lp.add_row(std::move(ir), Sense::le, 0.0);
  }
  std::vector<double> mass(nv, 0.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < m; ++k)
      mass[d(k, j)] = s.g[j] * tail[k];
  lp.add_row(std::move(mass), Sense::eq, q);
  return lp;
}

inline LpSolution ex_ante_revenue_lp(DiscreteTypeSpace const &s, double q)
{
  if (!(q >= 0.0))
  {
    throw std::invalid_argument("ex_ante_revenue_lp: q must be >= 0");
  }
  auto const        res = simplex_solve(build_ex_ante_lp(s, q));
  LpSolution        sol;
  std::size_t const m = s.value_count();
  std::size_t const n = s.budget_count();
  sol.status          = res.status;
  sol.pivots          = res.pivots;
  if (res.status != LpStatus::optimal)
  {
    return sol;
  }
  sol.objective    = res.objective;
  sol.max_residual = res.max_residual;
  sol.x.assign(m, std::vector<double>(n, 0.0));
  sol.p.assign(m, std::vector<double>(n, 0.0));
  for (std::size_t j = 0; j < n; ++j)
  {
    double x   = 0.0;
    double pay = -res.x[m * n + j];
    for (std::size_t i = 0; i < m; ++i)
    {
      double const di = res.x[j * m + i];
      x += di;
      pay += s.values[i] * di;
      sol.x[i][j] = x;
      sol.p[i][j] = pay;
    }
  }
  return sol;
}

inline constexpr std::size_t kDefaultOracleValues  = 60;
inline constexpr std::size_t kDefaultOracleBudgets = 20;
inline constexpr std::size_t kDefaultOracleGrid    = 33;

/**
 * Upper-bound ex ante curve sampled at q = k / (grid - 1) and at the knots of
 * the concave hull of the space's own price-posting curve, where the LP
 * optimum typically kinks.
 */
inline RevenueCurve ex_ante_curve_oracle(DiscreteTypeSpace const &s,
                                         std::size_t              grid = kDefaultOracleGrid)
{
  if (grid < 8)
  {
    throw std::invalid_argument("ex_ante_curve_oracle: grid must be >= 8");
  }
  std::vector<double> qs = numerics::lin_space(0.0, 1.0, grid);
  for (auto const &k : concave_hull(price_posting_curve(space_agent(s), 256)).knots())
    qs.push_back(k.q);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end(), [](double a, double b) { return b - a < 1e-9; }),
           qs.end());

  std::vector<CurvePoint> knots;
  for (double q : qs)
  {
    auto const sol = ex_ante_revenue_lp(s, q);
    if (sol.status != LpStatus::optimal)
    {
      throw std::runtime_error(std::string("ex_ante_curve_oracle: LP ") + to_string(sol.status) +
                               " at q = " + std::to_string(q));
    }
    knots.push_back({q, q == 0.0 ? 0.0 : sol.objective});
  }
  return RevenueCurve(std::move(knots), "R");
}

/**
 * max sum_i c_i(q_i) over the grid {0, step, 2 step, ...} with sum q_i <= 1.
 * The last curve is handled by a prefix maximum, so the cost is
 * O((1/step)^(n-1)).
 */
inline double brute_force_ear(std::vector<RevenueCurve> const &curves, double step)
{
  if (curves.empty() || curves.size() > 3)
  {
    throw std::invalid_argument("brute_force_ear: supports 1 to 3 curves");
  }
  if (!(step > 0.0) || step > 0.01)
  {
    throw std::invalid_argument("brute_force_ear: step must lie in (0, 0.01]");
  }
  std::size_t const N = static_cast<std::size_t>(std::floor(1.0 / step + 1e-9));
  auto grid_q = [&](std::size_t k) { return std::min(1.0, static_cast<double>(k) * step); };

  std::vector<std::vector<double>> val(curves.size(), std::vector<double>(N + 1));
  for (std::size_t c = 0; c < curves.size(); ++c)
    for (std::size_t k = 0; k <= N; ++k)
      val[c][k] = curves[c](grid_q(k));

  std::vector<double> prefix(N + 1);
  auto const         &last = val.back();
  prefix[0]                = last[0];
  for (std::size_t k = 1; k <= N; ++k)
    prefix[k] = std::max(prefix[k - 1], last[k]);

  if (curves.size() == 1)
    return prefix[N];
  double best = -numerics::kInf;
  if (curves.size() == 2)
  {
    for (std::size_t a = 0; a <= N; ++a)
      best = std::max(best, val[0][a] + prefix[N - a]);
    return best;
  }
  for (std::size_t a = 0; a <= N; ++a)
    for (std::size_t b = 0; a + b <= N; ++b)
      best = std::max(best, val[0][a] + val[1][b] + prefix[N - a - b]);
  return best;
}

}  // namespace anonprice
