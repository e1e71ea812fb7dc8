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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonprice {

enum class LpStatus
{
  optimal,
  infeasible,
  unbounded
};

inline char const *to_string(LpStatus s)
{
  switch (s)
  {
  case LpStatus::optimal:
    return "optimal";
  case LpStatus::infeasible:
    return "infeasible";
  case LpStatus::unbounded:
    return "unbounded";
  }
  return "?";
}

enum class Sense
{
  le,
  ge,
  eq
};

/**
 * maximize c'x  subject to  A x (<=|>=|=) b,  0 <= x <= upper.
 *
 * `upper` may be empty (no upper bounds) or hold one entry per variable,
 * +inf meaning unbounded above.
 */
struct LpProblem
{
  std::vector<double>              objective;
  std::vector<std::vector<double>> rows;
  std::vector<Sense>               senses;
  std::vector<double>              rhs;
  std::vector<double>              upper;

  std::size_t variables() const
  {
    return objective.size();
  }

  void add_row(std::vector<double> coeffs, Sense sense, double b)
  {
    rows.push_back(std::move(coeffs));
    senses.push_back(sense);
    rhs.push_back(b);
  }
};

struct LpResult
{
  LpStatus            status = LpStatus::infeasible;
  std::vector<double> x;
  double              objective = 0.0;
  double              max_residual = 0.0;  // worst constraint or bound violation at x
  std::size_t         pivots = 0;
};

namespace detail {

class Tableau
{
public:
  Tableau(std::size_t rows, std::size_t cols)
    : m_(rows)
    , n_(cols)
    , a_((rows + 1) * (cols + 1), 0.0)
  {}

  double &at(std::size_t r, std::size_t c)
  {
    return a_[r * (n_ + 1) + c];
  }

  double at(std::size_t r, std::size_t c) const
  {
    return a_[r * (n_ + 1) + c];
  }

  double &rhs(std::size_t r)
  {
    return at(r, n_);
  }

  // Row m_ holds the reduced costs of the active objective.
  double &cost(std::size_t c)
  {
    return at(m_, c);
  }

  std::size_t rows() const
  {
    return m_;
  }

  std::size_t cols() const
  {
    return n_;
  }

  void pivot(std::size_t r, std::size_t c)
  {
    double const inv = 1.0 / at(r, c);
    double      *pr  = &a_[r * (n_ + 1)];
    for (std::size_t j = 0; j <= n_; ++j)
      pr[j] *= inv;
    pr[c] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i)
    {
      if (i == r)
        continue;
      double *pi = &a_[i * (n_ + 1)];
      double  f  = pi[c];
      if (f == 0.0)
        continue;
      for (std::size_t j = 0; j <= n_; ++j)
        pi[j] -= f * pr[j];
      pi[c] = 0.0;
    }
  }

private:
  std::size_t         m_;
  std::size_t         n_;
  std::vector<double> a_;
};

}  // namespace detail

enum class PivotRule
{
  bland,           // smallest-index entering and leaving variables throughout
  dantzig_bland,   // largest reduced cost; Bland's rule while pivots stay degenerate
};

/**
 * Dense two-phase primal simplex.
 *
 * The default rule prices by the most negative reduced cost and falls back to
 * Bland's smallest-index rule after a run of degenerate pivots, returning to
 * Dantzig pricing once the objective moves again. Cycling needs an unbroken
 * run of degenerate pivots, which Bland's rule ends, so both rules terminate.
 */
inline LpResult simplex_solve(LpProblem const &lp, PivotRule rule = PivotRule::dantzig_bland)
{
  constexpr double kPivotEps = 1e-9;
  constexpr double kCostEps  = 1e-10;

  std::size_t const n = lp.variables();
  if (lp.rows.size() != lp.senses.size() || lp.rows.size() != lp.rhs.size())
  {
    throw std::invalid_argument("simplex: rows, senses and rhs differ in length");
  }
  if (!lp.upper.empty() && lp.upper.size() != n)
  {
    throw std::invalid_argument("simplex: upper bounds do not match the variable count");
  }
  for (auto const &r : lp.rows)
  {
    if (r.size() != n)
    {
      throw std::invalid_argument("simplex: constraint row length " + std::to_string(r.size()) +
                                  " != " + std::to_string(n) + " variables");
    }
  }

  // Gather constraints, with finite upper bounds as extra <= rows.
  struct Row
  {
    std::vector<double> const *coeffs;
    std::size_t                unit;  // index of a single unit coefficient when coeffs == nullptr
    Sense                      sense;
    double                     b;
    double                     sign;
  };
  std::vector<Row> cons;
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
  {
    cons.push_back({&lp.rows[i], 0, lp.senses[i], lp.rhs[i], 1.0});
  }
  for (std::size_t j = 0; j < lp.upper.size(); ++j)
  {
    if (std::isfinite(lp.upper[j]))
    {
      cons.push_back({nullptr, j, Sense::le, lp.upper[j], 1.0});
    }
  }
  std::size_t n_slack = 0;
  std::size_t n_art   = 0;
  for (auto &c : cons)
  {
    if (c.b < 0.0)
    {
      c.sign  = -1.0;
      c.b     = -c.b;
      c.sense = c.sense == Sense::le ? Sense::ge : (c.sense == Sense::ge ? Sense::le : Sense::eq);
    }
    if (c.sense != Sense::eq)
      ++n_slack;
    if (c.sense != Sense::le)
      ++n_art;
  }

  std::size_t const m      = cons.size();
  std::size_t const s0     = n;
  std::size_t const a0     = n + n_slack;
  std::size_t const ncols  = n + n_slack + n_art;
  detail::Tableau   t(m, ncols);
  std::vector<std::size_t> basis(m);

  std::size_t next_slack = s0;
  std::size_t next_art   = a0;
  for (std::size_t i = 0; i < m; ++i)
  {
    auto const &c = cons[i];
    if (c.coeffs)
    {
      for (std::size_t j = 0; j < n; ++j)
        t.at(i, j) = c.sign * (*c.coeffs)[j];
    }
    else
    {
      t.at(i, c.unit) = c.sign;
    }
    t.rhs(i) = c.b;
    if (c.sense == Sense::le)
    {
      t.at(i, next_slack) = 1.0;
      basis[i]            = next_slack++;
    }
    else
    {
      if (c.sense == Sense::ge)
      {
        t.at(i, next_slack++) = -1.0;
      }
      t.at(i, next_art) = 1.0;
      basis[i]          = next_art++;
    }
  }

  LpResult res;

  // Runs simplex iterations on the current cost row over columns [0, limit).
  auto iterate = [&](std::size_t limit) -> bool {
    constexpr std::size_t kStall      = 32;
    std::size_t           degenerate  = 0;
    for (;;)
    {
      bool const  bland = rule == PivotRule::bland || degenerate >= kStall;
      std::size_t enter = limit;
      double      most  = -kCostEps;
      for (std::size_t j = 0; j < limit; ++j)
      {
        if (t.cost(j) < most)
        {
          enter = j;
          if (bland)
            break;
          most = t.cost(j);
        }
      }
      if (enter == limit)
        return true;
      double colmax = 0.0;
      for (std::size_t i = 0; i < m; ++i)
        colmax = std::max(colmax, std::abs(t.at(i, enter)));
      double const pivot_floor = std::max(kPivotEps, 1e-9 * colmax);
      std::size_t  leave       = m;
      double       best        = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m; ++i)
      {
        double const a = t.at(i, enter);
        if (a > pivot_floor)
        {
          double const ratio = t.rhs(i) / a;
          double const tie   = 1e-14 * std::max(1.0, std::abs(ratio));
          if (leave == m || ratio < best - tie)
          {
            best  = ratio;
            leave = i;
          }
          else if (ratio <= best + tie && basis[i] < basis[leave])
          {
            leave = i;
          }
        }
      }
      if (leave == m)
        return false;
      degenerate = best <= 1e-12 ? degenerate + 1 : 0;
      t.pivot(leave, enter);
      basis[leave] = enter;
      ++res.pivots;
      for (std::size_t i = 0; i < m; ++i)
        if (t.rhs(i) < 0.0 && t.rhs(i) > -1e-11)
          t.rhs(i) = 0.0;
    }
  };

  // Phase 1: minimize the sum of artificials.
  if (n_art > 0)
  {
    for (std::size_t j = 0; j <= ncols; ++j)
      t.cost(j) = 0.0;
    for (std::size_t i = 0; i < m; ++i)
    {
      if (basis[i] >= a0)
      {
        for (std::size_t j = 0; j < a0; ++j)
          t.cost(j) -= t.at(i, j);
        t.cost(ncols) -= t.rhs(i);
      }
    }
    iterate(ncols);
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      if (basis[i] >= a0)
        infeas += t.rhs(i);
    double bscale = 1.0;
    for (auto const &c : cons)
      bscale = std::max(bscale, std::abs(c.b));
    if (infeas > 1e-9 * bscale)
    {
      res.status = LpStatus::infeasible;
      return res;
    }
    // Drive remaining (zero-level) artificials out of the basis.
    for (std::size_t i = 0; i < m; ++i)
    {
      if (basis[i] < a0)
        continue;
      std::size_t col = a0;
      double      big = kPivotEps;
      for (std::size_t j = 0; j < a0; ++j)
      {
        if (std::abs(t.at(i, j)) > big)
        {
          big = std::abs(t.at(i, j));
          col = j;
        }
      }
      if (col < a0)
      {
        t.pivot(i, col);
        basis[i] = col;
        ++res.pivots;
      }
      // Otherwise the row is redundant; its artificial stays basic at zero and
      // its column is excluded from phase 2.
    }
  }

  // Phase 2.
  for (std::size_t j = 0; j <= ncols; ++j)
    t.cost(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    t.cost(j) = -lp.objective[j];
  for (std::size_t i = 0; i < m; ++i)
  {
    std::size_t const b = basis[i];
    if (b < n && lp.objective[b] != 0.0)
    {
      double const cb = lp.objective[b];
      for (std::size_t j = 0; j <= ncols; ++j)
        t.cost(j) += cb * t.at(i, j);
    }
  }
  if (!iterate(a0))
  {
    res.status = LpStatus::unbounded;
    return res;
  }

  res.status = LpStatus::optimal;
  res.x.assign(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
  {
    if (basis[i] < n)
      res.x[basis[i]] = std::max(0.0, t.rhs(i));
  }
  for (std::size_t j = 0; j < n; ++j)
    res.objective += lp.objective[j] * res.x[j];

  for (std::size_t i = 0; i < lp.rows.size(); ++i)
  {
    double lhs = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      lhs += lp.rows[i][j] * res.x[j];
    double const d = lhs - lp.rhs[i];
    double       v = 0.0;
    if (lp.senses[i] == Sense::le)
      v = std::max(0.0, d);
    else if (lp.senses[i] == Sense::ge)
      v = std::max(0.0, -d);
    else
      v = std::abs(d);
    res.max_residual = std::max(res.max_residual, v);
  }
  for (std::size_t j = 0; j < lp.upper.size(); ++j)
    res.max_residual = std::max(res.max_residual, res.x[j] - lp.upper[j]);
  return res;
}

}  // namespace anonprice
