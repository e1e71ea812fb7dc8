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

// Independent reference computations shared by the unit and acceptance tests.

#pragma once

#include "anonprice/curves.hpp"
#include "anonprice/oracle.hpp"
#include "anonprice/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace anonprice::testing {

// Solves A x = b by Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> A,
                                                       std::vector<double>              b)
{
  std::size_t const n = b.size();
  for (std::size_t c = 0; c < n; ++c)
  {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(A[r][c]) > std::abs(A[piv][c]))
        piv = r;
    if (std::abs(A[piv][c]) < 1e-12)
      return std::nullopt;
    std::swap(A[c], A[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = 0; r < n; ++r)
    {
      if (r == c)
        continue;
      double const f = A[r][c] / A[c][c];
      if (f == 0.0)
        continue;
      for (std::size_t k = c; k < n; ++k)
        A[r][k] -= f * A[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
    x[i] = b[i] / A[i][i];
  return x;
}

struct VertexResult
{
  bool                feasible = false;
  double              objective = 0.0;
  std::vector<double> x;
};

/**
 * Maximizes c.x over {rows, x >= 0} by trying every basic solution: each
 * choice of n tight constraints among the rows and the bounds x_i >= 0,
 * keeping the feasible ones. Equality rows are always tight. Exponential,
 * only for tiny problems with a bounded feasible region.
 */
inline VertexResult vertex_enumeration(LpProblem const &lp, double tol = 1e-9)
{
  std::size_t const n = lp.variables();
  std::vector<std::vector<double>> cons;
  std::vector<double>              rhs;
  std::vector<std::size_t>         optional_idx;
  std::vector<std::size_t>         forced_idx;
  for (std::size_t r = 0; r < lp.rows.size(); ++r)
  {
    cons.push_back(lp.rows[r]);
    rhs.push_back(lp.rhs[r]);
    (lp.senses[r] == Sense::eq ? forced_idx : optional_idx).push_back(cons.size() - 1);
  }
  for (std::size_t i = 0; i < n; ++i)
  {
    std::vector<double> e(n, 0.0);
    e[i] = 1.0;
    cons.push_back(e);
    rhs.push_back(0.0);
    optional_idx.push_back(cons.size() - 1);
  }

  auto feasible = [&](std::vector<double> const &x) {
    for (double v : x)
      if (v < -tol)
        return false;
    for (std::size_t r = 0; r < lp.rows.size(); ++r)
    {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i)
        s += lp.rows[r][i] * x[i];
      double const scale = 1.0 + std::abs(lp.rhs[r]);
      if (lp.senses[r] == Sense::le && s > lp.rhs[r] + tol * scale)
        return false;
      if (lp.senses[r] == Sense::ge && s < lp.rhs[r] - tol * scale)
        return false;
      if (lp.senses[r] == Sense::eq && std::abs(s - lp.rhs[r]) > tol * scale)
        return false;
    }
    return true;
  };

  VertexResult best;
  std::size_t const need = n - forced_idx.size();
  std::vector<bool> pick(optional_idx.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(need), true);
  do
  {
    std::vector<std::vector<double>> A;
    std::vector<double>              b;
    for (auto f : forced_idx)
    {
      A.push_back(cons[f]);
      b.push_back(rhs[f]);
    }
    for (std::size_t k = 0; k < optional_idx.size(); ++k)
      if (pick[k])
      {
        A.push_back(cons[optional_idx[k]]);
        b.push_back(rhs[optional_idx[k]]);
      }
    auto x = solve_square(A, b);
    if (!x || !feasible(*x))
      continue;
    double obj = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      obj += lp.objective[i] * (*x)[i];
    if (!best.feasible || obj > best.objective)
    {
      best.feasible  = true;
      best.objective = obj;
      best.x         = *x;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

/// All private-budget 2x2 type spaces on a small parameter lattice.
inline std::vector<DiscreteTypeSpace> small_type_spaces()
{
  std::vector<DiscreteTypeSpace> out;
  std::vector<std::vector<double>> values{{0.5, 1.0}, {1.0, 2.0}, {1.0, 4.0}};
  std::vector<double>              f1{0.25, 0.5, 0.8};
  std::vector<std::vector<double>> budgets{{0.3, 1.5}, {1.0, 3.0}, {0.6, numerics::kInf}};
  std::vector<double>              g1{0.4, 0.7};
  for (auto const &v : values)
    for (double f : f1)
      for (auto const &w : budgets)
        for (double g : g1)
          out.push_back(DiscreteTypeSpace::make(SpaceModel::private_budget, v, {f, 1.0 - f}, w,
                                                {g, 1.0 - g}));
  return out;
}

/// Largest second difference of `c` on an n-grid, relative to max P.
inline double max_relative_convexity(RevenueCurve const &c, std::size_t n)
{
  double worst = 0.0;
  double scale = c.max_value();
  double const h = 1.0 / static_cast<double>(n);
  for (std::size_t k = 1; k < n; ++k)
  {
    double const q = static_cast<double>(k) * h;
    worst = std::max(worst, c(q - h) - 2.0 * c(q) + c(q + h));
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

/// Concave piecewise-linear curve through the origin with 1 to 6 segments.
inline RevenueCurve random_concave_curve(std::mt19937_64 &rng)
{
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::size_t const       segs = 1 + rng() % 6;
  std::vector<double>     qs;
  for (std::size_t i = 0; i + 1 < segs; ++i)
    qs.push_back(U(rng));
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  qs.erase(std::remove_if(qs.begin(), qs.end(), [](double q) { return q < 1e-6 || q > 1.0 - 1e-6; }),
           qs.end());
  qs.push_back(1.0);
  std::vector<double> slopes;
  for (std::size_t i = 0; i < qs.size(); ++i)
    slopes.push_back(4.0 * U(rng) - 1.0);
  std::sort(slopes.begin(), slopes.end(), std::greater<>());
  slopes[0] = std::abs(slopes[0]) + 0.05;

  double rise = 0.0, fall = 0.0, prev = 0.0;
  for (std::size_t i = 0; i < qs.size(); ++i)
  {
    (slopes[i] > 0.0 ? rise : fall) += slopes[i] * (qs[i] - prev);
    prev = qs[i];
  }
  double const shrink = rise + fall < 0.0 ? rise / -fall : 1.0;
  std::vector<CurvePoint> kn{{0.0, 0.0}};
  prev = 0.0;
  for (std::size_t i = 0; i < qs.size(); ++i)
  {
    double const s = slopes[i] > 0.0 ? slopes[i] : slopes[i] * shrink;
    kn.push_back({qs[i], std::max(0.0, kn.back().value + s * (qs[i] - prev))});
    prev = qs[i];
  }
  return RevenueCurve::synthetic(kn, "R");
}

}  // namespace anonprice::testing
