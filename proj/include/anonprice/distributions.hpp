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

#include "anonprice/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace anonprice {

struct Atom
{
  double value;
  double mass;
};

struct CdfKnot
{
  double x;
  double cdf;
};

/**
 * A bounded probability law on [lo, hi] with lo >= 0, used both for values
 * and for budgets.
 *
 * Conventions:
 *  - cdf(x) is right-continuous, cdf_left(x) = F(x-).
 *  - A buyer whose value equals the posted price accepts, so the sale
 *    probability at price p is 1 - F(p-).
 *  - inverse_demand(q) = sup{ v : 1 - F(v-) >= q }, clamped to hi at q = 0.
 *
 * Instances are immutable after construction.
 */
class Distribution
{
public:
  struct Uniform
  {
    double a;
    double b;
  };
  struct EqualRevenue
  {
    double h;
  };
  /// Exponential law censored at `hi`: the tail mass beyond hi sits on an atom at hi.
  struct Exponential
  {
    double rate;
    double hi;
  };
  struct PointMass
  {
    double v;
  };
  struct Discrete
  {
    std::vector<double> values;  // strictly increasing
    std::vector<double> probs;   // positive
  };
  struct PiecewiseLinearCdf
  {
    std::vector<CdfKnot> knots;  // F(knots[0].x) is the atom at the lower end
  };

  using Kind = std::variant<Uniform, EqualRevenue, Exponential, PointMass, Discrete,
                            PiecewiseLinearCdf>;

  static Distribution uniform(double a, double b)
  {
    if (!std::isfinite(a) || !std::isfinite(b) || a < 0.0 || !(b > a))
    {
      throw std::invalid_argument("uniform: require 0 <= a < b");
    }
    return Distribution{Uniform{a, b}};
  }

  static Distribution equal_revenue(double h)
  {
    if (!std::isfinite(h) || !(h > 1.0))
    {
      throw std::invalid_argument("equal-revenue: require h > 1");
    }
    return Distribution{EqualRevenue{h}};
  }

  /// Exponential with the given rate, censored at hi (default 20 / rate).
  static Distribution exponential(double rate, double hi = 0.0)
  {
    if (!std::isfinite(rate) || !(rate > 0.0))
    {
      throw std::invalid_argument("exponential: require rate > 0");
    }
    if (hi == 0.0)
    {
      hi = 20.0 / rate;
    }
    if (!std::isfinite(hi) || !(hi > 0.0))
    {
      throw std::invalid_argument("exponential: require hi > 0");
    }
    return Distribution{Exponential{rate, hi}};
  }

  static Distribution point_mass(double v)
  {
    if (!std::isfinite(v) || v < 0.0)
    {
      throw std::invalid_argument("point-mass: require finite v >= 0");
    }
    return Distribution{PointMass{v}};
  }

  static Distribution discrete(std::vector<double> values, std::vector<double> probs)
  {
    if (values.empty() || values.size() != probs.size())
    {
      throw std::invalid_argument("discrete: values and probs must be non-empty and equal length");
    }
    std::vector<std::pair<double, double>> pts;
    double                                 total = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i)
    {
      if (!std::isfinite(values[i]) || values[i] < 0.0)
      {
        throw std::invalid_argument("discrete: values must be finite and >= 0");
      }
      if (!std::isfinite(probs[i]) || probs[i] < 0.0)
      {
        throw std::invalid_argument("discrete: probabilities must be finite and >= 0");
      }
      total += probs[i];
      if (probs[i] > 0.0)
      {
        pts.emplace_back(values[i], probs[i]);
      }
    }
    if (std::abs(total - 1.0) > 1e-12)
    {
      throw std::invalid_argument("discrete: probabilities must sum to 1");
    }
    std::sort(pts.begin(), pts.end());
    Discrete d;
    for (auto const &[v, p] : pts)
    {
      if (!d.values.empty() && d.values.back() == v)
      {
        d.probs.back() += p;
      }
      else
      {
        d.values.push_back(v);
        d.probs.push_back(p);
      }
    }
    return Distribution{std::move(d)};
  }

  static Distribution piecewise_linear_cdf(std::vector<CdfKnot> knots)
  {
    if (knots.empty())
    {
      throw std::invalid_argument("piecewise-linear-cdf: need at least one knot");
    }
    for (std::size_t i = 0; i < knots.size(); ++i)
    {
      auto const &k = knots[i];
      if (!std::isfinite(k.x) || k.x < 0.0 || !(k.cdf >= 0.0 && k.cdf <= 1.0 + 1e-12))
      {
        throw std::invalid_argument("piecewise-linear-cdf: knots need x >= 0 and cdf in [0,1]");
      }
      if (i > 0 && (!(k.x > knots[i - 1].x) || k.cdf < knots[i - 1].cdf))
      {
        throw std::invalid_argument(
            "piecewise-linear-cdf: x must increase strictly and cdf must not decrease");
      }
    }
    if (knots.front().cdf != 0.0)
    {
      throw std::invalid_argument("piecewise-linear-cdf: first knot must have cdf 0");
    }
    if (std::abs(knots.back().cdf - 1.0) > 1e-12)
    {
      throw std::invalid_argument("piecewise-linear-cdf: last knot must have cdf 1");
    }
    knots.back().cdf = 1.0;
    return Distribution{PiecewiseLinearCdf{std::move(knots)}};
  }

  Kind const &kind() const
  {
    return kind_;
  }

  std::string kind_name() const
  {
    return std::visit(
        [](auto const &k) -> std::string {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
            return "uniform";
          else if constexpr (std::is_same_v<T, EqualRevenue>)
            return "equal-revenue";
          else if constexpr (std::is_same_v<T, Exponential>)
            return "exponential";
          else if constexpr (std::is_same_v<T, PointMass>)
            return "point-mass";
          else if constexpr (std::is_same_v<T, Discrete>)
            return "discrete";
          else
            return "piecewise-linear-cdf";
        },
        kind_);
  }

  std::string describe() const
  {
    std::ostringstream os;
    os.precision(10);
    std::visit(
        [&](auto const &k) {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
            os << "uniform(" << k.a << "," << k.b << ")";
          else if constexpr (std::is_same_v<T, EqualRevenue>)
            os << "equal-revenue(" << k.h << ")";
          else if constexpr (std::is_same_v<T, Exponential>)
            os << "exponential(" << k.rate << ",hi=" << k.hi << ")";
          else if constexpr (std::is_same_v<T, PointMass>)
            os << "point-mass(" << k.v << ")";
          else if constexpr (std::is_same_v<T, Discrete>)
            os << "discrete[" << k.values.size() << "]";
          else
            os << "piecewise-linear-cdf[" << k.knots.size() << "]";
        },
        kind_);
    return os.str();
  }

  double lo() const
  {
    return std::visit(
        [](auto const &k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
            return k.a;
          else if constexpr (std::is_same_v<T, EqualRevenue>)
            return 1.0;
          else if constexpr (std::is_same_v<T, Exponential>)
            return 0.0;
          else if constexpr (std::is_same_v<T, PointMass>)
            return k.v;
          else if constexpr (std::is_same_v<T, Discrete>)
            return k.values.front();
          else
            return k.knots.front().x;
        },
        kind_);
  }

  double hi() const
  {
    return std::visit(
        [](auto const &k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
            return k.b;
          else if constexpr (std::is_same_v<T, EqualRevenue>)
            return k.h;
          else if constexpr (std::is_same_v<T, Exponential>)
            return k.hi;
          else if constexpr (std::is_same_v<T, PointMass>)
            return k.v;
          else if constexpr (std::is_same_v<T, Discrete>)
            return k.values.back();
          else
            return k.knots.back().x;
        },
        kind_);
  }

  /// F(x), right-continuous.
  double cdf(double x) const
  {
    return std::visit(
        [x](auto const &k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
          {
            return std::clamp((x - k.a) / (k.b - k.a), 0.0, 1.0);
          }
          else if constexpr (std::is_same_v<T, EqualRevenue>)
          {
            if (x < 1.0)
              return 0.0;
            return x < k.h ? 1.0 - 1.0 / x : 1.0;
          }
          else if constexpr (std::is_same_v<T, Exponential>)
          {
            if (x < 0.0)
              return 0.0;
            return x < k.hi ? -std::expm1(-k.rate * x) : 1.0;
          }
          else if constexpr (std::is_same_v<T, PointMass>)
          {
            return x < k.v ? 0.0 : 1.0;
          }
          else if constexpr (std::is_same_v<T, Discrete>)
          {
            double acc = 0.0;
            for (std::size_t i = 0; i < k.values.size() && k.values[i] <= x; ++i)
              acc += k.probs[i];
            return std::min(acc, 1.0);
          }
          else
          {
            return pwl_eval(k.knots, x, false);
          }
        },
        kind_);
  }

  /// F(x-), left limit of the CDF.
  double cdf_left(double x) const
  {
    return std::visit(
        [x](auto const &k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
          {
            return std::clamp((x - k.a) / (k.b - k.a), 0.0, 1.0);
          }
          else if constexpr (std::is_same_v<T, EqualRevenue>)
          {
            if (x <= 1.0)
              return 0.0;
            return x <= k.h ? 1.0 - 1.0 / x : 1.0;
          }
          else if constexpr (std::is_same_v<T, Exponential>)
          {
            if (x <= 0.0)
              return 0.0;
            return x <= k.hi ? -std::expm1(-k.rate * x) : 1.0;
          }
          else if constexpr (std::is_same_v<T, PointMass>)
          {
            return x <= k.v ? 0.0 : 1.0;
          }
          else if constexpr (std::is_same_v<T, Discrete>)
          {
            double acc = 0.0;
            for (std::size_t i = 0; i < k.values.size() && k.values[i] < x; ++i)
              acc += k.probs[i];
            return std::min(acc, 1.0);
          }
          else
          {
            return pwl_eval(k.knots, x, true);
          }
        },
        kind_);
  }

  /// Probability that a buyer accepts price p (ties accept): 1 - F(p-).
  double sale_probability(double p) const
  {
    return 1.0 - cdf_left(p);
  }

  /// Density of the continuous part (atoms excluded).
  double density(double x) const
  {
    return std::visit(
        [x](auto const &k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
          {
            return (x >= k.a && x < k.b) ? 1.0 / (k.b - k.a) : 0.0;
          }
          else if constexpr (std::is_same_v<T, EqualRevenue>)
          {
            return (x >= 1.0 && x < k.h) ? 1.0 / (x * x) : 0.0;
          }
          else if constexpr (std::is_same_v<T, Exponential>)
          {
            return (x >= 0.0 && x < k.hi) ? k.rate * std::exp(-k.rate * x) : 0.0;
          }
          else if constexpr (std::is_same_v<T, PointMass> || std::is_same_v<T, Discrete>)
          {
            return 0.0;
          }
          else
          {
            auto const &kn = k.knots;
            for (std::size_t i = 0; i + 1 < kn.size(); ++i)
            {
              if (x >= kn[i].x && x < kn[i + 1].x)
                return (kn[i + 1].cdf - kn[i].cdf) / (kn[i + 1].x - kn[i].x);
            }
            return 0.0;
          }
        },
        kind_);
  }

  std::vector<Atom> atoms() const
  {
    return std::visit(
        [](auto const &k) -> std::vector<Atom> {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
          {
            return {};
          }
          else if constexpr (std::is_same_v<T, EqualRevenue>)
          {
            return {{k.h, 1.0 / k.h}};
          }
          else if constexpr (std::is_same_v<T, Exponential>)
          {
            double const m = std::exp(-k.rate * k.hi);
            if (m > 0.0)
              return {{k.hi, m}};
            return {};
          }
          else if constexpr (std::is_same_v<T, PointMass>)
          {
            return {{k.v, 1.0}};
          }
          else if constexpr (std::is_same_v<T, Discrete>)
          {
            std::vector<Atom> out;
            for (std::size_t i = 0; i < k.values.size(); ++i)
              out.push_back({k.values[i], k.probs[i]});
            return out;
          }
          else
          {
            if (k.knots.front().cdf > 0.0)
              return {{k.knots.front().x, k.knots.front().cdf}};
            return {};
          }
        },
        kind_);
  }

  double continuous_mass() const
  {
    double m = 1.0;
    for (auto const &a : atoms())
    {
      m -= a.mass;
    }
    return std::max(0.0, m);
  }

  /// Points where the CDF or the density is non-smooth.
  std::vector<double> breakpoints() const
  {
    std::vector<double> out{lo(), hi()};
    for (auto const &a : atoms())
    {
      out.push_back(a.value);
    }
    if (auto const *pw = std::get_if<PiecewiseLinearCdf>(&kind_))
    {
      for (auto const &k : pw->knots)
      {
        out.push_back(k.x);
      }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  /// V(q) = sup{ v : 1 - F(v-) >= q }.
  double inverse_demand(double q) const
  {
    q = std::clamp(q, 0.0, 1.0);
    return std::visit(
        [q](auto const &k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
          {
            return k.b - q * (k.b - k.a);
          }
          else if constexpr (std::is_same_v<T, EqualRevenue>)
          {
            return q <= 1.0 / k.h ? k.h : 1.0 / q;
          }
          else if constexpr (std::is_same_v<T, Exponential>)
          {
            if (q <= std::exp(-k.rate * k.hi))
              return k.hi;
            return std::min(k.hi, -std::log(q) / k.rate);
          }
          else if constexpr (std::is_same_v<T, PointMass>)
          {
            return k.v;
          }
          else if constexpr (std::is_same_v<T, Discrete>)
          {
            // S_i = mass at values >= values[i]; pick the largest i with S_i >= q.
            double tail = 0.0;
            for (std::size_t i = k.values.size(); i-- > 0;)
            {
              tail += k.probs[i];
              if (tail >= q - 1e-15)
                return k.values[i];
            }
            return k.values.front();
          }
          else
          {
            // Largest v with F(v-) <= 1 - q.
            auto const  &kn     = k.knots;
            double const target = 1.0 - q;
            if (target >= 1.0)
              return kn.back().x;
            if (kn.front().cdf > target)
              return kn.front().x;
            std::size_t idx = 0;
            for (std::size_t i = 0; i < kn.size(); ++i)
            {
              if (kn[i].cdf <= target)
                idx = i;
            }
            if (idx + 1 >= kn.size())
              return kn.back().x;
            auto const &a = kn[idx];
            auto const &b = kn[idx + 1];
            return a.x + (target - a.cdf) / (b.cdf - a.cdf) * (b.x - a.x);
          }
        },
        kind_);
  }

  /// E[min(X, p)] = integral of (1 - F(t)) over [0, p]. Closed form where
  /// available; adaptive Simpson otherwise.
  double expected_min(double p) const
  {
    if (p <= 0.0)
    {
      return 0.0;
    }
    return std::visit(
        [this, p](auto const &k) -> double {
          using T = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<T, Uniform>)
          {
            if (p <= k.a)
              return p;
            double const t = std::min(p, k.b) - k.a;
            return k.a + t - t * t / (2.0 * (k.b - k.a));
          }
          else if constexpr (std::is_same_v<T, EqualRevenue>)
          {
            if (p <= 1.0)
              return p;
            return 1.0 + std::log(std::min(p, k.h));
          }
          else if constexpr (std::is_same_v<T, Exponential>)
          {
            return -std::expm1(-k.rate * std::min(p, k.hi)) / k.rate;
          }
          else if constexpr (std::is_same_v<T, PointMass>)
          {
            return std::min(p, k.v);
          }
          else if constexpr (std::is_same_v<T, Discrete>)
          {
            double acc = 0.0;
            for (std::size_t i = 0; i < k.values.size(); ++i)
              acc += k.probs[i] * std::min(k.values[i], p);
            return acc;
          }
          else
          {
            return survival_integral(p);
          }
        },
        kind_);
  }

  /// Quadrature route for E[min(X, p)], independent of the closed forms.
  double survival_integral(double p, double tol = 1e-12) const
  {
    double const top = std::min(p, hi());
    double       acc = std::min(p, lo());
    auto         br  = breakpoints();
    acc += numerics::integrate_piecewise([this](double t) { return 1.0 - cdf(t); }, lo(), top,
                                         br, tol);
    return acc;
  }

  double mean() const
  {
    return expected_min(hi());
  }

  /// E[fn(X)]: quadrature over the continuous part plus the atoms.
  template <class Func>
  double expectation(Func const &fn, std::vector<double> extra_breaks = {}, double tol = 1e-11) const
  {
    double acc = 0.0;
    for (auto const &a : atoms())
    {
      acc += a.mass * fn(a.value);
    }
    if (continuous_mass() > 0.0)
    {
      auto br = breakpoints();
      br.insert(br.end(), extra_breaks.begin(), extra_breaks.end());
      acc += numerics::integrate_piecewise([&](double x) { return fn(x) * density(x); }, lo(),
                                           hi(), br, tol);
    }
    return acc;
  }

  /// CDF of the continuous part only (atoms removed); runs from 0 to continuous_mass().
  double continuous_cdf(double x) const
  {
    double c = cdf(x);
    for (auto const &a : atoms())
    {
      if (a.value <= x)
      {
        c -= a.mass;
      }
    }
    return std::max(0.0, c);
  }

private:
  explicit Distribution(Kind k)
    : kind_(std::move(k))
  {}

  static double pwl_eval(std::vector<CdfKnot> const &kn, double x, bool left)
  {
    if (left ? x <= kn.front().x : x < kn.front().x)
    {
      return 0.0;
    }
    if (left ? x > kn.back().x : x >= kn.back().x)
    {
      return 1.0;
    }
    for (std::size_t i = 0; i + 1 < kn.size(); ++i)
    {
      if (x <= kn[i + 1].x)
      {
        double const t = (x - kn[i].x) / (kn[i + 1].x - kn[i].x);
        return kn[i].cdf + t * (kn[i + 1].cdf - kn[i].cdf);
      }
    }
    return 1.0;
  }

  Kind kind_;
};

using ValueDistribution  = Distribution;
using BudgetDistribution = Distribution;

// ---------------------------------------------------------------------------
// Diagnostics

struct RegularityReport
{
  bool   regular                = true;
  double max_second_difference  = 0.0;  // largest positive second difference of q V(q)
  double scale                  = 0.0;  // max of q V(q) on the grid
  double relative               = 0.0;  // max_second_difference / scale
};

/// Samples q V(q) on grid_size + 1 equally spaced quantiles and reports the
/// largest convex kink. Regular iff the relative kink is at most 1e-8.
inline RegularityReport regularity_report(Distribution const &d, std::size_t grid_size = 1024)
{
  if (grid_size < 16)
  {
    throw std::invalid_argument("regularity_report: grid_size must be >= 16");
  }
  RegularityReport rep;
  if (d.lo() == d.hi())
  {
    return rep;
  }
  std::vector<double> rev(grid_size + 1);
  for (std::size_t k = 0; k <= grid_size; ++k)
  {
    double const q = static_cast<double>(k) / static_cast<double>(grid_size);
    rev[k]         = q * d.inverse_demand(q);
    rep.scale      = std::max(rep.scale, rev[k]);
  }
  for (std::size_t k = 1; k < grid_size; ++k)
  {
    rep.max_second_difference =
        std::max(rep.max_second_difference, rev[k - 1] - 2.0 * rev[k] + rev[k + 1]);
  }
  rep.relative = rep.scale > 0.0 ? rep.max_second_difference / rep.scale : 0.0;
  rep.regular  = rep.relative <= 1e-8;
  return rep;
}

enum class MhrStatus
{
  mhr,
  not_mhr,
  indeterminate,
};

inline char const *to_string(MhrStatus s)
{
  switch (s)
  {
  case MhrStatus::mhr:
    return "mhr";
  case MhrStatus::not_mhr:
    return "not-mhr";
  case MhrStatus::indeterminate:
    return "indeterminate";
  }
  return "?";
}

struct MhrReport
{
  MhrStatus   status              = MhrStatus::mhr;
  double      max_violation       = 0.0;  // largest drop of the hazard rate between grid points
  std::size_t indeterminate_points = 0;   // grid points with zero density inside the support
};

/// Samples the hazard rate g / (1 - G) at grid-cell midpoints of [lo, hi).
/// A degenerate support counts as MHR.
inline MhrReport mhr_report(Distribution const &d, std::size_t grid_size = 1024)
{
  MhrReport rep;
  double const lo = d.lo();
  double const hi = d.hi();
  if (lo == hi)
  {
    return rep;
  }
  double prev       = -1.0;
  bool   have_prev  = false;
  bool   violated   = false;
  for (std::size_t k = 0; k < grid_size; ++k)
  {
    double const w    = lo + (static_cast<double>(k) + 0.5) / static_cast<double>(grid_size) * (hi - lo);
    double const surv = 1.0 - d.cdf(w);
    if (!(surv > 0.0))
    {
      continue;
    }
    double const g = d.density(w);
    if (!(g > 0.0))
    {
      ++rep.indeterminate_points;
      continue;
    }
    double const hz = g / surv;
    if (have_prev)
    {
      double const drop = prev - hz;
      if (drop > 1e-8 * std::max(1.0, std::abs(prev)))
      {
        violated = true;
      }
      rep.max_violation = std::max(rep.max_violation, drop);
    }
    prev      = hz;
    have_prev = true;
  }
  rep.max_violation = std::max(0.0, rep.max_violation);
  if (violated)
  {
    rep.status = MhrStatus::not_mhr;
  }
  else if (rep.indeterminate_points > 0)
  {
    rep.status = MhrStatus::indeterminate;
  }
  return rep;
}

/// Pr[w >= E[w]].
inline double exceed_mean_probability(Distribution const &d)
{
  return 1.0 - d.cdf_left(d.mean());
}

/**
 * Quantile-midpoint discretization: the continuous part is split into
 * max(1, n - #atoms) pieces of equal mass, each represented by the value at
 * the middle of its quantile range; every atom is kept as is.
 */
inline Distribution discretize(Distribution const &d, std::size_t n)
{
  if (n < 2)
  {
    throw std::invalid_argument("discretize: n must be >= 2");
  }
  auto const   atoms = d.atoms();
  double const cont  = d.continuous_mass();

  std::vector<double> values;
  std::vector<double> probs;
  for (auto const &a : atoms)
  {
    values.push_back(a.value);
    probs.push_back(a.mass);
  }
  if (cont > 1e-14)
  {
    std::size_t const pieces = std::max<std::size_t>(1, n > atoms.size() ? n - atoms.size() : 1);
    double const      lo     = d.lo();
    double const      hi     = d.hi();
    for (std::size_t j = 0; j < pieces; ++j)
    {
      double const target =
          cont * (static_cast<double>(j) + 0.5) / static_cast<double>(pieces);
      double const x = numerics::bisect_last_true(
          [&](double t) { return d.continuous_cdf(t) < target; }, lo, hi, 1e-15);
      values.push_back(x);
      probs.push_back(cont / static_cast<double>(pieces));
    }
  }
  double const total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (auto &p : probs)
  {
    p /= total;
  }
  return Distribution::discrete(std::move(values), std::move(probs));
}

}  // namespace anonprice
