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

#include "anonprice/distributions.hpp"
#include "anonprice/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace anonprice {

struct CurvePoint
{
  double q;
  double value;
};

class OfferCurve;

/**
 * Piecewise-linear function on quantile space [0, 1].
 *
 * Knots satisfy 0 = q_0 < q_1 < ... < q_K = 1. A curve built from an offer
 * curve keeps a handle to it so that price-to-quantile queries can be
 * answered by the generating mechanism instead of the interpolant.
 */
class RevenueCurve
{
public:
  RevenueCurve() = default;

  explicit RevenueCurve(std::vector<CurvePoint> knots, std::string name = "R")
    : knots_(std::move(knots))
    , name_(std::move(name))
  {
    validate();
    compute_concavity();
  }

  /// Validated curve from user-supplied knots (first knot at q = 0, last at q = 1).
  static RevenueCurve synthetic(std::vector<CurvePoint> knots, std::string name = "R")
  {
    return RevenueCurve(std::move(knots), std::move(name));
  }

  std::span<CurvePoint const> knots() const
  {
    return knots_;
  }

  std::string const &name() const
  {
    return name_;
  }

  RevenueCurve renamed(std::string name) const
  {
    RevenueCurve c = *this;
    c.name_        = std::move(name);
    return c;
  }

  bool concave() const
  {
    return concave_;
  }

  std::shared_ptr<OfferCurve const> const &offer() const
  {
    return offer_;
  }

  RevenueCurve with_offer(std::shared_ptr<OfferCurve const> offer) const
  {
    RevenueCurve c = *this;
    c.offer_       = std::move(offer);
    return c;
  }

  RevenueCurve without_offer() const
  {
    RevenueCurve c = *this;
    c.offer_.reset();
    return c;
  }

  double operator()(double q) const
  {
    return eval(q);
  }

  /// Linear interpolation; exact at knots.
  double eval(double q) const
  {
    q            = std::clamp(q, 0.0, 1.0);
    std::size_t const k = segment_of(q);
    auto const       &a = knots_[k];
    auto const       &b = knots_[k + 1];
    if (q == a.q)
    {
      return a.value;
    }
    if (q == b.q)
    {
      return b.value;
    }
    return a.value + (q - a.q) / (b.q - a.q) * (b.value - a.value);
  }

  /// Right derivative; the left derivative at q = 1.
  double slope(double q) const
  {
    q                    = std::clamp(q, 0.0, 1.0);
    std::size_t const k  = segment_of(q);
    auto const       &a  = knots_[k];
    auto const       &b  = knots_[k + 1];
    return (b.value - a.value) / (b.q - a.q);
  }

  double max_value() const
  {
    double m = knots_.front().value;
    for (auto const &k : knots_)
    {
      m = std::max(m, k.value);
    }
    return m;
  }

  /// Largest knot quantile attaining the maximum value.
  double argmax_largest() const
  {
    double const m   = max_value();
    double const tol = 1e-12 * std::max(1.0, std::abs(m));
    double       arg = 0.0;
    for (auto const &k : knots_)
    {
      if (k.value >= m - tol)
      {
        arg = k.q;
      }
    }
    return arg;
  }

private:
  void validate() const
  {
    if (knots_.size() < 2)
    {
      throw std::invalid_argument("revenue curve: need at least two knots");
    }
    if (knots_.front().q != 0.0 || knots_.back().q != 1.0)
    {
      throw std::invalid_argument("revenue curve: knots must start at q = 0 and end at q = 1");
    }
    for (std::size_t i = 0; i < knots_.size(); ++i)
    {
      if (!std::isfinite(knots_[i].q) || !std::isfinite(knots_[i].value))
      {
        throw std::invalid_argument("revenue curve: non-finite knot");
      }
      if (i > 0 && !(knots_[i].q > knots_[i - 1].q))
      {
        throw std::invalid_argument("revenue curve: knot quantiles must be strictly increasing");
      }
    }
  }

  // Slopes nonincreasing within 1e-10 relative. A slope increase whose effect
  // on the interpolant stays at round-off level of the knot values is ignored.
  void compute_concavity()
  {
    concave_     = true;
    double scale = 0.0;
    for (auto const &k : knots_)
      scale = std::max(scale, std::abs(k.value));
    double const roundoff = 1e-12 * std::max(1.0, scale);
    for (std::size_t i = 1; i + 1 < knots_.size(); ++i)
    {
      auto const  &a  = knots_[i - 1];
      auto const  &b  = knots_[i];
      auto const  &c  = knots_[i + 1];
      double const s0 = (b.value - a.value) / (b.q - a.q);
      double const s1 = (c.value - b.value) / (c.q - b.q);
      double const rise = s1 - s0;
      if (rise > 1e-10 * std::max(1.0, std::abs(s0)) &&
          rise * std::min(b.q - a.q, c.q - b.q) > roundoff)
      {
        concave_ = false;
        return;
      }
    }
  }

  std::size_t segment_of(double q) const
  {
    auto it = std::upper_bound(knots_.begin(), knots_.end(), q,
                               [](double x, CurvePoint const &k) { return x < k.q; });
    std::size_t idx = static_cast<std::size_t>(it - knots_.begin());
    if (idx == 0)
    {
      return 0;
    }
    return std::min(idx - 1, knots_.size() - 2);
  }

  std::vector<CurvePoint>           knots_{{0.0, 0.0}, {1.0, 0.0}};
  std::string                       name_ = "R";
  bool                              concave_ = true;
  std::shared_ptr<OfferCurve const> offer_;
};

// ---------------------------------------------------------------------------
// Agents

namespace model {

struct Linear
{
  Distribution value;
};

struct PublicBudget
{
  Distribution value;
  double       budget;
};

struct PrivateBudget
{
  Distribution value;
  Distribution budget;
};

struct Capacitated
{
  Distribution value;
  double       capacity;
  double       hbar;
};

/// Carries the price-posting curve P and the ex ante curve R directly.
struct Synthetic
{
  RevenueCurve P;
  RevenueCurve R;
};

}  // namespace model

using AgentModel = std::variant<model::Linear, model::PublicBudget, model::PrivateBudget,
                                model::Capacitated, model::Synthetic>;

class Agent
{
public:
  static Agent linear(std::string id, Distribution value)
  {
    return Agent(std::move(id), model::Linear{std::move(value)});
  }

  static Agent public_budget(std::string id, Distribution value, double budget)
  {
    if (!std::isfinite(budget) || budget < 0.0)
    {
      throw std::invalid_argument("public-budget: budget must be finite and >= 0");
    }
    return Agent(std::move(id), model::PublicBudget{std::move(value), budget});
  }

  static Agent private_budget(std::string id, Distribution value, Distribution budget)
  {
    return Agent(std::move(id), model::PrivateBudget{std::move(value), std::move(budget)});
  }

  /// hbar defaults to the top of the value support.
  static Agent capacitated(std::string id, Distribution value, double capacity,
                           double hbar = numerics::kInf)
  {
    if (!std::isfinite(hbar))
    {
      hbar = value.hi();
    }
    if (!(capacity > 0.0))
    {
      throw std::invalid_argument("capacitated: capacity must be > 0");
    }
    if (capacity > hbar)
    {
      throw std::invalid_argument("capacitated: capacity must not exceed hbar");
    }
    if (hbar < value.hi())
    {
      throw std::invalid_argument("capacitated: hbar must be at least the top of the value support");
    }
    return Agent(std::move(id), model::Capacitated{std::move(value), capacity, hbar});
  }

  static Agent synthetic(std::string id, RevenueCurve P, RevenueCurve R)
  {
    std::vector<double> qs;
    for (auto const &k : P.knots())
      qs.push_back(k.q);
    for (auto const &k : R.knots())
      qs.push_back(k.q);
    for (double q : qs)
    {
      double const p = P(q);
      double const r = R(q);
      if (r < p - 1e-12 * std::max(1.0, std::abs(p)))
      {
        throw std::invalid_argument("synthetic agent: R must dominate P pointwise");
      }
    }
    return Agent(std::move(id), model::Synthetic{P.renamed("P"), R.renamed("R")});
  }

  std::string const &id() const
  {
    return id_;
  }

  AgentModel const &model() const
  {
    return model_;
  }

  std::string model_name() const
  {
    return std::visit(
        [](auto const &m) -> std::string {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, model::Linear>)
            return "linear";
          else if constexpr (std::is_same_v<T, model::PublicBudget>)
            return "public-budget";
          else if constexpr (std::is_same_v<T, model::PrivateBudget>)
            return "private-budget";
          else if constexpr (std::is_same_v<T, model::Capacitated>)
            return "capacitated";
          else
            return "synthetic";
        },
        model_);
  }

  bool is_synthetic() const
  {
    return std::holds_alternative<model::Synthetic>(model_);
  }

  /// Value law, or nullptr for synthetic agents.
  Distribution const *value() const
  {
    return std::visit(
        [](auto const &m) -> Distribution const * {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, model::Synthetic>)
            return nullptr;
          else
            return &m.value;
        },
        model_);
  }

private:
  Agent(std::string id, AgentModel m)
    : id_(std::move(id))
    , model_(std::move(m))
  {}

  std::string id_;
  AgentModel  model_;
};

// ---------------------------------------------------------------------------
// Offer curves

/**
 * Ex ante sale probability as a function of the posted per-unit price.
 * `operator()` applies the accept-at-equality convention, `right_limit`
 * gives q(p+), which differs from q(p) only at atoms.
 */
class OfferCurve
{
public:
  using Eval = std::function<double(double)>;

  OfferCurve(Eval accept, Eval above, std::vector<double> knot_prices, double price_lo,
             double price_hi, std::string source, Eval value_at_quantile = {})
    : accept_(std::move(accept))
    , above_(std::move(above))
    , value_at_quantile_(std::move(value_at_quantile))
    , knot_prices_(std::move(knot_prices))
    , price_lo_(price_lo)
    , price_hi_(price_hi)
    , source_(std::move(source))
  {
    std::sort(knot_prices_.begin(), knot_prices_.end());
    knot_prices_.erase(std::unique(knot_prices_.begin(), knot_prices_.end()), knot_prices_.end());
  }

  double operator()(double p) const
  {
    return std::clamp(accept_(p), 0.0, 1.0);
  }

  double right_limit(double p) const
  {
    return std::clamp(above_(p), 0.0, 1.0);
  }

  double revenue(double p) const
  {
    return p * (*this)(p);
  }

  /// sup_p q(p), attained as p -> 0.
  double max_quantile() const
  {
    return (*this)(0.0);
  }

  std::span<double const> knot_prices() const
  {
    return knot_prices_;
  }

  /// Sweep range [V(1 - 1e-6), V(1e-6)].
  double price_lo() const
  {
    return price_lo_;
  }

  double price_hi() const
  {
    return price_hi_;
  }

  std::string const &source_id() const
  {
    return source_;
  }

  /// Inverse demand V(q) of the underlying value law, if known.
  Eval const &value_at_quantile() const
  {
    return value_at_quantile_;
  }

private:
  Eval                accept_;
  Eval                above_;
  Eval                value_at_quantile_;
  std::vector<double> knot_prices_;
  double              price_lo_;
  double              price_hi_;
  std::string         source_;
};

/// Builds q(p) for the agent's utility model. Synthetic agents have none.
inline OfferCurve offer_curve(Agent const &agent)
{
  return std::visit(
      [&agent](auto const &m) -> OfferCurve {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, model::Synthetic>)
        {
          throw std::invalid_argument("no offer curve: synthetic agent '" + agent.id() +
                                      "' carries its price-posting curve directly");
        }
        else
        {
          Distribution const  F      = m.value;
          double const        top    = F.hi();
          double const        p_lo   = F.inverse_demand(1.0 - 1e-6);
          double const        p_hi   = F.inverse_demand(1e-6);
          std::vector<double> knots  = F.breakpoints();
          auto                V      = [F](double q) { return F.inverse_demand(q); };

          if constexpr (std::is_same_v<T, model::Linear> || std::is_same_v<T, model::Capacitated>)
          {
            return OfferCurve([F](double p) { return F.sale_probability(p); },
                              [F](double p) { return 1.0 - F.cdf(p); }, knots, p_lo, p_hi,
                              agent.id(), V);
          }
          else if constexpr (std::is_same_v<T, model::PublicBudget>)
          {
            double const w = m.budget;
            if (w <= top)
            {
              knots.push_back(w);
            }
            auto share = [w](double p) { return p > 0.0 ? std::min(1.0, w / p) : 1.0; };
            return OfferCurve([F, share](double p) { return F.sale_probability(p) * share(p); },
                              [F, share](double p) { return (1.0 - F.cdf(p)) * share(p); }, knots,
                              p_lo, p_hi, agent.id(), V);
          }
          else
          {
            Distribution const G = m.budget;
            for (double b : G.breakpoints())
            {
              if (b <= top)
              {
                knots.push_back(b);
              }
            }
            // Expected purchased fraction E[min(1, w/p)] = Delta(p) / p.
            auto share = [G](double p) {
              if (p > 0.0)
              {
                return G.expected_min(p) / p;
              }
              return 1.0 - G.cdf(0.0);
            };
            return OfferCurve([F, share](double p) { return F.sale_probability(p) * share(p); },
                              [F, share](double p) { return (1.0 - F.cdf(p)) * share(p); }, knots,
                              p_lo, p_hi, agent.id(), V);
          }
        }
      },
      agent.model());
}

inline constexpr std::size_t kDefaultPriceGrid = 4096;

namespace detail {

struct SweepPoint
{
  double q;
  double revenue;
  double price;
};

}  // namespace detail

/**
 * Price-posting revenue curve P from a parametric price sweep.
 *
 * Prices: log-spaced grid over [price_lo, price_hi], the value quantiles
 * V(k / grid), every knot price, and p = 0. Each knot price also contributes its right limit q(p+), which traces
 * the tie-breaking segment P(q) = p q across a jump of q(.). When several
 * prices reach the same quantile the largest revenue is kept; a lower
 * revenue at the same quantile becomes a knot 1e-9 to its right so the
 * downward jump survives interpolation. Quantiles no price reaches have P = 0.
 */
inline RevenueCurve price_posting_curve(std::shared_ptr<OfferCurve const> const &offer,
                                        std::size_t grid = kDefaultPriceGrid)
{
  if (grid < 64)
  {
    throw std::invalid_argument("price_posting_curve: grid must be >= 64");
  }
  OfferCurve const &q_of = *offer;
  double const      hi   = q_of.price_hi();
  double const      lo   = std::max(q_of.price_lo(), 1e-12 * std::max(1.0, hi));

  std::vector<detail::SweepPoint> pts;
  auto add = [&](double p, double q) { pts.push_back({q, p * q, p}); };
  for (double p : numerics::log_space(lo, std::max(lo, hi), grid))
  {
    add(p, q_of(p));
  }
  if (auto const &V = q_of.value_at_quantile())
  {
    for (std::size_t k = 1; k < grid; ++k)
    {
      double const p = V(static_cast<double>(k) / static_cast<double>(grid));
      if (p > 0.0)
        add(p, q_of(p));
    }
  }
  for (double p : q_of.knot_prices())
  {
    if (p < 0.0)
    {
      continue;
    }
    add(p, q_of(p));
    add(p, q_of.right_limit(p));
  }
  add(0.0, q_of(0.0));

  std::sort(pts.begin(), pts.end(), [](auto const &a, auto const &b) {
    return a.q < b.q || (a.q == b.q && a.revenue > b.revenue);
  });

  constexpr double kSameQ = 1e-12;
  constexpr double kNudge = 1e-9;
  double           scale  = 0.0;
  for (auto const &p : pts)
  {
    scale = std::max(scale, std::abs(p.revenue));
  }

  std::vector<CurvePoint> knots;
  knots.push_back({0.0, 0.0});
  std::size_t i = 0;
  while (i < pts.size())
  {
    std::size_t j    = i;
    auto        best = pts[i];
    auto        low  = pts[i];
    while (j < pts.size() && pts[j].q - pts[i].q <= kSameQ)
    {
      if (pts[j].revenue > best.revenue)
        best = pts[j];
      if (pts[j].revenue < low.revenue)
        low = pts[j];
      ++j;
    }
    double const q = best.q <= kSameQ ? 0.0 : (best.q >= 1.0 - kSameQ ? 1.0 : best.q);
    if (q == 0.0)
    {
      knots.front().value = std::max(knots.front().value, 0.0);
    }
    else if (q > knots.back().q)
    {
      knots.push_back({q, best.revenue});
    }
    double const next_q = j < pts.size() ? pts[j].q : 1.0;
    if (q < 1.0 && best.revenue - low.revenue > 1e-12 * std::max(1.0, scale) &&
        q + kNudge < next_q - kSameQ)
    {
      knots.push_back({q + kNudge, low.revenue + low.price * kNudge});
    }
    i = j;
  }
  if (knots.back().q < 1.0)
  {
    // Beyond sup q(p) no per-unit price sells: revenue 0.
    if (knots.back().value != 0.0)
    {
      double const qn = std::min(1.0, knots.back().q + kNudge);
      if (qn < 1.0)
        knots.push_back({qn, 0.0});
    }
    knots.push_back({1.0, 0.0});
  }
  return RevenueCurve(std::move(knots), "P").with_offer(offer);
}

inline RevenueCurve price_posting_curve(OfferCurve const &offer, std::size_t grid = kDefaultPriceGrid)
{
  return price_posting_curve(std::make_shared<OfferCurve const>(offer), grid);
}

/// Convenience: P for a non-synthetic agent; P as carried for a synthetic one.
inline RevenueCurve price_posting_curve(Agent const &agent, std::size_t grid = kDefaultPriceGrid)
{
  if (auto const *syn = std::get_if<model::Synthetic>(&agent.model()))
  {
    return syn->P;
  }
  return price_posting_curve(std::make_shared<OfferCurve const>(offer_curve(agent)), grid);
}

/// Least concave majorant (upper monotone chain over the knots).
inline RevenueCurve concave_hull(RevenueCurve const &curve)
{
  std::vector<CurvePoint> hull;
  for (auto const &k : curve.knots())
  {
    while (hull.size() >= 2)
    {
      auto const &a     = hull[hull.size() - 2];
      auto const &b     = hull.back();
      double const cross = (b.q - a.q) * (k.value - a.value) - (b.value - a.value) * (k.q - a.q);
      if (cross >= 0.0)
      {
        hull.pop_back();
      }
      else
      {
        break;
      }
    }
    hull.push_back(k);
  }
  return RevenueCurve(std::move(hull), "H");
}

/**
 * Q(p, curve): the largest quantile accepting price p.
 *
 * Offer-derived curves delegate to the offer curve. Otherwise the largest
 * q > 0 with curve(q) >= p q (chord from the origin of slope at least p);
 * 0 when no positive quantile qualifies.
 */
inline double quantile_at_price(double p, RevenueCurve const &curve)
{
  if (curve.offer())
  {
    return (*curve.offer())(p);
  }
  auto const kn = curve.knots();
  for (std::size_t k = kn.size() - 1; k-- > 0;)
  {
    auto const  &a   = kn[k];
    auto const  &b   = kn[k + 1];
    double const ga  = a.value - p * a.q;
    double const gb  = b.value - p * b.q;
    double const tol = 1e-12 * std::max({1.0, std::abs(b.value), std::abs(p * b.q)});
    if (gb >= -tol)
    {
      return b.q;
    }
    if (ga >= -tol)
    {
      double const t = ga <= 0.0 ? 0.0 : ga / (ga - gb);
      double const q = a.q + t * (b.q - a.q);
      return q > 0.0 ? q : 0.0;
    }
  }
  return 0.0;
}

/// Evaluates a curve at equally spaced quantiles k / (n - 1).
inline std::vector<CurvePoint> sample(RevenueCurve const &curve, std::size_t n)
{
  std::vector<CurvePoint> out;
  for (double q : numerics::lin_space(0.0, 1.0, n))
  {
    out.push_back({q, curve(q)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lagrangian price-posting curve

struct LagrangianCurve
{
  RevenueCurve curve;        // P_lambda(q) = (q - lambda) V(q), with P_lambda(0) = 0
  RevenueCurve hull;         // linear on [0, q_dagger], P_lambda beyond
  double       q_dagger = 0.0;
  double       tangent_slope = 0.0;  // P_lambda'(q_dagger)
  std::string  warning;
};

/**
 * P_lambda for a linear agent with value law F and budget multiplier lambda,
 * sampled on `grid` equal quantile steps. q_dagger is the smallest root of
 * P_lambda(q) = q P_lambda'(q), located by bisection with a forward-difference
 * derivative (step 1e-6).
 */
inline LagrangianCurve lagrangian_curve(Distribution const &F, double lambda,
                                        std::size_t grid = 1024)
{
  if (!(lambda >= 0.0))
  {
    throw std::invalid_argument("lagrangian_curve: lambda must be >= 0");
  }
  if (grid < 16)
  {
    throw std::invalid_argument("lagrangian_curve: grid must be >= 16");
  }
  constexpr double kStep = 1e-6;
  auto P = [&](double q) { return q <= 0.0 ? 0.0 : (q - lambda) * F.inverse_demand(q); };
  auto dP = [&](double q) {
    if (q + kStep <= 1.0)
      return (P(q + kStep) - P(q)) / kStep;
    return (P(q) - P(q - kStep)) / kStep;
  };
  auto gap = [&](double q) { return P(q) - q * dP(q); };

  LagrangianCurve out;
  double          best = -numerics::kInf;
  for (std::size_t k = 1; k <= grid; ++k)
  {
    best = std::max(best, P(static_cast<double>(k) / static_cast<double>(grid)));
  }
  if (lambda == 0.0)
  {
    out.q_dagger = 0.0;
  }
  else if (best <= 0.0)
  {
    out.q_dagger = 1.0;
    out.warning  = "lambda too large: P_lambda <= 0 on (0,1); q_dagger set to 1";
  }
  else
  {
    double prev = kStep;
    double root = 1.0;
    if (gap(prev) >= 0.0)
    {
      root = prev;
    }
    else
    {
      for (std::size_t k = 1; k <= grid; ++k)
      {
        double const q = static_cast<double>(k) / static_cast<double>(grid);
        if (q <= prev)
          continue;
        if (gap(q) >= 0.0)
        {
          root = numerics::bisect_last_true([&](double x) { return gap(x) < 0.0; }, prev, q, 1e-14);
          break;
        }
        prev = q;
      }
    }
    out.q_dagger = root;
  }
  out.tangent_slope = out.q_dagger < 1.0 || lambda == 0.0 ? dP(out.q_dagger) : 0.0;
  if (out.warning.size())
  {
    out.tangent_slope = P(1.0);
  }

  std::vector<CurvePoint> pk;
  std::vector<CurvePoint> hk;
  std::vector<double>     qs = numerics::lin_space(0.0, 1.0, grid + 1);
  qs.push_back(out.q_dagger);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  for (double q : qs)
  {
    pk.push_back({q, P(q)});
    double const h = q <= out.q_dagger ? q * out.tangent_slope : P(q);
    hk.push_back({q, out.warning.empty() ? h : 0.0});
  }
  out.curve = RevenueCurve(std::move(pk), "P_lambda");
  out.hull  = RevenueCurve(std::move(hk), "H_lambda");
  return out;
}

}  // namespace anonprice
