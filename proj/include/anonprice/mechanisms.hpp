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

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace anonprice {

// ---------------------------------------------------------------------------
// Anonymous pricing

struct ApResult
{
  double              price = 0.0;
  std::vector<double> Q;
  double              revenue = 0.0;
  bool                at_price_cap = false;  // optimum sits on the largest candidate price
};

/// p (1 - prod_i (1 - Q(p, curve_i))).
inline ApResult ap_revenue(std::vector<RevenueCurve> const &curves, double p)
{
  if (!(p >= 0.0))
  {
    throw std::invalid_argument("ap_revenue: price must be >= 0");
  }
  ApResult r;
  r.price       = p;
  double unsold = 1.0;
  for (auto const &c : curves)
  {
    double const q = quantile_at_price(p, c);
    r.Q.push_back(q);
    unsold *= 1.0 - q;
  }
  r.revenue = p * (1.0 - unsold);
  return r;
}

inline std::vector<RevenueCurve> price_posting_curves(std::vector<Agent> const &agents,
                                                      std::size_t grid = kDefaultPriceGrid)
{
  std::vector<RevenueCurve> out;
  for (auto const &a : agents)
    out.push_back(price_posting_curve(a, grid));
  return out;
}

inline ApResult ap_revenue(std::vector<Agent> const &agents, double p)
{
  return ap_revenue(price_posting_curves(agents), p);
}

/// Prices at which some Q(., curve) can jump or kink.
inline std::vector<double> ap_candidate_prices(std::vector<RevenueCurve> const &curves,
                                               std::size_t                      grid = 4096)
{
  std::vector<double> cand;
  double              lo = numerics::kInf;
  double              hi = 0.0;
  for (auto const &c : curves)
  {
    if (auto const &oc = c.offer())
    {
      for (double p : oc->knot_prices())
        if (p > 0.0)
          cand.push_back(p);
      if (oc->price_lo() > 0.0)
        lo = std::min(lo, oc->price_lo());
      hi = std::max(hi, oc->price_hi());
      for (double p : oc->knot_prices())
        hi = std::max(hi, p);
    }
    for (auto const &k : c.knots())
    {
      if (k.q > 0.0 && k.value > 0.0)
      {
        double const p = k.value / k.q;
        if (!c.offer())
        {
          cand.push_back(p);
          lo = std::min(lo, p);
          hi = std::max(hi, p);
        }
      }
    }
  }
  if (hi > 0.0 && std::isfinite(lo) && lo <= hi)
  {
    auto g = numerics::log_space(lo, hi, grid);
    cand.insert(cand.end(), g.begin(), g.end());
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  return cand;
}

/**
 * Optimal anonymous price: evaluates every candidate price, then refines each
 * local maximum by golden-section search between its neighbouring candidates.
 */
inline ApResult ap_optimize(std::vector<RevenueCurve> const &curves)
{
  if (curves.empty())
  {
    throw std::invalid_argument("ap_optimize: need at least one agent");
  }
  auto const cand = ap_candidate_prices(curves);
  ApResult   best = ap_revenue(curves, 0.0);
  if (cand.empty())
  {
    return best;
  }
  std::vector<double> rev(cand.size());
  for (std::size_t i = 0; i < cand.size(); ++i)
  {
    rev[i] = ap_revenue(curves, cand[i]).revenue;
  }
  auto consider = [&](double p) {
    auto r = ap_revenue(curves, p);
    if (r.revenue > best.revenue)
      best = std::move(r);
  };
  for (std::size_t i = 0; i < cand.size(); ++i)
  {
    bool const left_ok  = i == 0 || rev[i] >= rev[i - 1];
    bool const right_ok = i + 1 == cand.size() || rev[i] >= rev[i + 1];
    if (!(left_ok && right_ok))
      continue;
    consider(cand[i]);
    double const a = cand[i > 0 ? i - 1 : i];
    double const b = cand[i + 1 < cand.size() ? i + 1 : i];
    if (b > a)
    {
      double const p = numerics::golden_section_max(
          [&](double x) { return ap_revenue(curves, x).revenue; }, a, b, 1e-10);
      consider(p);
    }
  }
  best.at_price_cap = best.price >= cand.back() * (1.0 - 1e-12);
  return best;
}

inline ApResult ap_optimize(std::vector<Agent> const &agents)
{
  return ap_optimize(price_posting_curves(agents));
}

// ---------------------------------------------------------------------------
// Ex ante relaxation

struct EarResult
{
  std::vector<double> q;
  double              revenue = 0.0;
  bool                binding = false;  // total mass reached 1
};

/**
 * max sum_i R_i(q_i) s.t. sum_i q_i <= 1 for concave piecewise-linear R_i:
 * pool all segments, take them in order of decreasing slope until the unit
 * of mass is spent or the slope is no longer positive.
 */
inline EarResult ear_optimize(std::vector<RevenueCurve> const &curves)
{
  struct Segment
  {
    double      slope;
    double      length;
    std::size_t curve;
    std::size_t order;
  };
  std::vector<Segment> segs;
  for (std::size_t c = 0; c < curves.size(); ++c)
  {
    if (!curves[c].concave())
    {
      throw std::invalid_argument("ear_optimize: curve " + std::to_string(c) + " ('" +
                                  curves[c].name() + "') is not concave; take its hull first");
    }
    auto const kn = curves[c].knots();
    for (std::size_t k = 0; k + 1 < kn.size(); ++k)
    {
      double const len = kn[k + 1].q - kn[k].q;
      segs.push_back({(kn[k + 1].value - kn[k].value) / len, len, c, k});
    }
  }
  std::stable_sort(segs.begin(), segs.end(),
                   [](Segment const &a, Segment const &b) { return a.slope > b.slope; });

  EarResult r;
  r.q.assign(curves.size(), 0.0);
  double left = 1.0;
  for (auto const &s : segs)
  {
    if (s.slope <= 0.0 || left <= 0.0)
      break;
    double const take = std::min(s.length, left);
    r.q[s.curve] += take;
    left -= take;
  }
  r.binding = left <= 1e-12;
  for (std::size_t c = 0; c < curves.size(); ++c)
  {
    r.q[c] = std::min(r.q[c], 1.0);
    r.revenue += curves[c](r.q[c]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Single-agent prices

/// Largest price p with q(p) >= q; at a jump of q(.) this is the jump price.
inline double market_clearing_price(OfferCurve const &offer, double q)
{
  if (!(q > 0.0 && q <= 1.0))
  {
    throw std::invalid_argument("market_clearing_price: q must lie in (0, 1]");
  }
  if (q > offer.max_quantile() + 1e-12)
  {
    throw std::domain_error("market_clearing_price: unreachable mass " + std::to_string(q) +
                            " (largest reachable " + std::to_string(offer.max_quantile()) + ")");
  }
  double hi = offer.price_hi();
  for (double p : offer.knot_prices())
    hi = std::max(hi, p);
  hi = std::max(hi, 1e-300) * 2.0;
  return numerics::bisect_last_true([&](double p) { return offer(p) >= q - 1e-15; }, 0.0, hi,
                                    1e-12);
}

struct MyersonReserve
{
  double price = 0.0;
  double quantile = 0.0;
  double revenue = 0.0;
};

/**
 * Revenue-maximizing quantile of a curve, ties resolved to the largest
 * quantile. Offer-backed curves are refined in price between the knots
 * bracketing the best knot.
 */
inline MyersonReserve myerson_reserve(RevenueCurve const &curve)
{
  MyersonReserve r;
  double const   q = curve.argmax_largest();
  r.quantile       = q;
  r.revenue        = curve(q);
  r.price          = q > 0.0 ? r.revenue / q : 0.0;
  if (auto const &oc = curve.offer(); oc && q > 0.0)
  {
    auto const  kn = curve.knots();
    std::size_t k  = 0;
    while (k + 1 < kn.size() && kn[k].q < q)
      ++k;
    double const q_hi = k + 1 < kn.size() ? kn[k + 1].q : kn[k].q;
    double const q_lo = k > 0 ? kn[k - 1].q : kn[k].q;
    double const p_lo = q_hi > 0.0 ? curve(q_hi) / q_hi : r.price;
    double const p_hi = q_lo > 0.0 ? curve(q_lo) / q_lo : r.price;
    if (p_hi > p_lo)
    {
      double const p   = numerics::golden_section_max([&](double x) { return oc->revenue(x); },
                                                      std::max(0.0, p_lo), p_hi, 1e-12);
      double const rev = oc->revenue(p);
      if (rev > r.revenue * (1.0 + 1e-12))
      {
        r.price    = p;
        r.quantile = (*oc)(p);
        r.revenue  = rev;
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Random-price mechanisms

/// E_{r ~ F}[min(r, w) (1 - F(r-))]: post a price drawn from F to a public-budget agent.
inline double random_price_revenue_public(Distribution const &F, double w)
{
  if (!(w >= 0.0))
  {
    throw std::invalid_argument("random_price_revenue_public: budget must be >= 0");
  }
  return F.expectation([&](double r) { return std::min(r, w) * F.sale_probability(r); }, {w},
                       1e-12);
}

/// Price max{floor, r0} with r0 ~ F, posted to the agent's offer curve.
inline double random_price_revenue_floor(Agent const &agent, double floor)
{
  auto const *F = agent.value();
  if (F == nullptr)
  {
    throw std::invalid_argument("random_price_revenue_floor: agent has no value law");
  }
  if (!(floor >= 0.0))
  {
    throw std::invalid_argument("random_price_revenue_floor: floor must be >= 0");
  }
  auto const oc = offer_curve(agent);
  double const at_floor = floor * oc(floor);
  return F->expectation([&](double r) { return r <= floor ? at_floor : r * oc(r); }, {floor},
                        1e-12);
}

// ---------------------------------------------------------------------------
// Capacitated agents: two-priced upper bound

struct TwoPricedAllocation
{
  std::vector<double> q;   // cell midpoints
  std::vector<double> x;   // total allocation
  std::vector<double> xc;  // allocation charged V(q) - C
  double              cell = 0.0;

  double mass() const
  {
    double m = 0.0;
    for (double v : x)
      m += v * cell;
    return m;
  }
};

/// Bound-maximizing two-priced allocation: x = 1 on [0, q_hat], x^C = 1 on [0, q_prime].
inline TwoPricedAllocation two_priced_allocation(double q_hat, double q_prime, std::size_t grid)
{
  TwoPricedAllocation a;
  a.cell = 1.0 / static_cast<double>(grid);
  for (std::size_t k = 0; k < grid; ++k)
  {
    double const lo = static_cast<double>(k) * a.cell;
    double const hi = lo + a.cell;
    a.q.push_back(0.5 * (lo + hi));
    a.x.push_back(std::clamp((q_hat - lo) / a.cell, 0.0, 1.0));
    a.xc.push_back(std::clamp((q_prime - lo) / a.cell, 0.0, 1.0));
  }
  return a;
}

struct RiskBound
{
  double reserve_price = 0.0;
  double q_prime = 0.0;
  double P_at_q_prime = 0.0;
  double term_value = 0.0;     // E[(P')+ x]
  double term_capped = 0.0;    // E[(P')+ x^C]
  double term_overpay = 0.0;   // E[(V - C)+ x^C] bound, by quadrature
  double term_overpay_closed = 0.0;
  double total = 0.0;
  double multiplier = 0.0;     // 2 + ln(hbar / C)
  double bound = 0.0;
};

/**
 * Upper bound on the revenue a capacitated agent (capacity C, values up to
 * hbar) pays at ex ante mass q_hat. q' = min{Q(m*, P), q_hat}; the three terms
 * sum to at most P(q') (2 + ln(hbar / C)).
 */
inline RiskBound risk_two_priced_bound(RevenueCurve const &P, double C, double hbar, double q_hat)
{
  if (!(C > 0.0))
  {
    throw std::invalid_argument("risk_two_priced_bound: capacity must be > 0");
  }
  if (C > hbar)
  {
    throw std::invalid_argument("risk_two_priced_bound: capacity must not exceed hbar");
  }
  if (!P.concave())
  {
    throw std::invalid_argument("risk_two_priced_bound: P must be concave");
  }
  q_hat = std::clamp(q_hat, 0.0, 1.0);
  RiskBound r;
  auto const m = myerson_reserve(P);
  r.reserve_price = m.price;
  r.q_prime       = std::min(quantile_at_price(m.price, P), q_hat);
  r.P_at_q_prime  = P(r.q_prime);

  auto positive_part_integral = [&P](double upto) {
    double acc = 0.0;
    auto   kn  = P.knots();
    for (std::size_t k = 0; k + 1 < kn.size() && kn[k].q < upto; ++k)
    {
      double const b = std::min(kn[k + 1].q, upto);
      acc += std::max(0.0, P.slope(kn[k].q)) * (b - kn[k].q);
    }
    return acc;
  };
  r.term_value  = positive_part_integral(q_hat);
  r.term_capped = positive_part_integral(r.q_prime);

  double const Pq = r.P_at_q_prime;
  if (Pq > 0.0)
  {
    double const a = Pq / hbar;
    double const b = std::min(1.0, Pq / C);
    auto         f = [&](double q) { return std::max(0.0, std::min(hbar, Pq / q) - C); };
    r.term_overpay = numerics::integrate_piecewise(f, 0.0, 1.0, {a, b}, 1e-13);
    r.term_overpay_closed =
        std::min(a, 1.0) * (hbar - C) + (b > a ? Pq * std::log(b / a) - C * (b - a) : 0.0);
  }
  r.total      = r.term_value + r.term_capped + r.term_overpay;
  r.multiplier = 2.0 + std::log(hbar / C);
  r.bound      = Pq * r.multiplier;
  return r;
}

/// The three-term bound as a function of q_hat, sampled on `grid` points.
inline RevenueCurve two_priced_bound_curve(RevenueCurve const &P, double C, double hbar,
                                           std::size_t grid = 257)
{
  std::vector<CurvePoint> kn;
  std::vector<double>     qs = numerics::lin_space(0.0, 1.0, grid);
  for (auto const &k : P.knots())
    qs.push_back(k.q);
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  for (double q : qs)
    kn.push_back({q, risk_two_priced_bound(P, C, hbar, q).total});
  return RevenueCurve(std::move(kn), "R");
}

}  // namespace anonprice
