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
#include <limits>
#include <span>
#include <vector>

namespace anonprice {
namespace numerics {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace detail {

template <class Func>
double simpson_step(Func const &f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth)
{
  double const m   = 0.5 * (a + b);
  double const lm  = 0.5 * (a + m);
  double const rm  = 0.5 * (m + b);
  double const flm = f(lm);
  double const frm = f(rm);
  double const left  = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double const right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double const delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
  {
    return left + right + delta / 15.0;
  }
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance `tol`.
/// The interval is pre-split into `pieces` panels so that features narrower
/// than the initial stencil are not missed.
template <class Func>
double integrate(Func const &f, double a, double b, double tol = 1e-10, int pieces = 8,
                 int max_depth = 48)
{
  if (!(b > a))
  {
    return 0.0;
  }
  double       total = 0.0;
  double const width = (b - a) / pieces;
  for (int k = 0; k < pieces; ++k)
  {
    double const lo = a + width * k;
    double const hi = (k + 1 == pieces) ? b : a + width * (k + 1);
    double const fa = f(lo);
    double const fb = f(hi);
    double const fm = f(0.5 * (lo + hi));
    double const whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    total += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, tol / pieces, max_depth);
  }
  return total;
}

/// Integrates over [a, b] with the interval split at every breakpoint that
/// falls strictly inside it. Use for integrands with kinks.
template <class Func>
double integrate_piecewise(Func const &f, double a, double b, std::vector<double> breaks,
                           double tol = 1e-10)
{
  if (!(b > a))
  {
    return 0.0;
  }
  breaks.push_back(a);
  breaks.push_back(b);
  std::sort(breaks.begin(), breaks.end());
  double total = 0.0;
  double prev  = a;
  for (double x : breaks)
  {
    if (x <= prev || x > b)
    {
      continue;
    }
    total += integrate(f, prev, x, tol / static_cast<double>(breaks.size()));
    prev = x;
  }
  return total;
}

/// Largest x in [lo, hi] with pred(x) true, assuming pred is true on a prefix
/// of the interval. Requires pred(lo).
template <class Pred>
double bisect_last_true(Pred const &pred, double lo, double hi, double rel_tol = 1e-13)
{
  if (pred(hi))
  {
    return hi;
  }
  for (int it = 0; it < 400 && (hi - lo) > rel_tol * std::max(1.0, std::abs(hi)); ++it)
  {
    double const mid = 0.5 * (lo + hi);
    if (pred(mid))
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
  }
  return lo;
}

/// Golden-section search for the maximizer of a unimodal f on [a, b].
template <class Func>
double golden_section_max(Func const &f, double a, double b, double rel_tol = 1e-10)
{
  constexpr double kInvPhi = 0.6180339887498949;
  double           c       = b - kInvPhi * (b - a);
  double           d       = a + kInvPhi * (b - a);
  double           fc      = f(c);
  double           fd      = f(d);
  for (int it = 0; it < 300 && (b - a) > rel_tol * std::max(std::abs(a), std::abs(b)); ++it)
  {
    if (fc >= fd)
    {
      b  = d;
      d  = c;
      fd = fc;
      c  = b - kInvPhi * (b - a);
      fc = f(c);
    }
    else
    {
      a  = c;
      c  = d;
      fc = fd;
      d  = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

/// `n` log-spaced points spanning [lo, hi]; both ends included. Requires 0 < lo.
inline std::vector<double> log_space(double lo, double hi, std::size_t n)
{
  std::vector<double> out;
  if (n == 0)
  {
    return out;
  }
  if (n == 1 || !(hi > lo))
  {
    out.push_back(lo);
    return out;
  }
  out.reserve(n);
  double const llo = std::log(lo);
  double const lhi = std::log(hi);
  for (std::size_t k = 0; k < n; ++k)
  {
    out.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(k) / static_cast<double>(n - 1)));
  }
  out.front() = lo;
  out.back()  = hi;
  return out;
}

/// `n` evenly spaced points on [lo, hi]; both ends included.
inline std::vector<double> lin_space(double lo, double hi, std::size_t n)
{
  std::vector<double> out;
  if (n == 0)
  {
    return out;
  }
  if (n == 1)
  {
    out.push_back(lo);
    return out;
  }
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k)
  {
    out.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
  }
  out.back() = hi;
  return out;
}

}  // namespace numerics
}  // namespace anonprice
