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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

using namespace anonprice;
using Catch::Approx;

TEST_CASE("cdf of built-in laws", "[distributions]")
{
  CHECK(Distribution::uniform(0, 1).cdf(0.3) == Approx(0.3));
  auto er = Distribution::equal_revenue(10);
  CHECK(er.cdf(2) == Approx(0.5));
  CHECK(er.cdf(10) == 1.0);
  CHECK(er.cdf_left(10) == Approx(0.9));
  CHECK(er.cdf(0.5) == 0.0);

  auto d = Distribution::discrete({2, 1}, {0.5, 0.5});
  CHECK(d.cdf(1) == Approx(0.5));
  CHECK(d.cdf_left(1) == 0.0);
  CHECK(d.cdf(1.5) == Approx(0.5));
  CHECK(d.cdf(2) == 1.0);
}

TEST_CASE("cdf is monotone and closes at the top", "[distributions]")
{
  std::vector<Distribution> laws{Distribution::uniform(0.2, 3), Distribution::equal_revenue(50),
                                 Distribution::exponential(2.0, 5.0), Distribution::point_mass(3),
                                 Distribution::discrete({1, 2, 4}, {0.2, 0.3, 0.5}),
                                 Distribution::piecewise_linear_cdf({{0, 0}, {1, 0.6}, {3, 1}})};
  for (auto const &d : laws)
  {
    double prev = 0.0;
    for (int k = -10; k <= 1010; ++k)
    {
      double const x = d.lo() + (d.hi() - d.lo()) * k / 1000.0;
      double const c = d.cdf(x);
      CHECK(c >= prev - 1e-15);
      CHECK(c >= 0.0);
      CHECK(c <= 1.0);
      prev = c;
    }
    CHECK(d.cdf(d.hi()) == 1.0);
    CHECK(d.cdf_left(d.lo()) == 0.0);
  }
}

TEST_CASE("inverse demand", "[distributions]")
{
  CHECK(Distribution::uniform(0, 1).inverse_demand(0.3) == Approx(0.7));
  auto er = Distribution::equal_revenue(10);
  CHECK(er.inverse_demand(0.05) == 10.0);
  CHECK(er.inverse_demand(0.1) == 10.0);
  CHECK(er.inverse_demand(0.5) == Approx(2.0));
  auto d = Distribution::discrete({1, 2}, {0.5, 0.5});
  CHECK(d.inverse_demand(0.25) == 2.0);
  CHECK(d.inverse_demand(0.5) == 2.0);
  CHECK(d.inverse_demand(0.75) == 1.0);
  CHECK(Distribution::point_mass(3).inverse_demand(0.4) == 3.0);
}

TEST_CASE("inverse demand round trip at continuity points", "[distributions][property]")
{
  std::vector<Distribution> laws{Distribution::uniform(0, 1), Distribution::uniform(1, 4),
                                 Distribution::equal_revenue(10), Distribution::exponential(1.0, 10.0),
                                 Distribution::piecewise_linear_cdf({{0, 0}, {1, 0.6}, {3, 1}})};
  for (auto const &d : laws)
  {
    for (int k = 0; k < 1000; ++k)
    {
      double const v = d.lo() + (d.hi() - d.lo()) * (k + 0.5) / 1000.0;
      double const back = d.inverse_demand(1.0 - d.cdf(v));
      CHECK(back >= v - 1e-9);
      CHECK(back - v <= 1e-9 * std::max(1.0, v));
    }
  }
}

TEST_CASE("regularity report", "[distributions]")
{
  CHECK(regularity_report(Distribution::uniform(0, 1), 256).regular);
  CHECK(regularity_report(Distribution::equal_revenue(10), 256).regular);
  CHECK(regularity_report(Distribution::point_mass(2), 64).regular);

  // q V(q) for {1,2} equiprobable drops from 1 to 1/2 right after q = 1/2;
  // enumerate second differences directly.
  auto d        = Distribution::discrete({1, 2}, {0.5, 0.5});
  auto rep      = regularity_report(d, 256);
  double worst  = 0.0;
  for (int k = 1; k < 256; ++k)
  {
    auto P = [&](double q) { return q * d.inverse_demand(q); };
    double const h = 1.0 / 256;
    worst = std::max(worst, P(k * h + h) - 2 * P(k * h) + P(k * h - h));
  }
  CHECK(worst > 0.25);
  CHECK_FALSE(rep.regular);
  CHECK(rep.max_second_difference == Approx(worst).margin(1e-12));

  CHECK_THROWS_AS(regularity_report(Distribution::uniform(0, 1), 8), std::invalid_argument);
}

TEST_CASE("mhr report", "[distributions]")
{
  CHECK(mhr_report(Distribution::uniform(0, 1), 256).status == MhrStatus::mhr);
  CHECK(mhr_report(Distribution::exponential(1.0, 10.0), 256).status == MhrStatus::mhr);
  CHECK(mhr_report(Distribution::equal_revenue(10), 256).status == MhrStatus::not_mhr);
  auto gap = Distribution::piecewise_linear_cdf({{0, 0}, {1, 0.5}, {2, 0.5}, {3, 1}});
  CHECK(mhr_report(gap, 256).indeterminate_points > 0);
}

TEST_CASE("expected min against quadrature", "[distributions]")
{
  std::vector<Distribution> laws{Distribution::uniform(0, 1), Distribution::uniform(0.5, 2),
                                 Distribution::equal_revenue(10), Distribution::exponential(1.5),
                                 Distribution::point_mass(0.7),
                                 Distribution::discrete({0.3, 0.9}, {0.25, 0.75})};
  for (auto const &d : laws)
  {
    for (double p : {0.05, 0.3, 0.5, 0.99, 1.7, 4.0, 12.0})
    {
      CHECK(d.expected_min(p) == Approx(d.survival_integral(p)).margin(1e-9));
    }
  }
  CHECK(Distribution::uniform(0, 1).expected_min(0.5) == Approx(0.375));
}

TEST_CASE("exceed mean probability", "[distributions]")
{
  CHECK(exceed_mean_probability(Distribution::uniform(0, 1)) == Approx(0.5));
  CHECK(exceed_mean_probability(Distribution::point_mass(4)) == 1.0);
  // Censored at 20: the tail beyond the mean is exp(-mean) with mean 1 - e^-20.
  double const mean = 1.0 - std::exp(-20.0);
  CHECK(exceed_mean_probability(Distribution::exponential(1.0)) ==
        Approx(std::exp(-mean)).margin(1e-9));
  CHECK(exceed_mean_probability(Distribution::exponential(1.0)) ==
        Approx(std::exp(-1.0)).margin(1e-6));
  for (auto const &d : {Distribution::uniform(0, 1), Distribution::uniform(2, 5),
                        Distribution::exponential(0.5, 40.0), Distribution::exponential(3.0)})
  {
    CHECK(exceed_mean_probability(d) >= std::exp(-1.0) - 1e-6);
  }
}

TEST_CASE("discretize", "[distributions]")
{
  auto u = discretize(Distribution::uniform(0, 1), 2);
  auto a = u.atoms();
  REQUIRE(a.size() == 2);
  CHECK(a[0].value == Approx(0.25));
  CHECK(a[1].value == Approx(0.75));
  CHECK(a[0].mass == Approx(0.5));

  auto pm = discretize(Distribution::point_mass(3), 7).atoms();
  REQUIRE(pm.size() == 1);
  CHECK(pm[0].value == 3.0);
  CHECK(pm[0].mass == 1.0);

  // Continuous part of ER(10) has mass .9 split into three slices of .3;
  // quantile-midpoint cdf levels .15, .45, .75 give v = 1/(1-c).
  auto er = discretize(Distribution::equal_revenue(10), 4).atoms();
  REQUIRE(er.size() == 4);
  CHECK(er[0].value == Approx(1.0 / 0.85));
  CHECK(er[1].value == Approx(1.0 / 0.55));
  CHECK(er[2].value == Approx(1.0 / 0.25));
  CHECK(er[3].value == Approx(10.0));
  CHECK(er[3].mass == Approx(0.1));

  CHECK_THROWS_AS(discretize(Distribution::uniform(0, 1), 1), std::invalid_argument);
}

TEST_CASE("discretize preserves mass and approximates the mean", "[distributions][property]")
{
  for (auto const &d : {Distribution::uniform(0, 1), Distribution::equal_revenue(10),
                        Distribution::exponential(1.0, 10.0)})
  {
    double prev_err = 1e9;
    for (std::size_t n : {8u, 32u, 128u})
    {
      auto   dd   = discretize(d, n);
      double mass = 0.0;
      for (auto const &x : dd.atoms())
        mass += x.mass;
      CHECK(mass == Approx(1.0).margin(1e-12));
      double const err = std::abs(dd.mean() - d.mean());
      CHECK(err <= d.hi() * 2.0 / static_cast<double>(n));
      CHECK(err <= prev_err + 1e-12);
      prev_err = err;
    }
  }
}

TEST_CASE("discretized uniform stays regular within 2/n", "[distributions][property]")
{
  for (std::size_t n : {4u, 10u, 40u})
  {
    auto rep = regularity_report(discretize(Distribution::uniform(0, 1), n), 256);
    CHECK(rep.max_second_difference <= 2.0 / static_cast<double>(n));
  }
}

TEST_CASE("invalid parameters are rejected", "[distributions]")
{
  CHECK_THROWS_AS(Distribution::uniform(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::equal_revenue(0.5), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::discrete({1, 2}, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::exponential(-1), std::invalid_argument);
  CHECK_THROWS_AS(Distribution::piecewise_linear_cdf({{0, 0.2}, {1, 1}}), std::invalid_argument);
}
