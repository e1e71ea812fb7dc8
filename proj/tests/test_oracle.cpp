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

#include "anonprice/oracle.hpp"
#include "support.hpp"

#include <catch_amalgamated.hpp>

#include <sstream>

using namespace anonprice;
using Catch::Approx;

TEST_CASE("simplex basics", "[oracle][simplex]")
{
  LpProblem lp;
  lp.objective = {1.0, 1.0};
  lp.add_row({1.0, 1.0}, Sense::le, 1.0);
  auto r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == Approx(1.0));
  CHECK(r.max_residual < 1e-12);

  LpProblem inf;
  inf.objective = {1.0};
  inf.add_row({1.0}, Sense::le, 1.0);
  inf.add_row({1.0}, Sense::ge, 2.0);
  CHECK(simplex_solve(inf).status == LpStatus::infeasible);

  LpProblem unb;
  unb.objective = {1.0, 0.0};
  unb.add_row({-1.0, 1.0}, Sense::le, 1.0);
  CHECK(simplex_solve(unb).status == LpStatus::unbounded);

  LpProblem bad;
  bad.objective = {1.0, 1.0};
  bad.add_row({1.0}, Sense::le, 1.0);
  CHECK_THROWS_AS(simplex_solve(bad), std::invalid_argument);
}

TEST_CASE("simplex honours equalities and upper bounds", "[oracle][simplex]")
{
  LpProblem lp;
  lp.objective = {3.0, 2.0, -1.0};
  lp.add_row({1.0, 1.0, 1.0}, Sense::eq, 2.0);
  lp.add_row({1.0, -1.0, 0.0}, Sense::ge, -0.5);
  lp.upper = {0.75, numerics::kInf, numerics::kInf};
  auto r = simplex_solve(lp);
  REQUIRE(r.status == LpStatus::optimal);
  // x1 capped at 0.75, the rest goes to x2.
  CHECK(r.objective == Approx(3.0 * 0.75 + 2.0 * 1.25));
  CHECK(r.x[0] == Approx(0.75));
}

TEST_CASE("simplex matches vertex enumeration on 2x2 type spaces", "[oracle][simplex]")
{
  for (auto const &s : testing::small_type_spaces())
  {
    for (double q : {0.05, 0.3, 0.6, 0.9, 1.0})
    {
      auto const lp    = build_ex_ante_lp(s, q);
      auto const truth = testing::vertex_enumeration(lp);
      REQUIRE(truth.feasible);
      for (auto rule : {PivotRule::dantzig_bland, PivotRule::bland})
      {
        auto r = simplex_solve(lp, rule);
        REQUIRE(r.status == LpStatus::optimal);
        CHECK(std::abs(r.objective - truth.objective) <= 1e-9);
      }
    }
  }
}

TEST_CASE("ex ante LP examples", "[oracle]")
{
  auto pm = DiscreteTypeSpace::make(SpaceModel::linear, {1.0}, {1.0}, {}, {});
  CHECK(ex_ante_revenue_lp(pm, 1.0).objective == Approx(1.0));

  auto two = DiscreteTypeSpace::make(SpaceModel::linear, {1.0, 2.0}, {0.5, 0.5}, {}, {});
  auto sol = ex_ante_revenue_lp(two, 0.75);
  REQUIRE(sol.status == LpStatus::optimal);
  CHECK(sol.objective == Approx(1.0));
  CHECK(sol.x[0][0] == Approx(0.5));
  CHECK(sol.x[1][0] == Approx(1.0));

  auto pub = DiscreteTypeSpace::make(SpaceModel::public_budget, {1.0, 2.0}, {0.5, 0.5}, {10.0},
                                     {1.0});
  CHECK(ex_ante_revenue_lp(pub, 0.5).objective == Approx(1.0));

  CHECK_THROWS_AS(ex_ante_revenue_lp(two, -0.1), std::invalid_argument);
  CHECK(ex_ante_revenue_lp(two, 1.5).status == LpStatus::infeasible);

  std::ostringstream os;
  sol.write_csv(os);
  CHECK(os.str().rfind("i,j,x,p\n", 0) == 0);
}

TEST_CASE("type space validation", "[oracle]")
{
  CHECK_THROWS_AS(DiscreteTypeSpace::make(SpaceModel::linear, {1.0, 1.0}, {0.5, 0.5}, {}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscreteTypeSpace::make(SpaceModel::linear, {1.0, 2.0}, {0.5, 0.6}, {}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscreteTypeSpace::make(SpaceModel::private_budget, {1.0}, {1.0}, {1.0, 2.0},
                                          {0.5}),
                  std::invalid_argument);
  auto cap = Agent::capacitated("c", Distribution::uniform(1, 2), 1.5);
  CHECK_THROWS_AS(type_space(cap, 10, 5), std::invalid_argument);
}

TEST_CASE("LP solutions satisfy the mechanism constraints", "[oracle][property]")
{
  auto s = type_space(Agent::private_budget("b", Distribution::uniform(0, 1),
                                            Distribution::uniform(0, 1)),
                      12, 6);
  for (double q : {0.1, 0.4, 0.8})
  {
    auto sol = ex_ante_revenue_lp(s, q);
    REQUIRE(sol.status == LpStatus::optimal);
    double mass = 0.0, rev = 0.0;
    for (std::size_t j = 0; j < s.budget_count(); ++j)
    {
      for (std::size_t i = 0; i < s.value_count(); ++i)
      {
        mass += s.f[i] * s.g[j] * sol.x[i][j];
        rev += s.f[i] * s.g[j] * sol.p[i][j];
        CHECK(sol.x[i][j] <= 1.0 + 1e-9);
        CHECK(sol.p[i][j] <= s.budgets[j] + 1e-9);
        if (i > 0)
        {
          CHECK(sol.x[i][j] >= sol.x[i - 1][j] - 1e-9);
          // Payment identity between adjacent value levels.
          CHECK(sol.p[i][j] - sol.p[i - 1][j] ==
                Approx(s.values[i] * (sol.x[i][j] - sol.x[i - 1][j])).margin(1e-9));
        }
      }
      CHECK(sol.p[0][j] >= -1e-9);
    }
    CHECK(mass == Approx(q).margin(1e-9));
    CHECK(rev == Approx(sol.objective).margin(1e-9));
  }
}

TEST_CASE("oracle curve upper-bounds the discrete price-posting curve", "[oracle][property]")
{
  auto agent = Agent::private_budget("b", Distribution::uniform(0, 1), Distribution::uniform(0, 1));
  auto s     = type_space(agent, 20, 8);
  auto R     = ex_ante_curve_oracle(s, 17);
  auto P     = price_posting_curve(space_agent(s));
  for (auto const &k : R.knots())
    CHECK(k.value >= P(k.q) - 1e-9);
  CHECK(R.knots().size() >= 17);
  CHECK_THROWS_AS(ex_ante_curve_oracle(s, 4), std::invalid_argument);
}

TEST_CASE("oracle curve for linear and public-budget agents", "[oracle]")
{
  auto U  = Distribution::uniform(0, 1);
  auto lu = type_space(Agent::linear("u", U), 100, 1);
  CHECK(ex_ante_revenue_lp(lu, 0.5).objective == Approx(0.25).margin(0.01));

  for (double w : {0.3, 0.7})
  {
    auto pub = type_space(Agent::public_budget("w", U, w), 50, 1);
    auto R   = ex_ante_curve_oracle(pub, 33);
    auto H   = concave_hull(price_posting_curve(space_agent(pub)));
    for (auto const &k : R.knots())
      CHECK(std::abs(k.value - H(k.q)) <= 0.02 * std::max(H(k.q), 1e-12) + 1e-12);
  }
}

TEST_CASE("public-budget oracle tracks the discrete price-posting curve", "[oracle]")
{
  auto pub = type_space(Agent::public_budget("w", Distribution::uniform(0, 1), 0.3), 50, 1);
  auto R   = ex_ante_curve_oracle(pub, 33);
  auto P   = price_posting_curve(space_agent(pub));
  for (double q : numerics::lin_space(0.0, 1.0, 33))
    CHECK(std::abs(R(q) - P(q)) <= 0.02);
}

TEST_CASE("a discrete public budget admits a lottery above price posting", "[oracle]")
{
  // Atoms 0.01, 0.03, ..., 0.99 and budget 0.1. Types >= 0.11 pay 0.1 for the
  // item, type 0.09 pays 0.045 for half of it: mass 0.91, revenue 0.0909.
  auto pub = type_space(Agent::public_budget("w", Distribution::uniform(0, 1), 0.1), 50, 1);
  CHECK(ex_ante_revenue_lp(pub, 0.91).objective == Approx(0.9 * 0.1 + 0.02 * 0.045).margin(1e-9));
  auto P = price_posting_curve(space_agent(pub));
  CHECK(P.max_value() == Approx(0.09).margin(1e-12));
}

TEST_CASE("brute-force ex ante relaxation", "[oracle]")
{
  auto U = price_posting_curve(Agent::linear("u", Distribution::uniform(0, 1)));
  CHECK(brute_force_ear({U, U}, 0.001) == Approx(0.5).margin(1e-6));

  auto R = RevenueCurve::synthetic({{0, 0}, {0.5, 4}, {1, 4}});
  CHECK(brute_force_ear({R, R}, 0.01) == Approx(8.0).margin(0.02));

  CHECK_THROWS_AS(brute_force_ear({U, U, U, U}, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_ear({U}, 0.1), std::invalid_argument);
}
