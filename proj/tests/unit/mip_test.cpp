#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "vmc/mip/branch_and_bound.hpp"

using namespace vmc;
using namespace vmc::mip;
using lp::Relation;

namespace {

// max 5a + 4b + 3c  s.t. 2a + 3b + c <= 4, binaries; written as a minimization.
MipProblem knapsack() {
  lp::LinearProgram lp;
  lp.add_variable(-5.0, 0.0, 1.0);
  lp.add_variable(-4.0, 0.0, 1.0);
  lp.add_variable(-3.0, 0.0, 1.0);
  lp.add_constraint({{0, 2.0}, {1, 3.0}, {2, 1.0}}, Relation::LessEqual, 4.0);
  MipProblem p = make_problem(std::move(lp));
  p.kinds.assign(3, VarKind::Binary);
  return p;
}

}  // namespace

TEST_CASE("knapsack optimum is 8 at a = c = 1") {
  const MipProblem p = knapsack();
  const MipResult r = solve_mip(p);
  REQUIRE(r.status == MipStatus::Optimal);
  CHECK(*r.objective == doctest::Approx(-8.0));
  CHECK((*r.incumbent)[0] == 1.0);
  CHECK((*r.incumbent)[1] == 0.0);
  CHECK((*r.incumbent)[2] == 1.0);
  CHECK(*testing::enumerate_mip_min(p) == doctest::Approx(-8.0));
}

TEST_CASE("integral relaxation is solved at the root") {
  lp::LinearProgram lp;
  lp.add_variable(1.0, 0.0, 10.0);
  lp.add_variable(2.0, 0.0, 10.0);
  lp.add_constraint({{0, 1.0}, {1, 1.0}}, Relation::GreaterEqual, 3.0);
  MipProblem p = make_problem(std::move(lp));
  p.kinds.assign(2, VarKind::Integer);
  const MipResult r = solve_mip(p);
  REQUIRE(r.status == MipStatus::Optimal);
  CHECK(r.nodes == 1);
  CHECK(*r.objective == doctest::Approx(3.0));
}

TEST_CASE("fixings") {
  const MipProblem p = knapsack();
  SUBCASE("empty sets give an identical problem") {
    const MipProblem q = apply_fixings(p, {}, {});
    CHECK(q.fixed_values == p.fixed_values);
    CHECK(*solve_mip(q).objective == *solve_mip(p).objective);
  }
  SUBCASE("pinning the optimal support closes at the root") {
    const std::vector<int> zeros{1};
    const std::vector<int> ones{0, 2};
    const MipResult r = solve_mip(apply_fixings(p, zeros, ones));
    CHECK(*r.objective == doctest::Approx(-8.0));
    CHECK(r.nodes == 1);
  }
  SUBCASE("conflicts throw and leave the input alone") {
    const std::vector<int> both{1};
    CHECK_THROWS_AS(apply_fixings(p, both, both), ConflictingFix);
    CHECK_FALSE(p.fixed_values[1].has_value());
  }
}

TEST_CASE("cutoff row") {
  lp::LinearProgram lp;
  lp.add_variable(3.0, 0.0, 4.0);
  lp.add_variable(5.0, 0.0, 4.0);
  lp.add_constraint({{0, 2.0}, {1, 3.0}}, Relation::GreaterEqual, 7.0);
  MipProblem p = make_problem(std::move(lp));
  p.kinds.assign(2, VarKind::Integer);
  const double opt = *testing::enumerate_mip_min(p);
  CHECK(*solve_mip(p).objective == opt);
  CHECK(*solve_mip(add_cutoff(p, 1e12)).objective == opt);
  const MipResult at = solve_mip(add_cutoff(p, opt));
  REQUIRE(at.status == MipStatus::Optimal);
  CHECK(*at.objective == opt);
  CHECK(solve_mip(add_cutoff(p, opt - 1.0)).status == MipStatus::Infeasible);
  CHECK(add_cutoff(p, opt).extra_constraints.size() == 1);
  CHECK(p.extra_constraints.empty());
}

TEST_CASE("piercing cut") {
  // Two facilities, the cheap one covers demand alone.
  lp::LinearProgram lp;
  lp.add_variable(1.0, 0.0, 1.0);
  lp.add_variable(4.0, 0.0, 1.0);
  lp.add_constraint({{0, 1.0}, {1, 1.0}}, Relation::GreaterEqual, 1.0);
  MipProblem p = make_problem(std::move(lp));
  p.kinds.assign(2, VarKind::Binary);

  const std::vector<int> all{0, 1};
  CHECK(*solve_mip(add_piercing_cut(p, all)).objective == 1.0);
  const std::vector<int> expensive{1};
  CHECK(*solve_mip(add_piercing_cut(p, expensive)).objective == 4.0);
  const std::vector<int> zero{1};
  const MipProblem pinned = apply_fixings(p, zero, {});
  CHECK(solve_mip(add_piercing_cut(pinned, expensive)).status == MipStatus::Infeasible);
  CHECK_THROWS_AS(add_piercing_cut(p, {}), EmptyBucket);
}

TEST_CASE("piercing cut rejects non-binary members") {
  lp::LinearProgram lp;
  lp.add_variable(1.0, 0.0, 3.0);
  MipProblem p = make_problem(std::move(lp));
  p.kinds.assign(1, VarKind::Integer);
  const std::vector<int> b{0};
  CHECK_THROWS_AS(add_piercing_cut(p, b), InvalidModel);
}

TEST_CASE("random MIPs match enumeration, incumbents are feasible, bound is monotone") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 60; ++t) {
    const MipProblem p = testing::random_mip(rng, 14, 3);
    const auto oracle = testing::enumerate_mip_min(p);
    const MipResult r = solve_mip(p);
    if (!oracle) {
      CHECK(r.status == MipStatus::Infeasible);
      continue;
    }
    REQUIRE(r.status == MipStatus::Optimal);
    CHECK(*r.objective == doctest::Approx(*oracle).epsilon(1e-9));
    CHECK(p.max_violation(*r.incumbent) <= 1e-6);
    for (std::size_t k = 1; k < r.progress.size(); ++k) {
      CHECK(r.progress[k].best_bound >= r.progress[k - 1].best_bound);
      CHECK(r.progress[k].incumbent <= r.progress[k - 1].incumbent);
    }
  }
}

TEST_CASE("same problem and seed give the same node count") {
  std::mt19937_64 rng(55);
  for (int t = 0; t < 10; ++t) {
    const MipProblem p = testing::random_mip(rng, 20, 2);
    const MipResult a = solve_mip(p);
    const MipResult b = solve_mip(p);
    CHECK(a.nodes == b.nodes);
    CHECK(a.objective == b.objective);
  }
}

TEST_CASE("node limit stops early with a time-limit style status") {
  std::mt19937_64 rng(8);
  MipProblem p = testing::random_mip(rng, 30, 0);
  SolveConfig cfg;
  cfg.node_limit = 1;
  const MipResult r = solve_mip(p, cfg);
  if (r.nodes > 1 || r.status != MipStatus::Optimal) {
    CHECK((r.status == MipStatus::FeasibleTimeLimit || r.status == MipStatus::NoSolutionTimeLimit));
  }
}
