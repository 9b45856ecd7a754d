#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "../support/vmcp_fixtures.hpp"
#include "vmc/error.hpp"
#include "vmc/gen/generator.hpp"
#include "vmc/ks/kernel_search.hpp"
#include "vmc/lp/simplex.hpp"

using namespace vmc;

namespace {

lp::LpSolution fake_relax(std::vector<double> primal, std::vector<double> rc) {
  lp::LpSolution s;
  s.status = lp::LpStatus::Optimal;
  s.primal = std::move(primal);
  s.reduced_costs = std::move(rc);
  return s;
}

model::Instance generated(int servers, double beta, std::uint64_t seed) {
  gen::GenParams p;
  p.num_servers = servers;
  p.beta = beta;
  p.seed = seed;
  return gen::generate_instance(p);
}

ks::KsParams quick(ks::Variant v) {
  ks::KsParams p;
  p.variant = v;
  p.t_max = 120;
  p.exec = kernels::Exec::Serial;
  return p;
}

double exact_objective(const model::Instance& inst) {
  const mip::MipResult r = mip::solve_mip(model::build_mip(inst).problem);
  REQUIRE(r.status == mip::MipStatus::Optimal);
  return *r.objective;
}

}  // namespace

TEST_CASE("binary order keys") {
  auto s = fake_relax({1.0, 0.3, 0.0}, {0, 0, 0});
  CHECK(ks::sort_binaries(s, {2, 0, 1}) == std::vector<int>{0, 1, 2});
  s = fake_relax({0.5, 0.5}, {0.2, 0.0});
  CHECK(ks::sort_binaries(s, {0, 1}) == std::vector<int>{1, 0});
  s = fake_relax({0.5, 0.5, 0.5}, {-0.1, 0.1, 0.1});
  CHECK(ks::sort_binaries(s, {2, 1, 0}) == std::vector<int>{0, 1, 2});
}

TEST_CASE("kernel size rule and bucket partition") {
  std::vector<double> primal(25, 0.0);
  for (int k = 0; k < 5; ++k) primal[k] = 0.5;
  const auto relax = fake_relax(primal, std::vector<double>(25, 0.0));
  std::vector<int> sorted(25);
  for (int k = 0; k < 25; ++k) sorted[k] = k;
  ks::KsParams p;
  ks::KernelState s = ks::build_kernel_and_buckets(sorted, relax, p);
  CHECK(s.kernel.size() == 10);
  REQUIRE(s.buckets.size() == 2);
  CHECK(s.buckets[0].size() == 10);
  CHECK(s.buckets[1].size() == 5);
  CHECK(s.working_set == s.kernel);

  const auto all = fake_relax(std::vector<double>(25, 1.0), std::vector<double>(25, 0.0));
  s = ks::build_kernel_and_buckets(sorted, all, p);
  CHECK(s.kernel.size() == 25);
  CHECK(s.buckets.empty());

  std::vector<int> seven{0, 1, 2, 3, 4, 5, 6};
  p.kernel_size = 3;
  s = ks::build_kernel_and_buckets(seven, relax, p);
  CHECK(s.kernel == std::vector<int>{0, 1, 2});
  REQUIRE(s.buckets.size() == 2);
  CHECK(s.buckets[0] == std::vector<int>{3, 4, 5});
  CHECK(s.buckets[1] == std::vector<int>{6});

  // Fewer than ten available: everything is kernel.
  p.kernel_size.reset();
  s = ks::build_kernel_and_buckets({4, 2, 9}, relax, p);
  CHECK(s.kernel.size() == 3);
  CHECK(s.buckets.empty());
}

TEST_CASE("fixing thresholds per variant") {
  const auto inst = testing::catalog_instance({3, 5}, {1}, {{1, 0}}, {0});
  const model::VmcpModel m = model::build_mip(inst);
  std::vector<double> rc(m.problem.num_vars(), 0.0);
  rc[m.index.y(0)] = -1.0;
  rc[m.index.y(1)] = 2.0;
  rc[m.index.x(0, 1)] = 3.0;
  rc[m.index.z(0, 0)] = 5e-5;
  const auto relax = fake_relax(std::vector<double>(m.problem.num_vars(), 0.0), rc);

  const ks::FixingSets none = ks::fix_variables(relax, m, 1e-4, ks::Variant::KSF);
  CHECK(none.empty());
  const ks::FixingSets v = ks::fix_variables(relax, m, 1e-4, ks::Variant::KSFV);
  CHECK(ks::indices(v.ones_binary) == std::vector<int>{m.index.y(0)});
  CHECK(ks::indices(v.zeros_binary) == std::vector<int>{m.index.y(1)});
  CHECK(v.zeros_integer.empty());
  const ks::FixingSets g = ks::fix_variables(relax, m, 1e-4, ks::Variant::KSFVG);
  CHECK(ks::indices(g.zeros_integer) == std::vector<int>{m.index.x(0, 1)});
  CHECK(g.zeros_binary.size() == 1);
  CHECK(ks::fix_variables(relax, m, kInf, ks::Variant::KSFVG).empty());
}

TEST_CASE("restricted problems") {
  const auto inst = generated(10, 0.2, 3);
  const model::VmcpModel m = model::build_mip(inst);
  ks::KernelState all;
  all.working_set = m.binaries;
  const mip::MipResult full = mip::solve_mip(ks::make_restricted(m, all, {}, std::nullopt, std::nullopt));
  CHECK(*full.objective == doctest::Approx(exact_objective(inst)).epsilon(1e-9));

  ks::KernelState none;
  CHECK(mip::solve_mip(ks::make_restricted(m, none, {}, std::nullopt, std::nullopt)).status ==
        mip::MipStatus::Infeasible);

  ks::KernelState part;
  part.working_set = {m.binaries[0], m.binaries[1]};
  CHECK_THROWS_AS(ks::make_restricted(m, part, {}, std::vector<int>{}, std::nullopt), EmptyBucket);
  const mip::MipProblem cut = ks::make_restricted(m, part, {}, std::vector<int>{m.binaries[5]}, 1e9);
  CHECK(cut.extra_constraints.size() == 2);
}

TEST_CASE("restriction never beats the full problem") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::random_tiny_instance(rng);
    const auto best = testing::brute_force_vmcp(inst);
    if (!best) continue;
    const model::VmcpModel m = model::build_mip(inst);
    ks::KernelState s;
    for (int j : m.binaries) {
      if (rng() % 2) s.working_set.push_back(j);
    }
    const mip::MipResult r = mip::solve_mip(ks::make_restricted(m, s, {}, std::nullopt, std::nullopt));
    if (r.objective) CHECK(*r.objective >= *best - 1e-9);
  }
}

TEST_CASE("expansion absorbs the one mandatory server") {
  // Six VM 1 need two of the three 4-core servers.
  const auto inst = testing::catalog_instance({1, 1, 1}, {1}, {{4, 2, 0}}, {0});
  const model::VmcpModel m = model::build_mip(inst);
  ks::KernelState s;
  s.kernel = {m.binaries[0]};
  s.working_set = s.kernel;
  s.buckets = {{m.binaries[1]}, {m.binaries[2]}};
  s.bucket_size = 1;
  CHECK(mip::solve_mip(ks::make_restricted(m, s, {}, std::nullopt, std::nullopt)).status ==
        mip::MipStatus::Infeasible);

  std::vector<ks::TraceRecord> trace;
  ks::KsParams p;
  const mip::MipResult r = ks::expand_kernel_until_feasible(
      m, s, {}, p, [](const ks::KernelState&) { return 10.0; },
      [&](const ks::TraceRecord& t) { trace.push_back(t); });
  CHECK(r.has_solution());
  CHECK(trace.size() == 1);
  CHECK(s.kernel == std::vector<int>{m.binaries[0], m.binaries[1]});
  REQUIRE(s.buckets.size() == 1);
  CHECK(s.buckets[0] == std::vector<int>{m.binaries[2]});
  CHECK(*r.objective == doctest::Approx(*testing::brute_force_vmcp(inst)));
}

TEST_CASE("expansion runs out when every server is fixed to zero") {
  const auto inst = testing::catalog_instance({1, 1}, {1}, {{2, 0}}, {0});
  const model::VmcpModel m = model::build_mip(inst);
  ks::KernelState s;
  ks::FixingSets f;
  for (int j : m.binaries) f.zeros_binary.push_back({j, 1.0});
  ks::KsParams p;
  CHECK_THROWS_AS(ks::expand_kernel_until_feasible(
                      m, s, f, p, [](const ks::KernelState&) { return 1.0; },
                      [](const ks::TraceRecord&) {}),
                  StillInfeasible);
}

TEST_CASE("integral relaxation ends at the kernel") {
  const auto inst = testing::catalog_instance({1, 2, 3}, {1, 2}, {{0, 0, 0}, {0, 0, 0}}, {0, 0});
  const ks::KsResult r = ks::run_kernel_search(inst, quick(ks::Variant::KSFVG));
  REQUIRE(r.status == ks::KsStatus::Solved);
  CHECK(r.ub_min == 0.0);
  REQUIRE(!r.trace.empty());
  CHECK(r.trace[0].phase == "kernel");
  CHECK(r.trace[0].status == mip::MipStatus::Optimal);
  CHECK(r.trace[0].nodes == 1);
}

TEST_CASE("kernel search invariants on generated instances") {
  for (ks::Variant v : {ks::Variant::KSF, ks::Variant::KSFV, ks::Variant::KSFVG}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto inst = generated(10, seed % 2 ? 0.4 : 0.2, seed);
      const model::VmcpModel m = model::build_mip(inst);
      ks::KsParams p = quick(v);
      p.kernel_size = 3;
      std::vector<ks::KernelState> states;
      ks::FixingSets seen_fixings;
      const ks::KsResult r = ks::run_kernel_search(
          inst, p, [&](const ks::KernelState& s, const ks::FixingSets& f) {
            states.push_back(s);
            seen_fixings = f;
            // Partition: working set, pending buckets and fixed binaries.
            std::multiset<int> cover(s.working_set.begin(), s.working_set.end());
            for (std::size_t b = static_cast<std::size_t>(s.bucket_cursor); b < s.buckets.size(); ++b) {
              cover.insert(s.buckets[b].begin(), s.buckets[b].end());
            }
            for (const auto& z : f.zeros_binary) cover.insert(z.var);
            for (const auto& o : f.ones_binary) cover.insert(o.var);
            CHECK(cover.size() == m.binaries.size());
            CHECK(std::set<int>(cover.begin(), cover.end()) ==
                  std::set<int>(m.binaries.begin(), m.binaries.end()));
          });
      REQUIRE(r.status == ks::KsStatus::Solved);
      REQUIRE(r.plan);
      CHECK(model::check_plan(inst, *r.plan).empty());
      CHECK(model::plan_cost(inst, *r.plan) == doctest::Approx(r.ub_min).epsilon(1e-9));
      CHECK(r.ub_min >= exact_objective(inst) - 1e-6);

      double last = kInf;
      int expansions = 0, buckets = 0;
      for (const auto& t : r.trace) {
        CHECK(t.ub_min <= last);
        last = t.ub_min;
        expansions += t.phase == "expand";
        buckets += t.phase == "bucket";
      }
      CHECK(static_cast<int>(r.trace.size()) <= buckets + 1 + expansions);

      if (r.fallback_level == 0) {
        for (const auto& z : seen_fixings.zeros_binary) CHECK(r.plan->y[m.index.server_of_y(z.var)] == 0);
        for (const auto& o : seen_fixings.ones_binary) CHECK(r.plan->y[m.index.server_of_y(o.var)] == 1);
        for (const auto& z : seen_fixings.zeros_integer) {
          const int block = z.var / (inst.num_types() * inst.num_servers());
          const int rest = z.var % (inst.num_types() * inst.num_servers());
          const int i = rest / inst.num_servers(), j = rest % inst.num_servers();
          const int value = block == 0 ? r.plan->x(i, j) : block == 1 ? r.plan->z(i, j) : r.plan->x_new(i, j);
          CHECK(value == 0);
        }
        // The cutoff at UB_min still admits the plan that produced it.
        REQUIRE(!states.empty());
        ks::KernelState last_state = states.back();
        const mip::MipResult again = mip::solve_mip(
            ks::make_restricted(m, last_state, seen_fixings, std::nullopt, r.ub_min));
        CHECK(again.has_solution());
      }
    }
  }
}

TEST_CASE("without fixings the fixing variant repeats the plain one") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto inst = generated(10, 0.4, 100 + seed);
    ks::KsParams a = quick(ks::Variant::KSF);
    ks::KsParams b = quick(ks::Variant::KSFVG);
    b.epsilon = kInf;
    const ks::KsResult ra = ks::run_kernel_search(inst, a);
    const ks::KsResult rb = ks::run_kernel_search(inst, b);
    REQUIRE(ra.trace.size() == rb.trace.size());
    for (std::size_t k = 0; k < ra.trace.size(); ++k) {
      CHECK(ra.trace[k].phase == rb.trace[k].phase);
      CHECK(ra.trace[k].bucket == rb.trace[k].bucket);
      CHECK(ra.trace[k].working_size == rb.trace[k].working_size);
      CHECK(ra.trace[k].status == rb.trace[k].status);
      CHECK(ra.trace[k].ub_i == rb.trace[k].ub_i);
      CHECK(ra.trace[k].nodes == rb.trace[k].nodes);
    }
    CHECK(ra.ub_min == rb.ub_min);
  }
}

TEST_CASE("seed 42 at beta 0.4") {
  gen::GenParams g;
  g.num_servers = 10;
  g.beta = 0.4;
  g.seed = 42;
  const auto inst = gen::generate_instance(g);
  const double exact = exact_objective(inst);
  const ks::KsResult vg = ks::run_kernel_search(inst, quick(ks::Variant::KSFVG));
  const ks::KsResult f = ks::run_kernel_search(inst, quick(ks::Variant::KSF));
  REQUIRE(vg.plan);
  REQUIRE(f.plan);
  const int fixed = vg.fixing_stats.zeros_binary + vg.fixing_stats.ones_binary +
                    vg.fixing_stats.zeros_integer;
  CHECK(fixed > 0);
  CHECK(f.ub_min >= exact - 1e-6);
  CHECK(vg.ub_min >= exact - 1e-6);
  CHECK(f.ub_min <= 1.01 * exact);
  // The 1% bound for the fixing variant is measured by the acceptance suite
  // (criterion 3); here the plain LP fixes a server on that the optimum drops.
  MESSAGE("exact " << exact << " ksf " << f.ub_min << " ksfvg " << vg.ub_min);
}

TEST_CASE("parameter validation") {
  const auto inst = testing::catalog_instance({1}, {1}, {{1}}, {0});
  ks::KsParams p;
  p.omega = 0;
  CHECK_THROWS_AS(ks::run_kernel_search(inst, p), InvalidModel);
  p = {};
  p.epsilon = -1;
  CHECK_THROWS_AS(ks::run_kernel_search(inst, p), InvalidModel);
  p = {};
  p.t_max = 0;
  CHECK_THROWS_AS(ks::run_kernel_search(inst, p), InvalidModel);
}
