#include <doctest.h>

#include <random>

#include "../support/vmcp_fixtures.hpp"
#include "vmc/bench/io.hpp"
#include "vmc/error.hpp"
#include "vmc/gen/generator.hpp"

using namespace vmc;

TEST_CASE("catalog rows") {
  const gen::Catalog& c = gen::catalog();
  REQUIRE(c.vm_types.size() == 5);
  REQUIRE(c.server_types.size() == 10);
  CHECK(c.resources == std::vector<std::string>{"cpu", "ram", "bw"});
  CHECK(c.vm_types[2].demand == std::vector<double>{4, 8, 300});
  CHECK(c.server_types[6].capacity == std::vector<double>{16, 32, 4000});
  CHECK(c.server_types[6].p_max == 300);
  CHECK(c.server_types[0].capacity == std::vector<double>{4, 8, 1000});
  CHECK(c.server_types[9].p_max == 410);
  CHECK(c.vm_types[4].demand == std::vector<double>{8, 16, 1200});
}

TEST_CASE("sigma of simple loads") {
  auto inst = testing::catalog_instance({1, 2}, {1}, {{1, 0}}, {0});
  CHECK(gen::sigma_k(inst, 0) == doctest::Approx(0.25));
  CHECK(gen::sigma_k(inst, 1) == 0.0);
  CHECK(gen::sigma_k(inst, 0) == gen::sigma_k(inst, 0));
}

TEST_CASE("tau over aggregate capacity") {
  auto inst = testing::catalog_instance({2, 2}, {1}, {{0, 0}}, {0});
  CHECK(gen::tau(inst) == 0.0);
  inst.d_new = {16};
  CHECK(gen::tau(inst) == doctest::Approx(1.0));

  std::mt19937_64 rng(5);
  auto many = testing::catalog_instance({1, 4, 9}, {1, 2, 3}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}},
                                        {0, 0, 0});
  double last = gen::tau(many);
  for (int step = 0; step < 200; ++step) {
    many.d_new[rng() % 3] += static_cast<int>(rng() % 3);
    const double now = gen::tau(many);
    CHECK(now >= last);
    last = now;
  }
}

TEST_CASE("power-model costs") {
  const gen::Catalog& c = gen::catalog();
  const model::CostTable t = gen::derive_costs(c.vm_types, c.server_types);
  CHECK(t.run[0] == doctest::Approx(108));
  CHECK(t.assign(0, 0) == doctest::Approx(18));
  // VM 5 on server 10: 0.4 * 410 * 8 / 18
  CHECK(t.assign(4, 9) == doctest::Approx(0.4 * 410 * 8 / 18));
  CHECK(t.mig == t.assign);
  CHECK(t.fresh == t.assign);

  std::vector<model::ServerSpec> doubled = c.server_types;
  for (auto& s : doubled) s.p_max *= 2;
  const model::CostTable d = gen::derive_costs(c.vm_types, doubled);
  for (std::size_t j = 0; j < doubled.size(); ++j) {
    CHECK(d.run[j] == doctest::Approx(2 * t.run[j]));
    for (std::size_t i = 0; i < c.vm_types.size(); ++i) {
      CHECK(d.assign(i, j) == doctest::Approx(2 * t.assign(i, j)));
    }
  }
  const model::CostTable f = gen::derive_costs(c.vm_types, c.server_types, {}, 1.5);
  CHECK(f.fresh(2, 3) == doctest::Approx(1.5 * t.assign(2, 3)));
}

TEST_CASE("same parameters give the same instance") {
  gen::GenParams p;
  p.num_servers = 10;
  p.seed = 7;
  const model::Instance a = gen::generate_instance(p);
  const model::Instance b = gen::generate_instance(p);
  CHECK(a == b);
  CHECK(bench::instance_to_json(a).dump() == bench::instance_to_json(b).dump());
  p.seed = 8;
  CHECK(!(gen::generate_instance(p) == a));
  REQUIRE(a.generator);
  CHECK(a.generator->seed == 7);
  CHECK(a.generator->spec_version == gen::kSpecVersion);
  CHECK(a.generator->rng == gen::kRngName);
}

namespace {

bool any_fits(const model::Instance& inst, int k) {
  for (int i = 0; i < inst.num_types(); ++i) {
    bool ok = true;
    for (int r = 0; r < inst.num_resources(); ++r) {
      double used = 0;
      for (int t = 0; t < inst.num_types(); ++t) used += inst.demand(t, r) * inst.n(t, k);
      ok = ok && used + inst.demand(i, r) <= inst.capacity(k, r);
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("generated instances meet their targets") {
  for (int servers : {10, 20, 60}) {
    for (double beta : {0.2, 0.4}) {
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        gen::GenParams p;
        p.num_servers = servers;
        p.beta = beta;
        p.seed = seed;
        const model::Instance inst = gen::generate_instance(p);
        inst.validate();
        CHECK(inst.num_servers() == servers);
        CHECK(gen::tau(inst) > p.gamma);
        std::vector<int> per_type(11, 0);
        for (const auto& s : inst.servers) ++per_type[s.type];
        for (int t = 1; t <= 10; ++t) CHECK(per_type[t] == servers / 10);
        for (int k = 0; k < servers; ++k) {
          bool loaded = false;
          for (int i = 0; i < inst.num_types(); ++i) loaded |= inst.n(i, k) > 0;
          for (int r = 0; r < inst.num_resources(); ++r) {
            double used = 0;
            for (int i = 0; i < inst.num_types(); ++i) used += inst.demand(i, r) * inst.n(i, k);
            CHECK(used <= inst.capacity(k, r));
          }
          if (loaded) CHECK((gen::sigma_k(inst, k) > beta || !any_fits(inst, k)));
        }
        for (int r = 0; r < inst.num_resources(); ++r) {
          double need = 0, cap = 0;
          for (int i = 0; i < inst.num_types(); ++i) {
            need += inst.demand(i, r) * (inst.old_count(i) + inst.d_new[i]);
          }
          for (int j = 0; j < servers; ++j) cap += inst.capacity(j, r);
          CHECK(need <= cap);
        }
        CHECK(gen::new_demand_packs(inst));
      }
    }
  }
}

TEST_CASE("server counts not divisible by ten favor low types") {
  gen::GenParams p;
  p.num_servers = 13;
  const model::Instance inst = gen::generate_instance(p);
  std::vector<int> per_type(11, 0);
  for (const auto& s : inst.servers) ++per_type[s.type];
  for (int t = 1; t <= 3; ++t) CHECK(per_type[t] == 2);
  for (int t = 4; t <= 10; ++t) CHECK(per_type[t] == 1);
}

TEST_CASE("loaded share follows alpha") {
  gen::GenParams p;
  p.num_servers = 200;
  p.alpha = 0.5;
  p.seed = 3;
  const model::Instance inst = gen::generate_instance(p);
  int loaded = 0;
  for (int k = 0; k < p.num_servers; ++k) {
    int count = 0;
    for (int i = 0; i < inst.num_types(); ++i) count += inst.n(i, k);
    loaded += count > 0;
  }
  // Binomial(200, 0.5): six standard deviations either side.
  CHECK(loaded > 100 - 43);
  CHECK(loaded < 100 + 43);
}

TEST_CASE("bad parameters and impossible targets") {
  gen::GenParams p;
  p.alpha = 0.0;
  CHECK_THROWS_AS(gen::generate_instance(p), InvalidModel);
  p = {};
  p.beta = 1.5;
  CHECK_THROWS_AS(gen::generate_instance(p), InvalidModel);
  p = {};
  p.num_servers = 0;
  CHECK_THROWS_AS(gen::generate_instance(p), InvalidModel);
  p = {};
  p.gamma = 1.0;
  p.alpha = 1.0;
  CHECK_THROWS_AS(gen::generate_instance(p), GenerationStalled);
}

TEST_CASE("first-fit packing of the new demand") {
  auto inst = testing::catalog_instance({1}, {2}, {{1}}, {1});
  CHECK(gen::new_demand_packs(inst));
  inst.d_new = {2};
  CHECK(!gen::new_demand_packs(inst));
}
