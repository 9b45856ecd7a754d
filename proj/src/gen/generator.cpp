#include "vmc/gen/generator.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include <spdlog/spdlog.h>

#include "vmc/error.hpp"

namespace vmc::gen {

void GenParams::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (num_servers < 1) throw InvalidModel("num_servers must be positive");
  if (!in_unit(alpha) || !in_unit(beta) || !in_unit(gamma)) {
    throw InvalidModel("alpha, beta and gamma must lie in (0, 1]");
  }
  if (power.p_idle_fraction < 0.0 || power.p_idle_fraction > 1.0) {
    throw InvalidModel("p_idle_fraction must lie in [0, 1]");
  }
  if (!(new_cost_factor >= 0.0)) throw InvalidModel("new_cost_factor must be non-negative");
}

const Catalog& catalog() {
  static const Catalog c = [] {
    Catalog out;
    out.resources = {"cpu", "ram", "bw"};
    out.vm_types = {
        {{1, 1, 10}}, {{2, 4, 100}}, {{4, 8, 300}}, {{6, 12, 1000}}, {{8, 16, 1200}},
    };
    const double servers[10][4] = {
        {4, 8, 1000, 180},   {8, 16, 1000, 200},  {10, 16, 2000, 250}, {12, 32, 2000, 250},
        {14, 32, 2000, 280}, {14, 32, 2000, 300}, {16, 32, 4000, 300}, {16, 64, 4000, 350},
        {18, 64, 4000, 380}, {18, 64, 4000, 410},
    };
    for (int t = 0; t < 10; ++t) {
      const double* s = servers[t];
      out.server_types.push_back({t + 1, {s[0], s[1], s[2]}, s[3]});
    }
    return out;
  }();
  return c;
}

double sigma_k(const model::Instance& inst, int k) {
  double peak = 0.0;
  for (int r = 0; r < inst.num_resources(); ++r) {
    double used = 0.0;
    for (int i = 0; i < inst.num_types(); ++i) used += inst.demand(i, r) * inst.n(i, k);
    const double cap = inst.capacity(k, r);
    if (used > 0.0) peak = std::max(peak, cap > 0.0 ? used / cap : kInf);
  }
  return peak;
}

double tau(const model::Instance& inst) {
  double peak = 0.0;
  for (int r = 0; r < inst.num_resources(); ++r) {
    double used = 0.0;
    for (int i = 0; i < inst.num_types(); ++i) used += inst.demand(i, r) * inst.d_new[i];
    double cap = 0.0;
    for (int j = 0; j < inst.num_servers(); ++j) cap += inst.capacity(j, r);
    if (used > 0.0) peak = std::max(peak, cap > 0.0 ? used / cap : kInf);
  }
  return peak;
}

model::CostTable derive_costs(const std::vector<model::VmSpec>& vm_types,
                              const std::vector<model::ServerSpec>& servers,
                              const PowerModel& pm, double new_cost_factor) {
  const std::size_t types = vm_types.size();
  const std::size_t srv = servers.size();
  model::CostTable c;
  c.run.resize(srv);
  c.assign = Matrix<double>(types, srv);
  c.mig = Matrix<double>(types, srv);
  c.fresh = Matrix<double>(types, srv);
  for (std::size_t j = 0; j < srv; ++j) {
    const double p_max = servers[j].p_max;
    const double idle = pm.p_idle_fraction * p_max;
    c.run[j] = idle;
    const double cpu = servers[j].capacity.at(0);
    for (std::size_t i = 0; i < types; ++i) {
      const double a = cpu > 0.0 ? (p_max - idle) * vm_types[i].demand.at(0) / cpu : 0.0;
      c.assign(i, j) = a;
      c.mig(i, j) = a;
      c.fresh(i, j) = new_cost_factor * a;
    }
  }
  return c;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Substream s of attempt a: servers use s = j, the new demand uses s = |J|.
std::mt19937_64 substream(std::uint64_t seed, int attempt, int stream) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(attempt));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(stream) + 0x100000000ULL));
  return std::mt19937_64(h);
}

// Uniform in [0, bound) by rejection; the std distributions are not
// specified bit-for-bit across library implementations.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t v = rng();
    if (v >= threshold) return v % bound;
  }
}

double draw_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

bool fits(const model::Instance& inst, const std::vector<double>& residual, int i) {
  for (int r = 0; r < inst.num_resources(); ++r) {
    if (inst.demand(i, r) > residual[r]) return false;
  }
  return true;
}

void load_server(model::Instance& inst, int k, double beta, std::mt19937_64& rng) {
  std::vector<double> residual = inst.servers[k].capacity;
  std::vector<int> candidates;
  for (;;) {
    candidates.clear();
    for (int i = 0; i < inst.num_types(); ++i) {
      if (fits(inst, residual, i)) candidates.push_back(i);
    }
    if (candidates.empty()) return;
    const int i = candidates[draw_below(rng, candidates.size())];
    inst.n(i, k) += 1;
    for (int r = 0; r < inst.num_resources(); ++r) residual[r] -= inst.demand(i, r);
    if (sigma_k(inst, k) > beta) return;
  }
}

bool aggregate_fits(const model::Instance& inst) {
  for (int r = 0; r < inst.num_resources(); ++r) {
    double need = 0.0;
    double cap = 0.0;
    for (int i = 0; i < inst.num_types(); ++i) {
      need += inst.demand(i, r) * (inst.old_count(i) + inst.d_new[i]);
    }
    for (int j = 0; j < inst.num_servers(); ++j) cap += inst.capacity(j, r);
    if (need > cap) return false;
  }
  return true;
}

}  // namespace

bool new_demand_packs(const model::Instance& inst) {
  const int res = inst.num_resources();
  std::vector<std::vector<double>> residual;
  for (int j = 0; j < inst.num_servers(); ++j) {
    std::vector<double> left = inst.servers[j].capacity;
    for (int i = 0; i < inst.num_types(); ++i) {
      for (int r = 0; r < res; ++r) left[r] -= inst.demand(i, r) * inst.n(i, j);
    }
    residual.push_back(std::move(left));
  }
  // Largest type first by summed demand.
  std::vector<int> order(inst.num_types());
  std::iota(order.begin(), order.end(), 0);
  auto size = [&](int i) {
    double s = 0.0;
    for (int r = 0; r < res; ++r) s += inst.demand(i, r);
    return s;
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return size(a) > size(b); });
  for (int i : order) {
    int left = inst.d_new[i];
    for (int j = 0; j < inst.num_servers() && left > 0; ++j) {
      while (left > 0 && fits(inst, residual[j], i)) {
        for (int r = 0; r < res; ++r) residual[j][r] -= inst.demand(i, r);
        --left;
      }
    }
    if (left > 0) return false;
  }
  return true;
}

model::Instance generate_instance(const GenParams& params) {
  params.validate();
  const Catalog& cat = catalog();
  const int num_types = static_cast<int>(cat.vm_types.size());
  const int num_server_types = static_cast<int>(cat.server_types.size());
  const int srv = params.num_servers;

  model::Instance base;
  base.resources = cat.resources;
  base.vm_types = cat.vm_types;
  const int per_type = srv / num_server_types;
  const int extra = srv % num_server_types;
  for (int t = 0; t < num_server_types; ++t) {
    const int count = per_type + (t < extra ? 1 : 0);
    for (int c = 0; c < count; ++c) base.servers.push_back(cat.server_types[t]);
  }
  base.costs = derive_costs(base.vm_types, base.servers, params.power, params.new_cost_factor);

  constexpr int kMaxAttempts = 10;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    model::Instance inst = base;
    inst.n = Matrix<int>(num_types, srv);
    inst.d_new.assign(num_types, 0);
    for (int k = 0; k < srv; ++k) {
      std::mt19937_64 rng = substream(params.seed, attempt, k);
      if (draw_unit(rng) < params.alpha) load_server(inst, k, params.beta, rng);
    }
    std::mt19937_64 rng = substream(params.seed, attempt, srv);
    while (tau(inst) <= params.gamma) {
      inst.d_new[draw_below(rng, num_types)] += 1;
    }
    if (!aggregate_fits(inst) || !new_demand_packs(inst)) {
      spdlog::info("generator attempt {} rejected (seed {})", attempt, params.seed);
      continue;
    }
    inst.generator = model::GeneratorHeader{kSpecVersion,       kRngName,     params.seed,
                                            attempt,            srv,          params.alpha,
                                            params.beta,        params.gamma};
    return inst;
  }
  throw GenerationStalled("no feasible instance after " + std::to_string(kMaxAttempts) +
                          " attempts");
}

}  // namespace vmc::gen
