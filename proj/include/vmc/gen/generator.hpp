#pragma once

#include <cstdint>
#include <vector>

#include "vmc/model/instance.hpp"

namespace vmc::gen {

inline constexpr const char* kSpecVersion = "1.0";
inline constexpr const char* kRngName = "mt19937_64/splitmix64-substreams";

struct PowerModel {
  double p_idle_fraction = 0.6;
};

struct GenParams {
  int num_servers = 10;
  double alpha = 0.5;
  double beta = 0.2;
  double gamma = 0.5;
  std::uint64_t seed = 0;
  PowerModel power;
  double new_cost_factor = 1.0;  // c_new = factor * c_assign

  // Throws InvalidModel when a parameter is out of range.
  void validate() const;
};

struct Catalog {
  std::vector<std::string> resources;  // cpu, ram, bw
  std::vector<model::VmSpec> vm_types;
  std::vector<model::ServerSpec> server_types;  // type ids 1..10
};

// The five VM types and ten server types of the reference experiments.
const Catalog& catalog();

// Peak per-resource load of server k under the current allocation.
double sigma_k(const model::Instance& inst, int k);

// Peak per-resource load of the new demand against aggregate capacity.
double tau(const model::Instance& inst);

// Fills run/assign/mig/fresh from the linear power model. Resource 0 is CPU.
model::CostTable derive_costs(const std::vector<model::VmSpec>& vm_types,
                              const std::vector<model::ServerSpec>& servers,
                              const PowerModel& pm = {}, double new_cost_factor = 1.0);

// Deterministic in `params`. Throws GenerationStalled after 10 rejected attempts.
model::Instance generate_instance(const GenParams& params);

// True when the new demand packs first-fit-decreasing into the capacity left
// over by the current allocation. Sufficient (not necessary) for feasibility.
bool new_demand_packs(const model::Instance& inst);

}  // namespace vmc::gen
