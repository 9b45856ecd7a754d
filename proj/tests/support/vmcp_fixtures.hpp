#pragma once

#include <optional>
#include <random>
#include <vector>

#include "vmc/model/instance.hpp"

namespace vmc::testing {

// Instance over catalog rows (1-based type numbers), costs from the power model.
model::Instance catalog_instance(const std::vector<int>& server_types,
                                 const std::vector<int>& vm_types,
                                 const std::vector<std::vector<int>>& n,
                                 const std::vector<int>& d_new);

// Tiny random instance: 2-3 servers, 1-2 VM types, a handful of VMs.
model::Instance random_tiny_instance(std::mt19937_64& rng);

// Cheapest plan by visiting every (y, x, x_new, z) in the box
// x, z <= min(d_i, fit), x_new <= min(d_new_i, fit). Feasibility and cost are
// evaluated here from the raw data. nullopt when nothing is feasible.
std::optional<double> brute_force_vmcp(const model::Instance& inst);

}  // namespace vmc::testing
