#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vmc/matrix.hpp"

namespace vmc::model {

struct VmSpec {
  std::vector<double> demand;  // u_{i,r}

  bool operator==(const VmSpec&) const = default;
};

struct ServerSpec {
  int type = 0;                  // catalog row, 1-based; 0 when hand-built
  std::vector<double> capacity;  // s_{j,r}
  double p_max = 0.0;            // watts

  bool operator==(const ServerSpec&) const = default;
};

struct CostTable {
  std::vector<double> run;  // per server
  Matrix<double> assign;    // |I| x |J|
  Matrix<double> mig;
  Matrix<double> fresh;     // cost of placing a new VM

  bool operator==(const CostTable&) const = default;
};

// Provenance written by the generator and carried through the JSON form.
struct GeneratorHeader {
  std::string spec_version;
  std::string rng;
  std::uint64_t seed = 0;
  int attempt = 0;
  int num_servers = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  bool operator==(const GeneratorHeader&) const = default;
};

struct Instance {
  std::optional<GeneratorHeader> generator;
  std::vector<std::string> resources;
  std::vector<VmSpec> vm_types;
  std::vector<ServerSpec> servers;
  Matrix<int> n;            // current allocation, |I| x |J|
  std::vector<int> d_new;
  CostTable costs;

  int num_types() const { return static_cast<int>(vm_types.size()); }
  int num_servers() const { return static_cast<int>(servers.size()); }
  int num_resources() const { return static_cast<int>(resources.size()); }

  double demand(int i, int r) const { return vm_types[i].demand[r]; }
  double capacity(int j, int r) const { return servers[j].capacity[r]; }

  // d_i = sum_j n_{i,j}
  int old_count(int i) const;

  // Throws InvalidModel on shape mismatches, negative data or non-finite values.
  void validate() const;

  bool operator==(const Instance&) const = default;
};

struct Plan {
  Matrix<int> x;
  std::vector<int> y;
  Matrix<int> z;
  Matrix<int> x_new;

  bool operator==(const Plan&) const = default;
};

// All-zero plan shaped for `inst`.
Plan empty_plan(const Instance& inst);

}  // namespace vmc::model
