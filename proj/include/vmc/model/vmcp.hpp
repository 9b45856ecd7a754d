#pragma once

#include <span>
#include <string>
#include <vector>

#include "vmc/mip/mip_problem.hpp"
#include "vmc/model/instance.hpp"

namespace vmc::model {

// v_{i,j} = min(d_i, min_r floor(s_{j,r} / u_{i,r})); ratios with u = 0 impose nothing.
int upper_bound_v(const Instance& inst, int i, int j);

enum class ObjectiveMode {
  Assignment,  // c_assign . x
  CurrentAllocation  // c_assign . n, a constant folded into the offset
};

// Column layout of the built MILP. Every block is |I| x |J| row-major except y.
struct VmcpIndex {
  int types = 0;
  int servers = 0;

  int x(int i, int j) const { return i * servers + j; }
  int z(int i, int j) const { return block() + i * servers + j; }
  int x_new(int i, int j) const { return 2 * block() + i * servers + j; }
  int y(int j) const { return 3 * block() + j; }
  int num_vars() const { return 3 * block() + servers; }
  bool is_y(int var) const { return var >= 3 * block(); }
  int server_of_y(int var) const { return var - 3 * block(); }

 private:
  int block() const { return types * servers; }
};

struct VmcpModel {
  mip::MipProblem problem;
  VmcpIndex index;
  std::vector<int> binaries;  // y columns in server order
};

// Rows, in order: capacity (r, j), migration (i, j), old demand i, new demand i.
VmcpModel build_mip(const Instance& inst, ObjectiveMode mode = ObjectiveMode::Assignment);

// Rounds a solver vector back into a plan.
Plan extract_plan(const VmcpIndex& index, std::span<const double> values);

struct PlanViolation {
  std::string family;  // "capacity", "migration", "demand_old", "demand_new", "domain"
  int i = -1;          // type, or -1
  int j = -1;          // server, or -1
  int r = -1;          // resource, or -1
  double slack = 0.0;  // negative when violated
};

// Re-evaluates every constraint directly from the instance data.
std::vector<PlanViolation> check_plan(const Instance& inst, const Plan& plan);

double plan_cost(const Instance& inst, const Plan& plan);

}  // namespace vmc::model
