#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vmc/kernels/sparse_kernels.hpp"
#include "vmc/mip/mip_problem.hpp"

namespace vmc::mip {

struct SolveConfig {
  double time_limit = kInf;  // seconds
  double gap_tol = 0.0;      // relative to max(1, |incumbent|)
  std::optional<long> node_limit;
  std::uint64_t seed = 0;
  double int_tol = 1e-6;
  double feas_tol = 1e-6;
  kernels::Exec exec = kernels::Exec::Parallel;
  // Branch on fractional binaries before general integers.
  bool binaries_first = true;
  // Nodes between rounding dives while no incumbent exists (ten times that
  // afterwards). 0 disables diving.
  long dive_interval = 50;
};

enum class MipStatus { Optimal, FeasibleTimeLimit, Infeasible, NoSolutionTimeLimit, Unbounded };

const char* to_string(MipStatus s);

struct ProgressPoint {
  long nodes;
  double best_bound;
  double incumbent;  // +inf while none
};

struct MipResult {
  MipStatus status = MipStatus::Infeasible;
  std::optional<std::vector<double>> incumbent;
  std::optional<double> objective;
  double best_bound = -kInf;
  long nodes = 0;
  long lp_iterations = 0;
  double wall_time = 0.0;
  // One point per bound or incumbent change.
  std::vector<ProgressPoint> progress;

  bool has_solution() const { return incumbent.has_value(); }
};

// LP-based branch and bound: best-bound node selection with depth-first
// plunging, most-fractional branching (ties to the smallest index), dual
// simplex warm starts from the parent basis. A rounding dive runs at the root
// and periodically to find incumbents early. Single-threaded; instances are
// independent so several may run concurrently on different problems.
MipResult solve_mip(const MipProblem& problem, const SolveConfig& config = {});

}  // namespace vmc::mip
