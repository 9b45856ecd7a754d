#pragma once

#include <span>
#include <vector>

#include "vmc/lp/linear_program.hpp"

namespace vmc::lp {

// An LP with fixed columns substituted out, redundant rows dropped, and
// forcing rows (activity pinned at a bound) turned into column fixings.
// Every fixing is implied by the original bounds, so the reduction stays
// valid under any later tightening of the kept columns' bounds.
struct ReducedProgram {
  LinearProgram lp;
  std::vector<int> kept;        // reduced column -> original column
  std::vector<int> position;    // original column -> reduced column, or -1
  std::vector<double> value;    // original column value when eliminated
  bool infeasible = false;

  std::vector<double> expand(std::span<const double> reduced_x) const;
};

ReducedProgram reduce_program(const LinearProgram& lp, double tol = 1e-9);

}  // namespace vmc::lp
