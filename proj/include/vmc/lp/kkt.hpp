#pragma once

#include <string>
#include <vector>

#include "vmc/lp/linear_program.hpp"

namespace vmc::lp {

struct KktViolation {
  enum class Kind {
    PrimalBound,       // x_j outside [l_j, u_j]
    PrimalRow,         // row activity violates its relation
    DualSign,          // row multiplier has the wrong sign for its relation
    ReducedCostSign,   // r_j points out of the box at x_j
    ReducedCostValue,  // r_j != c_j - y . A_j
    Complementarity,   // nonzero multiplier on an inactive row or bound
    DualityGap,        // |primal objective - dual objective| too large
  };
  Kind kind;
  int index;  // variable or row index; -1 for DualityGap
  double magnitude;
};

const char* to_string(KktViolation::Kind kind);

// Independent optimality certificate for an LP solution. Checks everything
// from the problem data and the reported primal/dual vectors; does not touch
// solver internals. Tolerances are scaled by max(1, |reference|).
std::vector<KktViolation> verify_kkt(const LinearProgram& lp, const LpSolution& sol,
                                     double tol = 1e-6);

// Dual objective sum_i y_i b_i + sum_j (r_j at the bound it pushes against).
double dual_objective(const LinearProgram& lp, const LpSolution& sol);

}  // namespace vmc::lp
