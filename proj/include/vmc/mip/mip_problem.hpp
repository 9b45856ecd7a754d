#pragma once

#include <optional>
#include <span>
#include <vector>

#include "vmc/lp/linear_program.hpp"

namespace vmc::mip {

enum class VarKind { Continuous, Integer, Binary };

struct MipProblem {
  lp::LinearProgram base;
  std::vector<VarKind> kinds;
  std::vector<std::optional<double>> fixed_values;
  // Appended after the base rows; cutoff and piercing cuts land here.
  std::vector<lp::Constraint> extra_constraints;

  int num_vars() const { return base.num_vars; }
  bool is_integral(int j) const { return kinds[j] != VarKind::Continuous; }

  // Throws InvalidModel when kinds/fixings are inconsistent with the base LP.
  void validate() const;

  // Base rows + extra rows, with pinned values folded into the bounds.
  lp::LinearProgram relaxation() const;

  // Largest violation of bounds, pins, rows and integrality at x. Evaluated
  // directly from the problem data.
  double max_violation(std::span<const double> x, double int_tol = 1e-6) const;
  double objective_value(std::span<const double> x) const { return base.evaluate(x); }
};

// Builds a MipProblem with every variable continuous and nothing pinned.
MipProblem make_problem(lp::LinearProgram base);

// Pins `zeros` to 0 and `ones` to 1. The input problem is not modified.
MipProblem apply_fixings(const MipProblem& problem, std::span<const int> zeros,
                         std::span<const int> ones);

// Appends objective . x + offset <= ub as a linear row.
MipProblem add_cutoff(const MipProblem& problem, double ub);

// Appends sum_{j in bucket} x_j >= 1. Bucket members must be binaries.
MipProblem add_piercing_cut(const MipProblem& problem, std::span<const int> bucket);

}  // namespace vmc::mip
