#include "vmc/mip/mip_problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_set>

namespace vmc::mip {

void MipProblem::validate() const {
  base.validate();
  const int n = base.num_vars;
  if (static_cast<int>(kinds.size()) != n || static_cast<int>(fixed_values.size()) != n) {
    throw InvalidModel("kinds/fixed_values size does not match the base LP");
  }
  for (int j = 0; j < n; ++j) {
    const lp::Bounds& b = base.bounds[j];
    if (kinds[j] == VarKind::Binary && (b.lower < 0.0 || b.upper > 1.0)) {
      throw InvalidModel("binary x" + std::to_string(j) + " has bounds outside [0,1]");
    }
    if (const auto& v = fixed_values[j]) {
      if (*v < b.lower || *v > b.upper) {
        throw InvalidModel("pinned value of x" + std::to_string(j) + " is outside its bounds");
      }
      if (is_integral(j) && *v != std::round(*v)) {
        throw InvalidModel("pinned value of integer x" + std::to_string(j) + " is fractional");
      }
    }
  }
  for (const lp::Constraint& c : extra_constraints) {
    for (const lp::Term& t : c.terms) {
      if (t.var < 0 || t.var >= n) throw InvalidModel("extra constraint references a bad index");
    }
  }
}

lp::LinearProgram MipProblem::relaxation() const {
  lp::LinearProgram out = base;
  for (const lp::Constraint& c : extra_constraints) out.constraints.push_back(c);
  for (int j = 0; j < base.num_vars; ++j) {
    if (const auto& v = fixed_values[j]) out.bounds[j] = {*v, *v};
  }
  return out;
}

double MipProblem::max_violation(std::span<const double> x, double int_tol) const {
  double worst = 0.0;
  auto row_violation = [&](const lp::Constraint& c) {
    const double act = c.activity(x);
    switch (c.relation) {
      case lp::Relation::LessEqual: return act - c.rhs;
      case lp::Relation::GreaterEqual: return c.rhs - act;
      case lp::Relation::Equal: return std::abs(act - c.rhs);
    }
    return 0.0;
  };
  for (int j = 0; j < base.num_vars; ++j) {
    worst = std::max({worst, base.bounds[j].lower - x[j], x[j] - base.bounds[j].upper});
    if (fixed_values[j]) worst = std::max(worst, std::abs(x[j] - *fixed_values[j]));
    if (is_integral(j)) {
      const double frac = std::abs(x[j] - std::round(x[j]));
      if (frac > int_tol) worst = std::max(worst, frac);
    }
  }
  for (const lp::Constraint& c : base.constraints) worst = std::max(worst, row_violation(c));
  for (const lp::Constraint& c : extra_constraints) worst = std::max(worst, row_violation(c));
  return worst;
}

MipProblem make_problem(lp::LinearProgram base) {
  MipProblem p;
  const int n = base.num_vars;
  p.base = std::move(base);
  p.kinds.assign(n, VarKind::Continuous);
  p.fixed_values.assign(n, std::nullopt);
  return p;
}

MipProblem apply_fixings(const MipProblem& problem, std::span<const int> zeros,
                         std::span<const int> ones) {
  std::unordered_set<int> zero_set(zeros.begin(), zeros.end());
  for (int j : ones) {
    if (zero_set.count(j)) {
      throw ConflictingFix("x" + std::to_string(j) + " is fixed to both zero and one");
    }
  }
  MipProblem out = problem;
  auto pin = [&](int j, double v) {
    if (j < 0 || j >= out.num_vars()) throw InvalidModel("fixing references a bad index");
    out.fixed_values[j] = v;
  };
  for (int j : zeros) pin(j, 0.0);
  for (int j : ones) pin(j, 1.0);
  return out;
}

MipProblem add_cutoff(const MipProblem& problem, double ub) {
  if (!std::isfinite(ub)) throw InvalidModel("cutoff value must be finite");
  MipProblem out = problem;
  lp::Constraint row;
  row.relation = lp::Relation::LessEqual;
  row.rhs = ub - problem.base.objective_offset;
  for (int j = 0; j < problem.num_vars(); ++j) {
    if (problem.base.objective[j] != 0.0) row.terms.push_back({j, problem.base.objective[j]});
  }
  out.extra_constraints.push_back(std::move(row));
  return out;
}

MipProblem add_piercing_cut(const MipProblem& problem, std::span<const int> bucket) {
  if (bucket.empty()) throw EmptyBucket("piercing cut needs a non-empty bucket");
  MipProblem out = problem;
  lp::Constraint row;
  row.relation = lp::Relation::GreaterEqual;
  row.rhs = 1.0;
  for (int j : bucket) {
    if (j < 0 || j >= problem.num_vars() || problem.kinds[j] != VarKind::Binary) {
      throw InvalidModel("piercing cut member x" + std::to_string(j) + " is not a binary");
    }
    row.terms.push_back({j, 1.0});
  }
  out.extra_constraints.push_back(std::move(row));
  return out;
}

}  // namespace vmc::mip
