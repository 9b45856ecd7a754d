#include "vmc/lp/kkt.hpp"

#include <algorithm>
#include <cmath>

namespace vmc::lp {

const char* to_string(KktViolation::Kind kind) {
  switch (kind) {
    case KktViolation::Kind::PrimalBound: return "primal_bound";
    case KktViolation::Kind::PrimalRow: return "primal_row";
    case KktViolation::Kind::DualSign: return "dual_sign";
    case KktViolation::Kind::ReducedCostSign: return "reduced_cost_sign";
    case KktViolation::Kind::ReducedCostValue: return "reduced_cost_value";
    case KktViolation::Kind::Complementarity: return "complementarity";
    case KktViolation::Kind::DualityGap: return "duality_gap";
  }
  return "unknown";
}

namespace {

double scaled(double tol, double ref) { return tol * std::max(1.0, std::abs(ref)); }

// Bound value a reduced cost of the given sign is priced against.
double bound_for(const Bounds& b, double r) { return r > 0.0 ? b.lower : b.upper; }

}  // namespace

double dual_objective(const LinearProgram& lp, const LpSolution& sol) {
  double obj = lp.objective_offset;
  for (int i = 0; i < lp.num_constraints(); ++i) obj += sol.duals[i] * lp.constraints[i].rhs;
  for (int j = 0; j < lp.num_vars; ++j) {
    const double r = sol.reduced_costs[j];
    if (r == 0.0) continue;
    const double b = bound_for(lp.bounds[j], r);
    if (std::isfinite(b)) obj += r * b;
  }
  return obj;
}

std::vector<KktViolation> verify_kkt(const LinearProgram& lp, const LpSolution& sol, double tol) {
  using Kind = KktViolation::Kind;
  std::vector<KktViolation> out;
  const int n = lp.num_vars;
  const int m = lp.num_constraints();
  const auto& x = sol.primal;
  const auto& y = sol.duals;
  const auto& r = sol.reduced_costs;

  for (int j = 0; j < n; ++j) {
    const Bounds& b = lp.bounds[j];
    const double below = b.lower - x[j];
    const double above = x[j] - b.upper;
    if (below > scaled(tol, b.lower)) out.push_back({Kind::PrimalBound, j, below});
    if (above > scaled(tol, b.upper)) out.push_back({Kind::PrimalBound, j, above});
  }

  std::vector<double> column_dot(n, 0.0);
  for (int i = 0; i < m; ++i) {
    const Constraint& c = lp.constraints[i];
    const double act = c.activity(x);
    const double slack = c.rhs - act;
    const double t = scaled(tol, c.rhs);
    double viol = 0.0;
    switch (c.relation) {
      case Relation::LessEqual: viol = -slack; break;
      case Relation::GreaterEqual: viol = slack; break;
      case Relation::Equal: viol = std::abs(slack); break;
    }
    if (viol > t) out.push_back({Kind::PrimalRow, i, viol});

    // Minimization: <= rows need y <= 0, >= rows y >= 0.
    double wrong = 0.0;
    if (c.relation == Relation::LessEqual) wrong = std::max(0.0, y[i]);
    if (c.relation == Relation::GreaterEqual) wrong = std::max(0.0, -y[i]);
    if (wrong > tol) out.push_back({Kind::DualSign, i, wrong});

    if (c.relation != Relation::Equal && std::abs(y[i]) > tol && std::abs(slack) > t) {
      out.push_back({Kind::Complementarity, i, std::abs(y[i] * slack)});
    }
    for (const Term& term : c.terms) column_dot[term.var] += y[i] * term.coef;
  }

  for (int j = 0; j < n; ++j) {
    const double expect = lp.objective[j] - column_dot[j];
    const double diff = std::abs(expect - r[j]);
    if (diff > scaled(tol, lp.objective[j])) out.push_back({Kind::ReducedCostValue, j, diff});

    const Bounds& b = lp.bounds[j];
    if (r[j] > tol) {
      if (!std::isfinite(b.lower)) {
        out.push_back({Kind::ReducedCostSign, j, r[j]});
      } else if (x[j] - b.lower > scaled(tol, b.lower)) {
        out.push_back({Kind::Complementarity, j, r[j] * (x[j] - b.lower)});
      }
    } else if (r[j] < -tol) {
      if (!std::isfinite(b.upper)) {
        out.push_back({Kind::ReducedCostSign, j, -r[j]});
      } else if (b.upper - x[j] > scaled(tol, b.upper)) {
        out.push_back({Kind::Complementarity, j, -r[j] * (b.upper - x[j])});
      }
    }
  }

  const double primal = lp.evaluate(x);
  const double dual = dual_objective(lp, sol);
  const double gap = std::abs(primal - dual);
  if (gap > scaled(tol, primal)) out.push_back({Kind::DualityGap, -1, gap});
  return out;
}

}  // namespace vmc::lp
