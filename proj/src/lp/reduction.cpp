#include "vmc/lp/reduction.hpp"

#include <algorithm>
#include <cmath>

namespace vmc::lp {

std::vector<double> ReducedProgram::expand(std::span<const double> reduced_x) const {
  std::vector<double> x = value;
  for (std::size_t k = 0; k < kept.size(); ++k) x[kept[k]] = reduced_x[k];
  return x;
}

namespace {

struct ActivityRange {
  double min = 0.0;
  double max = 0.0;
  bool free_columns = false;  // some unfixed column remains
};

ActivityRange activity_range(const Constraint& c, const std::vector<double>& lo,
                             const std::vector<double>& hi) {
  ActivityRange a;
  for (const Term& t : c.terms) {
    if (t.coef == 0.0) continue;
    const double l = lo[t.var];
    const double u = hi[t.var];
    if (l != u) a.free_columns = true;
    if (t.coef > 0) {
      a.min += t.coef * l;
      a.max += t.coef * u;
    } else {
      a.min += t.coef * u;
      a.max += t.coef * l;
    }
  }
  return a;
}

// Pins every column of the row at the bound that realizes the activity
// extreme (min when `at_min`, otherwise max).
void force_row(const Constraint& c, bool at_min, std::vector<double>& lo, std::vector<double>& hi) {
  for (const Term& t : c.terms) {
    if (t.coef == 0.0) continue;
    const bool take_lower = (t.coef > 0) == at_min;
    if (take_lower) {
      hi[t.var] = lo[t.var];
    } else {
      lo[t.var] = hi[t.var];
    }
  }
}

}  // namespace

ReducedProgram reduce_program(const LinearProgram& lp, double tol) {
  lp.validate();
  const int n = lp.num_vars;
  const int m = lp.num_constraints();
  std::vector<double> lo(n);
  std::vector<double> hi(n);
  for (int j = 0; j < n; ++j) {
    lo[j] = lp.bounds[j].lower;
    hi[j] = lp.bounds[j].upper;
  }
  std::vector<char> alive(m, 1);
  ReducedProgram out;

  bool changed = true;
  while (changed && !out.infeasible) {
    changed = false;
    for (int i = 0; i < m && !out.infeasible; ++i) {
      if (!alive[i]) continue;
      const Constraint& c = lp.constraints[i];
      const ActivityRange a = activity_range(c, lo, hi);
      const double t = tol * std::max(1.0, std::abs(c.rhs));
      const bool le = c.relation != Relation::GreaterEqual;
      const bool ge = c.relation != Relation::LessEqual;
      if ((le && a.min > c.rhs + t) || (ge && a.max < c.rhs - t)) {
        out.infeasible = true;
        break;
      }
      const bool le_slack = !le || a.max <= c.rhs + t;
      const bool ge_slack = !ge || a.min >= c.rhs - t;
      if (le_slack && ge_slack) {
        alive[i] = 0;
        changed = true;
        continue;
      }
      if (!a.free_columns) continue;
      if (le && std::isfinite(a.min) && a.min >= c.rhs - t) {
        force_row(c, true, lo, hi);
        alive[i] = 0;
        changed = true;
      } else if (ge && std::isfinite(a.max) && a.max <= c.rhs + t) {
        force_row(c, false, lo, hi);
        alive[i] = 0;
        changed = true;
      }
    }
  }

  out.position.assign(n, -1);
  out.value.assign(n, 0.0);
  LinearProgram& r = out.lp;
  r.objective_offset = lp.objective_offset;
  for (int j = 0; j < n; ++j) {
    if (lo[j] == hi[j]) {
      out.value[j] = lo[j];
      r.objective_offset += lp.objective[j] * lo[j];
    } else {
      out.position[j] = r.add_variable(lp.objective[j], lo[j], hi[j]);
      out.kept.push_back(j);
    }
  }
  if (out.infeasible) return out;
  for (int i = 0; i < m; ++i) {
    if (!alive[i]) continue;
    const Constraint& c = lp.constraints[i];
    std::vector<Term> terms;
    double rhs = c.rhs;
    for (const Term& t : c.terms) {
      const int p = out.position[t.var];
      if (p < 0) {
        rhs -= t.coef * out.value[t.var];
      } else {
        terms.push_back({p, t.coef});
      }
    }
    r.add_constraint(std::move(terms), c.relation, rhs);
  }
  return out;
}

}  // namespace vmc::lp
