#include "vmc/lp/linear_program.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace vmc::lp {

double Constraint::activity(std::span<const double> x) const {
  double s = 0.0;
  for (const Term& t : terms) s += t.coef * x[t.var];
  return s;
}

int LinearProgram::add_variable(double cost, double lower, double upper) {
  objective.push_back(cost);
  bounds.push_back({lower, upper});
  return num_vars++;
}

int LinearProgram::add_constraint(std::vector<Term> terms, Relation relation, double rhs) {
  constraints.push_back({std::move(terms), relation, rhs});
  return num_constraints() - 1;
}

double LinearProgram::evaluate(std::span<const double> x) const {
  double s = objective_offset;
  for (int j = 0; j < num_vars; ++j) s += objective[j] * x[j];
  return s;
}

void LinearProgram::validate() const {
  if (num_vars < 0 || static_cast<int>(objective.size()) != num_vars ||
      static_cast<int>(bounds.size()) != num_vars) {
    throw InvalidModel("objective/bounds size does not match num_vars");
  }
  for (int j = 0; j < num_vars; ++j) {
    if (!std::isfinite(objective[j])) throw InvalidModel("non-finite objective coefficient");
    const Bounds& b = bounds[j];
    if (std::isnan(b.lower) || std::isnan(b.upper) || b.lower > b.upper || b.lower == kInf ||
        b.upper == -kInf) {
      std::ostringstream msg;
      msg << "invalid bounds [" << b.lower << ", " << b.upper << "] on x" << j;
      throw InvalidModel(msg.str());
    }
  }
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    const Constraint& c = constraints[i];
    if (!std::isfinite(c.rhs)) throw InvalidModel("non-finite right-hand side in row " + std::to_string(i));
    for (const Term& t : c.terms) {
      if (t.var < 0 || t.var >= num_vars) {
        throw InvalidModel("row " + std::to_string(i) + " references x" + std::to_string(t.var));
      }
      if (!std::isfinite(t.coef)) throw InvalidModel("non-finite coefficient in row " + std::to_string(i));
    }
  }
}

void write_listing(std::ostream& os, const LinearProgram& lp) {
  auto term = [&os](double coef, int var, bool first) {
    if (coef < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    if (std::abs(coef) != 1.0) os << std::abs(coef) << ' ';
    os << 'x' << var;
  };
  os << "minimize:";
  bool first = true;
  for (int j = 0; j < lp.num_vars; ++j) {
    if (lp.objective[j] == 0.0) continue;
    os << ' ';
    term(lp.objective[j], j, first);
    first = false;
  }
  if (lp.objective_offset != 0.0) os << " + " << lp.objective_offset;
  os << '\n';
  for (int i = 0; i < lp.num_constraints(); ++i) {
    const Constraint& c = lp.constraints[i];
    os << 'c' << i << ": ";
    first = true;
    for (const Term& t : c.terms) {
      term(t.coef, t.var, first);
      first = false;
    }
    if (first) os << '0';
    switch (c.relation) {
      case Relation::LessEqual: os << " <= "; break;
      case Relation::Equal: os << " = "; break;
      case Relation::GreaterEqual: os << " >= "; break;
    }
    os << c.rhs << '\n';
  }
  for (int j = 0; j < lp.num_vars; ++j) {
    os << "x" << j << " in [" << lp.bounds[j].lower << ", " << lp.bounds[j].upper << "]\n";
  }
}

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::TimeLimit: return "time_limit";
  }
  return "unknown";
}

}  // namespace vmc::lp
