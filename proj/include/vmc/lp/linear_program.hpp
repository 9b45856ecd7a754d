#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "vmc/error.hpp"

namespace vmc::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Term {
  int var = 0;
  double coef = 0.0;
};

struct Constraint {
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;

  double activity(std::span<const double> x) const;
};

struct Bounds {
  double lower = 0.0;
  double upper = kInf;
};

// Minimize objective . x + objective_offset subject to constraints and bounds.
struct LinearProgram {
  int num_vars = 0;
  std::vector<double> objective;
  std::vector<Constraint> constraints;
  std::vector<Bounds> bounds;
  double objective_offset = 0.0;

  int add_variable(double cost, double lower = 0.0, double upper = kInf);
  int add_constraint(std::vector<Term> terms, Relation relation, double rhs);

  int num_constraints() const { return static_cast<int>(constraints.size()); }
  double evaluate(std::span<const double> x) const;

  // Throws InvalidModel on crossed bounds, out-of-range indices or
  // non-finite coefficients.
  void validate() const;
};

// One constraint per line, e.g. "c3: 2 x0 - x4 <= 7". Used for bug reports.
void write_listing(std::ostream& os, const LinearProgram& lp);

enum class LpStatus { Optimal, Infeasible, Unbounded, TimeLimit };

const char* to_string(LpStatus s);

// Status of a column in the simplex basis. Columns [0, num_vars) are the
// structural variables, [num_vars, num_vars + num_constraints) the row slacks.
enum class VarState : std::uint8_t { Basic, AtLower, AtUpper, Free };

struct Basis {
  std::vector<VarState> state;
  bool empty() const { return state.empty(); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> primal;
  double objective = 0.0;
  // Row multipliers, minimization convention: <= rows carry y <= 0, >= rows y >= 0.
  std::vector<double> duals;
  // r_j = c_j - y . A_j
  std::vector<double> reduced_costs;
  Basis basis;
  long iterations = 0;
};

}  // namespace vmc::lp
