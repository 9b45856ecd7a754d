#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "vmc/kernels/sparse_kernels.hpp"
#include "vmc/lp/linear_program.hpp"

namespace vmc::lp {

struct SimplexOptions {
  double feas_tol = 1e-7;
  double duality_tol = 1e-6;
  double pivot_tol = 1e-9;
  // Degenerate pivots tolerated before switching to Bland's rule.
  long stall_threshold = 1000;
  long iteration_limit = 5'000'000;
  int refactor_interval = 200;
  kernels::Exec exec = kernels::Exec::Parallel;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Bounded-variable revised simplex over an explicit dense basis inverse.
//
// Each row i gets a slack s_i = a_i . x whose bounds encode the relation, so
// the equality system is A x - s = 0 and the all-slack basis is always a
// valid start. solve() runs the dual simplex when the current basis is dual
// feasible (warm starts after bound changes) and the two-phase primal simplex
// otherwise. The object keeps its basis between calls, which is what the
// branch-and-bound node loop relies on.
class SimplexSolver {
 public:
  explicit SimplexSolver(const LinearProgram& lp, SimplexOptions options = {});

  LpSolution solve();

  int num_vars() const { return n_; }
  int num_rows() const { return m_; }

  void set_bounds(int var, double lower, double upper);
  double lower(int var) const { return lower_[var]; }
  double upper(int var) const { return upper_[var]; }

  Basis basis() const;
  // Installs a basis (e.g. from a parent node). Falls back to the slack basis
  // when the state vector has the wrong shape or basic count.
  void load_basis(const Basis& basis);

  void set_deadline(std::optional<std::chrono::steady_clock::time_point> deadline) {
    options_.deadline = deadline;
  }

  long total_iterations() const { return total_iterations_; }

 private:
  enum class Outcome { Optimal, Infeasible, Unbounded, TimeLimit, Restart };

  void init_slack_basis();
  void place_nonbasic(int j);
  void refactor();
  void compute_primal();
  void compute_duals(bool phase_one);
  bool primal_feasible() const;
  bool dual_feasible() const;
  void column_of_binv_times(int j, std::vector<double>& out) const;
  void pivot(int row, int entering, const std::vector<double>& alpha);

  Outcome run_primal();
  Outcome run_dual();
  bool out_of_time();

  LpSolution extract(LpStatus status);

  double infeasibility(int j) const;

  SimplexOptions options_;
  double objective_offset_ = 0.0;
  int n_ = 0;
  int m_ = 0;
  int total_ = 0;
  kernels::CscMatrix a_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> x_;
  std::vector<VarState> state_;
  std::vector<int> basic_;      // basic_[row] = column
  std::vector<int> row_of_;     // row_of_[column] = row or -1
  std::vector<double> binv_;    // column-major m x m
  std::vector<double> y_;
  std::vector<double> d_;
  std::vector<double> phase_cost_;
  bool basis_valid_ = false;
  bool bland_ = false;
  long stall_count_ = 0;
  long since_refactor_ = 0;
  long iterations_ = 0;
  long total_iterations_ = 0;

  // scratch
  std::vector<double> alpha_;
  std::vector<int> alpha_nz_;
  std::vector<double> rho_;
  std::vector<double> pivot_row_;
  std::vector<double> work_;
  std::vector<int> work_nz_;
};

// One-shot solve from the slack basis.
LpSolution solve_lp(const LinearProgram& lp, SimplexOptions options = {});

}  // namespace vmc::lp
