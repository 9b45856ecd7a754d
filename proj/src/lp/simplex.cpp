#include "vmc/lp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace vmc::lp {

namespace {

constexpr double kDropTol = 1e-13;

struct Triplet {
  int col;
  int row;
  double value;
};

}  // namespace

SimplexSolver::SimplexSolver(const LinearProgram& lp, SimplexOptions options)
    : options_(options), objective_offset_(lp.objective_offset) {
  lp.validate();
  n_ = lp.num_vars;
  m_ = lp.num_constraints();
  total_ = n_ + m_;

  std::vector<Triplet> trips;
  for (int i = 0; i < m_; ++i) {
    for (const Term& t : lp.constraints[i].terms) trips.push_back({t.var, i, t.coef});
    trips.push_back({n_ + i, i, -1.0});
  }
  std::sort(trips.begin(), trips.end(), [](const Triplet& a, const Triplet& b) {
    return std::tie(a.col, a.row) < std::tie(b.col, b.row);
  });
  a_.rows = m_;
  a_.cols = total_;
  a_.col_start.assign(total_ + 1, 0);
  for (std::size_t k = 0; k < trips.size();) {
    std::size_t e = k;
    double v = 0.0;
    while (e < trips.size() && trips[e].col == trips[k].col && trips[e].row == trips[k].row) {
      v += trips[e].value;
      ++e;
    }
    if (v != 0.0) {
      a_.row_index.push_back(trips[k].row);
      a_.value.push_back(v);
      ++a_.col_start[trips[k].col + 1];
    }
    k = e;
  }
  for (int j = 0; j < total_; ++j) a_.col_start[j + 1] += a_.col_start[j];

  cost_.assign(total_, 0.0);
  lower_.assign(total_, 0.0);
  upper_.assign(total_, 0.0);
  for (int j = 0; j < n_; ++j) {
    cost_[j] = lp.objective[j];
    lower_[j] = lp.bounds[j].lower;
    upper_[j] = lp.bounds[j].upper;
  }
  for (int i = 0; i < m_; ++i) {
    const Constraint& c = lp.constraints[i];
    switch (c.relation) {
      case Relation::LessEqual: lower_[n_ + i] = -kInf; upper_[n_ + i] = c.rhs; break;
      case Relation::GreaterEqual: lower_[n_ + i] = c.rhs; upper_[n_ + i] = kInf; break;
      case Relation::Equal: lower_[n_ + i] = c.rhs; upper_[n_ + i] = c.rhs; break;
    }
  }

  x_.assign(total_, 0.0);
  state_.assign(total_, VarState::AtLower);
  y_.assign(m_, 0.0);
  d_.assign(total_, 0.0);
  phase_cost_.assign(total_, 0.0);
  alpha_.assign(m_, 0.0);
  rho_.assign(m_, 0.0);
  pivot_row_.assign(total_, 0.0);
  work_.assign(m_, 0.0);
  init_slack_basis();
}

void SimplexSolver::init_slack_basis() {
  basic_.assign(m_, 0);
  row_of_.assign(total_, -1);
  for (int j = 0; j < n_; ++j) place_nonbasic(j);
  for (int i = 0; i < m_; ++i) {
    basic_[i] = n_ + i;
    row_of_[n_ + i] = i;
    state_[n_ + i] = VarState::Basic;
  }
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = -1.0;
  since_refactor_ = 0;
  basis_valid_ = true;
}

// Picks the bound a nonbasic column rests on, preferring the side that keeps
// its reduced cost dual feasible when both bounds are finite.
void SimplexSolver::place_nonbasic(int j) {
  const bool lo = std::isfinite(lower_[j]);
  const bool hi = std::isfinite(upper_[j]);
  if (lo && hi) {
    state_[j] = (cost_[j] < 0.0 && lower_[j] != upper_[j]) ? VarState::AtUpper : VarState::AtLower;
  } else if (lo) {
    state_[j] = VarState::AtLower;
  } else if (hi) {
    state_[j] = VarState::AtUpper;
  } else {
    state_[j] = VarState::Free;
  }
  x_[j] = state_[j] == VarState::AtLower ? lower_[j]
          : state_[j] == VarState::AtUpper ? upper_[j]
                                           : 0.0;
}

void SimplexSolver::set_bounds(int var, double lower, double upper) {
  lower_[var] = lower;
  upper_[var] = upper;
  switch (state_[var]) {
    case VarState::Basic: return;
    case VarState::AtLower:
      if (std::isfinite(lower)) {
        x_[var] = lower;
        return;
      }
      break;
    case VarState::AtUpper:
      if (std::isfinite(upper)) {
        x_[var] = upper;
        return;
      }
      break;
    case VarState::Free:
      if (!std::isfinite(lower) && !std::isfinite(upper)) return;
      break;
  }
  place_nonbasic(var);
}

Basis SimplexSolver::basis() const { return Basis{state_}; }

void SimplexSolver::load_basis(const Basis& basis) {
  if (static_cast<int>(basis.state.size()) != total_ ||
      std::count(basis.state.begin(), basis.state.end(), VarState::Basic) != m_) {
    init_slack_basis();
    return;
  }
  state_ = basis.state;
  row_of_.assign(total_, -1);
  int r = 0;
  for (int j = 0; j < total_; ++j) {
    if (state_[j] == VarState::Basic) {
      basic_[r] = j;
      row_of_[j] = r++;
    } else {
      set_bounds(j, lower_[j], upper_[j]);
    }
  }
  refactor();
}

void SimplexSolver::refactor() {
  since_refactor_ = 0;
  basis_valid_ = true;
  const int m = m_;
  if (m == 0) return;
  const std::size_t mm = static_cast<std::size_t>(m) * m;
  std::vector<double> mat(mm);
  std::vector<double> inv(mm);
  std::vector<int> pivot_row(m);
  std::vector<char> row_used(m);
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::fill(mat.begin(), mat.end(), 0.0);
    std::fill(inv.begin(), inv.end(), 0.0);
    std::fill(pivot_row.begin(), pivot_row.end(), -1);
    std::fill(row_used.begin(), row_used.end(), 0);
    for (int p = 0; p < m; ++p) {
      const int j = basic_[p];
      for (int k = a_.col_start[j]; k < a_.col_start[j + 1]; ++k) {
        mat[static_cast<std::size_t>(a_.row_index[k]) * m + p] = a_.value[k];
      }
    }
    for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(i) * m + i] = 1.0;

    std::vector<int> dependent;
    for (int p = 0; p < m; ++p) {
      int best = -1;
      double best_abs = 0.0;
      for (int i = 0; i < m; ++i) {
        if (row_used[i]) continue;
        const double v = std::abs(mat[static_cast<std::size_t>(i) * m + p]);
        if (v > best_abs) {
          best_abs = v;
          best = i;
        }
      }
      if (best < 0 || best_abs < options_.pivot_tol) {
        dependent.push_back(p);
        continue;
      }
      row_used[best] = 1;
      pivot_row[p] = best;
      double* mrow = mat.data() + static_cast<std::size_t>(best) * m;
      double* irow = inv.data() + static_cast<std::size_t>(best) * m;
      const double s = 1.0 / mrow[p];
      for (int k = p; k < m; ++k) mrow[k] *= s;
      for (int k = 0; k < m; ++k) irow[k] *= s;
      mrow[p] = 1.0;
      for (int i = 0; i < m; ++i) {
        if (i == best) continue;
        double* mi = mat.data() + static_cast<std::size_t>(i) * m;
        const double f = mi[p];
        if (f == 0.0) continue;
        double* ii = inv.data() + static_cast<std::size_t>(i) * m;
        for (int k = p; k < m; ++k) mi[k] -= f * mrow[k];
        for (int k = 0; k < m; ++k) {
          if (irow[k] != 0.0) ii[k] -= f * irow[k];
        }
        mi[p] = 0.0;
      }
    }
    if (dependent.empty()) {
      for (int p = 0; p < m; ++p) {
        const double* irow = inv.data() + static_cast<std::size_t>(pivot_row[p]) * m;
        for (int k = 0; k < m; ++k) binv_[static_cast<std::size_t>(k) * m + p] = irow[k];
      }
      return;
    }
    // Swap dependent columns for slacks of the rows that got no pivot.
    std::size_t next = 0;
    for (int i = 0; i < m && next < dependent.size(); ++i) {
      if (row_used[i]) continue;
      const int p = dependent[next++];
      const int old = basic_[p];
      row_of_[old] = -1;
      place_nonbasic(old);
      const int slack = n_ + i;
      if (state_[slack] == VarState::Basic) {
        // Slack already basic elsewhere; the elimination would have used its row.
        throw NumericalBreakdown("basis repair failed: slack already basic");
      }
      basic_[p] = slack;
      row_of_[slack] = p;
      state_[slack] = VarState::Basic;
    }
  }
  throw NumericalBreakdown("basis matrix remains singular after repair");
}

void SimplexSolver::compute_primal() {
  std::fill(work_.begin(), work_.end(), 0.0);
  for (int j = 0; j < total_; ++j) {
    if (state_[j] == VarState::Basic || x_[j] == 0.0) continue;
    for (int k = a_.col_start[j]; k < a_.col_start[j + 1]; ++k) {
      work_[a_.row_index[k]] -= a_.value[k] * x_[j];
    }
  }
  std::vector<double> xb(m_, 0.0);
  for (int k = 0; k < m_; ++k) {
    const double w = work_[k];
    if (w == 0.0) continue;
    const double* col = binv_.data() + static_cast<std::size_t>(k) * m_;
    for (int i = 0; i < m_; ++i) xb[i] += w * col[i];
  }
  for (int r = 0; r < m_; ++r) x_[basic_[r]] = xb[r];
}

double SimplexSolver::infeasibility(int j) const {
  if (x_[j] < lower_[j] - options_.feas_tol) return lower_[j] - x_[j];
  if (x_[j] > upper_[j] + options_.feas_tol) return x_[j] - upper_[j];
  return 0.0;
}

void SimplexSolver::compute_duals(bool phase_one) {
  work_nz_.clear();
  std::fill(work_.begin(), work_.end(), 0.0);
  for (int r = 0; r < m_; ++r) {
    const int j = basic_[r];
    double c = cost_[j];
    if (phase_one) {
      c = x_[j] < lower_[j] - options_.feas_tol ? -1.0
          : x_[j] > upper_[j] + options_.feas_tol ? 1.0
                                                  : 0.0;
    }
    if (c != 0.0) {
      work_[r] = c;
      work_nz_.push_back(r);
    }
  }
  kernels::weighted_row_sum(options_.exec, binv_, m_, work_, work_nz_, y_);
  if (phase_one) {
    std::fill(phase_cost_.begin(), phase_cost_.end(), 0.0);
    for (int r : work_nz_) phase_cost_[basic_[r]] = work_[r];
    kernels::price(options_.exec, a_, phase_cost_, y_, d_);
  } else {
    kernels::price(options_.exec, a_, cost_, y_, d_);
  }
  for (int r = 0; r < m_; ++r) d_[basic_[r]] = 0.0;
}

bool SimplexSolver::primal_feasible() const {
  for (int r = 0; r < m_; ++r) {
    if (infeasibility(basic_[r]) > 0.0) return false;
  }
  return true;
}

bool SimplexSolver::dual_feasible() const {
  const double tol = options_.duality_tol;
  for (int j = 0; j < total_; ++j) {
    if (lower_[j] == upper_[j]) continue;
    switch (state_[j]) {
      case VarState::Basic: break;
      case VarState::AtLower:
        if (d_[j] < -tol) return false;
        break;
      case VarState::AtUpper:
        if (d_[j] > tol) return false;
        break;
      case VarState::Free:
        if (std::abs(d_[j]) > tol) return false;
        break;
    }
  }
  return true;
}

void SimplexSolver::column_of_binv_times(int j, std::vector<double>& out) const {
  std::fill(out.begin(), out.end(), 0.0);
  for (int k = a_.col_start[j]; k < a_.col_start[j + 1]; ++k) {
    const double v = a_.value[k];
    const double* col = binv_.data() + static_cast<std::size_t>(a_.row_index[k]) * m_;
    for (int i = 0; i < m_; ++i) out[i] += v * col[i];
  }
}

void SimplexSolver::pivot(int row, int entering, const std::vector<double>& alpha) {
  alpha_nz_.clear();
  for (int i = 0; i < m_; ++i) {
    if (std::abs(alpha[i]) > kDropTol || i == row) alpha_nz_.push_back(i);
  }
  kernels::eta_update(options_.exec, binv_, m_, row, alpha, alpha_nz_);
  const int leaving = basic_[row];
  row_of_[leaving] = -1;
  basic_[row] = entering;
  row_of_[entering] = row;
  state_[entering] = VarState::Basic;
  ++since_refactor_;
}

bool SimplexSolver::out_of_time() {
  if (!options_.deadline) return false;
  if ((iterations_ & 31) != 0) return false;
  return std::chrono::steady_clock::now() >= *options_.deadline;
}

SimplexSolver::Outcome SimplexSolver::run_primal() {
  const double ftol = options_.feas_tol;
  const double dtol = options_.duality_tol;
  const double ptol = options_.pivot_tol;
  bool duals_fresh = false;
  bool last_phase_one = true;
  int numerical_retries = 0;

  for (;;) {
    if (iterations_ >= options_.iteration_limit) {
      throw NumericalBreakdown("simplex iteration limit reached");
    }
    if (out_of_time()) return Outcome::TimeLimit;
    if (since_refactor_ >= options_.refactor_interval) {
      refactor();
      compute_primal();
      duals_fresh = false;
    }
    const bool phase_one = !primal_feasible();
    if (phase_one || !duals_fresh || phase_one != last_phase_one) {
      compute_duals(phase_one);
      duals_fresh = !phase_one;
    }
    last_phase_one = phase_one;

    // Pricing: Dantzig, or Bland after too many degenerate pivots.
    int q = -1;
    double best = 0.0;
    for (int j = 0; j < total_; ++j) {
      const VarState s = state_[j];
      if (s == VarState::Basic || lower_[j] == upper_[j]) continue;
      const double dj = d_[j];
      bool eligible = false;
      if (s == VarState::AtLower) eligible = dj < -dtol;
      else if (s == VarState::AtUpper) eligible = dj > dtol;
      else eligible = std::abs(dj) > dtol;
      if (!eligible) continue;
      if (bland_) {
        q = j;
        break;
      }
      if (std::abs(dj) > best) {
        best = std::abs(dj);
        q = j;
      }
    }
    if (q < 0) return phase_one ? Outcome::Infeasible : Outcome::Optimal;

    const double dir = d_[q] < 0.0 ? 1.0 : -1.0;
    column_of_binv_times(q, alpha_);

    // Harris two-pass ratio test. In phase one, infeasible basics may only
    // travel back to the bound they violate.
    const double flip = upper_[q] - lower_[q];
    double relaxed = kInf;
    for (int r = 0; r < m_; ++r) {
      const double ar = alpha_[r];
      if (std::abs(ar) <= ptol) continue;
      const int j = basic_[r];
      const double rate = -dir * ar;
      const double xj = x_[j];
      double limit;
      if (rate < 0.0) {
        if (xj > upper_[j] + ftol) limit = upper_[j] - ftol;
        else if (xj >= lower_[j] - ftol) limit = lower_[j] - ftol;
        else continue;
        if (!std::isfinite(limit)) continue;
        relaxed = std::min(relaxed, (xj - limit) / -rate);
      } else {
        if (xj < lower_[j] - ftol) limit = lower_[j] + ftol;
        else if (xj <= upper_[j] + ftol) limit = upper_[j] + ftol;
        else continue;
        if (!std::isfinite(limit)) continue;
        relaxed = std::min(relaxed, (limit - xj) / rate);
      }
    }
    int leave = -1;
    double theta = kInf;
    double leave_bound = 0.0;
    if (std::isfinite(relaxed)) {
      double best_pivot = 0.0;
      for (int r = 0; r < m_; ++r) {
        const double ar = alpha_[r];
        if (std::abs(ar) <= ptol) continue;
        const int j = basic_[r];
        const double rate = -dir * ar;
        const double xj = x_[j];
        double bound;
        if (rate < 0.0) {
          if (xj > upper_[j] + ftol) bound = upper_[j];
          else if (xj >= lower_[j] - ftol) bound = lower_[j];
          else continue;
        } else {
          if (xj < lower_[j] - ftol) bound = lower_[j];
          else if (xj <= upper_[j] + ftol) bound = upper_[j];
          else continue;
        }
        if (!std::isfinite(bound)) continue;
        const double ratio = std::max(0.0, (bound - xj) / rate);
        if (ratio > relaxed) continue;
        bool take;
        if (bland_) {
          take = leave < 0 || ratio < theta - 1e-12 ||
                 (ratio <= theta + 1e-12 && j < basic_[leave]);
        } else {
          take = std::abs(ar) > best_pivot;
        }
        if (take) {
          best_pivot = std::abs(ar);
          leave = r;
          theta = ratio;
          leave_bound = bound;
        }
      }
    }

    if (leave < 0 && !std::isfinite(flip)) {
      if (!phase_one) return Outcome::Unbounded;
      // Phase one can't be unbounded; treat as drift.
      if (++numerical_retries > 3) throw NumericalBreakdown("phase one lost its blocking row");
      refactor();
      compute_primal();
      duals_fresh = false;
      continue;
    }

    ++iterations_;
    ++total_iterations_;
    if (leave < 0 || flip <= theta) {
      // Bound flip: the entering column crosses its own box first.
      for (int r = 0; r < m_; ++r) x_[basic_[r]] -= dir * alpha_[r] * flip;
      if (state_[q] == VarState::AtLower) {
        state_[q] = VarState::AtUpper;
        x_[q] = upper_[q];
      } else {
        state_[q] = VarState::AtLower;
        x_[q] = lower_[q];
      }
      stall_count_ = 0;
      continue;
    }

    if (theta <= ftol) {
      if (++stall_count_ > options_.stall_threshold) bland_ = true;
    } else {
      stall_count_ = 0;
    }

    const int out = basic_[leave];
    const double pivot_value = alpha_[leave];
    if (!phase_one) {
      // Incremental dual update needs the pivot row before the basis changes.
      for (int k = 0; k < m_; ++k) rho_[k] = binv_[static_cast<std::size_t>(k) * m_ + leave];
      kernels::transpose_product(options_.exec, a_, rho_, pivot_row_);
    }
    for (int r = 0; r < m_; ++r) x_[basic_[r]] -= dir * alpha_[r] * theta;
    const double entering_value = x_[q] + dir * theta;
    x_[out] = leave_bound;
    state_[out] = (leave_bound == lower_[out]) ? VarState::AtLower : VarState::AtUpper;
    if (!phase_one) {
      const double theta_d = d_[q] / pivot_value;
      for (int j = 0; j < total_; ++j) {
        if (state_[j] != VarState::Basic) d_[j] -= theta_d * pivot_row_[j];
      }
      d_[out] = -theta_d;
      d_[q] = 0.0;
    }
    pivot(leave, q, alpha_);
    x_[q] = entering_value;
  }
}

SimplexSolver::Outcome SimplexSolver::run_dual() {
  const double dtol = options_.duality_tol;
  const double ptol = options_.pivot_tol;
  for (;;) {
    if (iterations_ >= options_.iteration_limit) {
      throw NumericalBreakdown("simplex iteration limit reached");
    }
    if (out_of_time()) return Outcome::TimeLimit;
    if (since_refactor_ >= options_.refactor_interval) {
      refactor();
      compute_primal();
      compute_duals(false);
      if (!dual_feasible()) return Outcome::Restart;
    }

    int leave = -1;
    double worst = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double v = infeasibility(basic_[r]);
      if (v <= 0.0) continue;
      if (bland_) {
        if (leave < 0 || basic_[r] < basic_[leave]) leave = r;
      } else if (v > worst) {
        worst = v;
        leave = r;
      }
    }
    if (leave < 0) return Outcome::Optimal;

    const int out = basic_[leave];
    const bool below = x_[out] < lower_[out];
    const double target = below ? lower_[out] : upper_[out];

    for (int k = 0; k < m_; ++k) rho_[k] = binv_[static_cast<std::size_t>(k) * m_ + leave];
    kernels::transpose_product(options_.exec, a_, rho_, pivot_row_);

    auto eligible = [&](int j) {
      const VarState s = state_[j];
      if (s == VarState::Basic || lower_[j] == upper_[j]) return false;
      const double a = pivot_row_[j];
      if (std::abs(a) <= ptol) return false;
      const bool up = s == VarState::AtLower || s == VarState::Free;
      const bool down = s == VarState::AtUpper || s == VarState::Free;
      return below ? ((up && a < 0.0) || (down && a > 0.0)) : ((up && a > 0.0) || (down && a < 0.0));
    };

    double relaxed = kInf;
    for (int j = 0; j < total_; ++j) {
      if (!eligible(j)) continue;
      relaxed = std::min(relaxed, (std::abs(d_[j]) + dtol) / std::abs(pivot_row_[j]));
    }
    if (!std::isfinite(relaxed)) return Outcome::Infeasible;

    int q = -1;
    double best_pivot = 0.0;
    double best_ratio = kInf;
    for (int j = 0; j < total_; ++j) {
      if (!eligible(j)) continue;
      const double ratio = std::abs(d_[j]) / std::abs(pivot_row_[j]);
      if (ratio > relaxed) continue;
      if (bland_) {
        if (ratio < best_ratio - 1e-12) {
          best_ratio = ratio;
          q = j;
        }
      } else if (std::abs(pivot_row_[j]) > best_pivot) {
        best_pivot = std::abs(pivot_row_[j]);
        q = j;
      }
    }

    column_of_binv_times(q, alpha_);
    const double pivot_value = alpha_[leave];
    if (std::abs(pivot_value - pivot_row_[q]) > 1e-7 * (1.0 + std::abs(pivot_value)) ||
        std::abs(pivot_value) <= ptol) {
      if (since_refactor_ == 0) throw NumericalBreakdown("dual pivot is unstable after refactor");
      refactor();
      compute_primal();
      compute_duals(false);
      if (!dual_feasible()) return Outcome::Restart;
      continue;
    }

    ++iterations_;
    ++total_iterations_;
    const double step = (x_[out] - target) / pivot_value;
    for (int r = 0; r < m_; ++r) x_[basic_[r]] -= step * alpha_[r];
    const double entering_value = x_[q] + step;

    const double theta_d = d_[q] / pivot_value;
    if (std::abs(theta_d) <= dtol) {
      if (++stall_count_ > options_.stall_threshold) bland_ = true;
    } else {
      stall_count_ = 0;
    }
    for (int j = 0; j < total_; ++j) {
      if (state_[j] != VarState::Basic) d_[j] -= theta_d * pivot_row_[j];
    }
    d_[out] = -theta_d;
    d_[q] = 0.0;
    x_[out] = target;
    state_[out] = below ? VarState::AtLower : VarState::AtUpper;
    pivot(leave, q, alpha_);
    x_[q] = entering_value;
  }
}

LpSolution SimplexSolver::solve() {
  iterations_ = 0;
  bland_ = false;
  stall_count_ = 0;
  if (!basis_valid_) refactor();
  for (int j = 0; j < total_; ++j) {
    if (state_[j] != VarState::Basic) set_bounds(j, lower_[j], upper_[j]);
  }
  compute_primal();

  for (int attempt = 0; attempt < 6; ++attempt) {
    compute_duals(false);
    Outcome outcome;
    if (primal_feasible() && dual_feasible()) {
      outcome = Outcome::Optimal;
    } else if (dual_feasible()) {
      outcome = run_dual();
      if (outcome == Outcome::Restart) {
        outcome = run_primal();
      }
    } else {
      outcome = run_primal();
    }
    switch (outcome) {
      case Outcome::Optimal: {
        // Confirm against freshly recomputed values before reporting.
        compute_primal();
        compute_duals(false);
        if (primal_feasible() && dual_feasible()) return extract(LpStatus::Optimal);
        refactor();
        compute_primal();
        break;
      }
      case Outcome::Infeasible: return extract(LpStatus::Infeasible);
      case Outcome::Unbounded: return extract(LpStatus::Unbounded);
      case Outcome::TimeLimit: return extract(LpStatus::TimeLimit);
      case Outcome::Restart: break;
    }
  }
  throw NumericalBreakdown("simplex failed to converge to a verified optimum");
}

LpSolution SimplexSolver::extract(LpStatus status) {
  LpSolution sol;
  sol.status = status;
  sol.primal.assign(x_.begin(), x_.begin() + n_);
  sol.objective = objective_offset_;
  for (int j = 0; j < n_; ++j) sol.objective += cost_[j] * x_[j];
  sol.duals = y_;
  sol.reduced_costs.assign(d_.begin(), d_.begin() + n_);
  sol.basis = basis();
  sol.iterations = iterations_;
  return sol;
}

LpSolution solve_lp(const LinearProgram& lp, SimplexOptions options) {
  SimplexSolver solver(lp, options);
  return solver.solve();
}

}  // namespace vmc::lp
