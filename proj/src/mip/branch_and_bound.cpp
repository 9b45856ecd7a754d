#include "vmc/mip/branch_and_bound.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>

#include <spdlog/spdlog.h>

#include "vmc/lp/reduction.hpp"
#include "vmc/lp/simplex.hpp"

namespace vmc::mip {

const char* to_string(MipStatus s) {
  switch (s) {
    case MipStatus::Optimal: return "optimal";
    case MipStatus::FeasibleTimeLimit: return "feasible_time_limit";
    case MipStatus::Infeasible: return "infeasible";
    case MipStatus::NoSolutionTimeLimit: return "no_solution_time_limit";
    case MipStatus::Unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

using Clock = std::chrono::steady_clock;

struct BoundChange {
  int var;
  double lower;
  double upper;
};

struct Node {
  long id = 0;
  double bound = -kInf;
  std::vector<BoundChange> changes;
  lp::Basis basis;
};

// Open nodes, reachable both by (bound, id) and by recency.
class OpenSet {
 public:
  bool empty() const { return nodes_.empty(); }
  double best_bound() const { return by_bound_.begin()->first; }
  void push(Node n) {
    by_bound_.insert({n.bound, n.id});
    const long id = n.id;
    nodes_.emplace(id, std::move(n));
  }
  Node pop_best() { return take(by_bound_.begin()->second); }
  Node pop_newest() { return take(nodes_.rbegin()->first); }

 private:
  Node take(long id) {
    auto it = nodes_.find(id);
    Node n = std::move(it->second);
    nodes_.erase(it);
    by_bound_.erase({n.bound, n.id});
    return n;
  }
  std::set<std::pair<double, long>> by_bound_;
  std::map<long, Node> nodes_;
};

class BranchAndBound {
 public:
  BranchAndBound(const MipProblem& problem, const SolveConfig& config)
      : problem_(problem), config_(config), start_(Clock::now()) {
    if (std::isfinite(config.time_limit)) {
      deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(
                               std::chrono::duration<double>(config.time_limit));
    }
  }

  MipResult run();

 private:
  double scale(double v) const { return std::max(1.0, std::abs(v)); }
  double prune_level() const {
    if (!std::isfinite(incumbent_value_)) return kInf;
    return incumbent_value_ -
           std::max(config_.gap_tol * scale(incumbent_value_), 1e-9 * scale(incumbent_value_));
  }
  bool out_of_budget() const {
    if (deadline_ && Clock::now() >= *deadline_) return true;
    return config_.node_limit && result_.nodes >= *config_.node_limit;
  }
  void note_bound(double global);
  void try_incumbent(const std::vector<double>& reduced_x);
  void compute_locks();
  void dive(lp::SimplexSolver& solver, const lp::LpSolution& start);
  MipResult finish(bool complete);

  const MipProblem& problem_;
  SolveConfig config_;
  Clock::time_point start_;
  std::optional<Clock::time_point> deadline_;
  lp::ReducedProgram reduced_;
  std::vector<char> integral_;
  // Rows that an increase (decrease) of the column can violate.
  std::vector<int> up_locks_;
  std::vector<int> down_locks_;
  double incumbent_value_ = kInf;
  MipResult result_;
};

void BranchAndBound::note_bound(double global) {
  const double capped = std::min(global, incumbent_value_);
  if (capped > result_.best_bound) {
    result_.best_bound = capped;
    result_.progress.push_back({result_.nodes, result_.best_bound, incumbent_value_});
  }
}

void BranchAndBound::try_incumbent(const std::vector<double>& reduced_x) {
  std::vector<double> x = reduced_.expand(reduced_x);
  for (int j = 0; j < problem_.num_vars(); ++j) {
    if (problem_.is_integral(j)) x[j] = std::round(x[j]);
  }
  const double viol = problem_.max_violation(x, config_.int_tol);
  if (viol > config_.feas_tol) {
    spdlog::debug("rejecting integral LP point: violation {:.3g}", viol);
    return;
  }
  const double obj = problem_.objective_value(x);
  if (obj < incumbent_value_) {
    incumbent_value_ = obj;
    result_.incumbent = std::move(x);
    result_.objective = obj;
    result_.progress.push_back({result_.nodes, result_.best_bound, incumbent_value_});
    spdlog::debug("node {}: incumbent {:.6f}", result_.nodes, obj);
  }
}

void BranchAndBound::compute_locks() {
  const int nr = reduced_.lp.num_vars;
  up_locks_.assign(nr, 0);
  down_locks_.assign(nr, 0);
  for (const lp::Constraint& c : reduced_.lp.constraints) {
    for (const lp::Term& t : c.terms) {
      if (t.coef == 0.0) continue;
      const bool pos = t.coef > 0.0;
      if (c.relation != lp::Relation::GreaterEqual) ++(pos ? up_locks_ : down_locks_)[t.var];
      if (c.relation != lp::Relation::LessEqual) ++(pos ? down_locks_ : up_locks_)[t.var];
    }
  }
}

// Rounds the node solution towards integrality in batches, re-solving the LP
// after each batch: the tenth of the locked columns closest to an integer is
// fixed at the nearest value, and once none is left the lock-free columns
// are rounded in their free direction. Node bounds
// and basis are restored afterwards.
void BranchAndBound::dive(lp::SimplexSolver& solver, const lp::LpSolution& start) {
  std::vector<BoundChange> saved;
  std::vector<double> x = start.primal;
  int rounds = 0;
  const char* outcome = "integral";
  std::vector<std::pair<double, int>> locked;  // (distance to integer, column)
  auto fix = [&](int k, double lo, double hi) {
    saved.push_back({k, solver.lower(k), solver.upper(k)});
    solver.set_bounds(k, lo, hi);
  };
  for (;;) {
    int rounded_up = -1;
    locked.clear();
    std::vector<int> lock_free;
    for (int k = 0; k < static_cast<int>(x.size()); ++k) {
      if (!integral_[k]) continue;
      const double frac = x[k] - std::floor(x[k]);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist <= config_.int_tol) continue;
      if (up_locks_[k] == 0 || down_locks_[k] == 0) {
        lock_free.push_back(k);
      } else {
        locked.push_back({dist, k});
      }
    }
    if (lock_free.empty() && locked.empty()) {
      try_incumbent(x);
      break;
    }
    if (!lock_free.empty()) {
      for (int k : lock_free) {
        if (up_locks_[k] == 0) {
          fix(k, std::ceil(x[k]), solver.upper(k));
        } else {
          fix(k, solver.lower(k), std::floor(x[k]));
        }
      }
    } else {
      // Rounding down only pushes the fractional mass onto other columns;
      // rounding up the column nearest its ceiling commits it.
      int k = locked.front().second;
      double best = -1.0;
      for (const auto& [dist, c] : locked) {
        const double frac = x[c] - std::floor(x[c]);
        if (frac > best) {
          best = frac;
          k = c;
        }
      }
      fix(k, std::ceil(x[k]), solver.upper(k));
      rounded_up = k;
    }
    lp::LpSolution sol = solver.solve();
    ++rounds;
    result_.lp_iterations += sol.iterations;
    if (sol.status == lp::LpStatus::Infeasible && rounded_up >= 0) {
      // One backtrack: the other direction.
      const BoundChange& before = saved.back();
      solver.set_bounds(rounded_up, before.lower, std::floor(x[rounded_up]));
      sol = solver.solve();
      result_.lp_iterations += sol.iterations;
    }
    if (sol.status != lp::LpStatus::Optimal || sol.objective >= prune_level()) {
      outcome = sol.status != lp::LpStatus::Optimal ? lp::to_string(sol.status) : "cut off";
      break;
    }
    x = sol.primal;
  }
  for (auto it = saved.rbegin(); it != saved.rend(); ++it) solver.set_bounds(it->var, it->lower, it->upper);
  solver.load_basis(start.basis);
  spdlog::debug("node {}: dive {} after {} rounds", result_.nodes, outcome, rounds);
}

MipResult BranchAndBound::finish(bool complete) {
  if (complete) {
    result_.status = result_.incumbent ? MipStatus::Optimal : MipStatus::Infeasible;
    note_bound(kInf);
    if (!result_.incumbent) result_.best_bound = kInf;
  } else {
    result_.status =
        result_.incumbent ? MipStatus::FeasibleTimeLimit : MipStatus::NoSolutionTimeLimit;
  }
  result_.wall_time = std::chrono::duration<double>(Clock::now() - start_).count();
  spdlog::debug("b&b {}: {} nodes, {} LP iterations, bound {:.6f}, incumbent {:.6f}, {:.3f}s",
               to_string(result_.status), result_.nodes, result_.lp_iterations, result_.best_bound,
               incumbent_value_, result_.wall_time);
  return std::move(result_);
}

MipResult BranchAndBound::run() {
  problem_.validate();
  lp::LinearProgram relax = problem_.relaxation();
  for (int j = 0; j < relax.num_vars; ++j) {
    if (!problem_.is_integral(j)) continue;
    lp::Bounds& b = relax.bounds[j];
    if (std::isfinite(b.lower)) b.lower = std::ceil(b.lower - config_.int_tol);
    if (std::isfinite(b.upper)) b.upper = std::floor(b.upper + config_.int_tol);
    if (b.lower > b.upper) return finish(true);
  }
  reduced_ = lp::reduce_program(relax);
  if (reduced_.infeasible) return finish(true);

  const int nr = reduced_.lp.num_vars;
  integral_.resize(nr);
  for (int k = 0; k < nr; ++k) {
    const VarKind kind = problem_.kinds[reduced_.kept[k]];
    integral_[k] = kind == VarKind::Continuous       ? 0
                   : kind == VarKind::Binary && config_.binaries_first ? 2
                                                                        : 1;
  }

  compute_locks();
  long last_dive = 0;

  lp::SimplexOptions options;
  options.exec = config_.exec;
  options.deadline = deadline_;
  lp::SimplexSolver solver(reduced_.lp, options);
  std::vector<double> root_lower(nr);
  std::vector<double> root_upper(nr);
  for (int k = 0; k < nr; ++k) {
    root_lower[k] = solver.lower(k);
    root_upper[k] = solver.upper(k);
  }
  std::vector<char> touched(nr, 0);
  std::vector<int> touched_list;

  OpenSet open;
  long next_id = 1;
  std::optional<Node> current = Node{};
  bool warm = true;

  for (;;) {
    if (!current) {
      if (open.empty()) return finish(true);
      if (open.best_bound() >= prune_level()) return finish(true);
      // Depth first until an incumbent exists, best bound afterwards.
      current = result_.incumbent ? open.pop_best() : open.pop_newest();
      warm = false;
    }
    note_bound(std::min(current->bound, open.empty() ? kInf : open.best_bound()));
    if (std::isfinite(incumbent_value_) && incumbent_value_ - result_.best_bound <=
                                               config_.gap_tol * scale(incumbent_value_)) {
      return finish(true);
    }
    if (out_of_budget()) return finish(false);

    if (!warm) {
      for (int k : touched_list) {
        solver.set_bounds(k, root_lower[k], root_upper[k]);
        touched[k] = 0;
      }
      touched_list.clear();
      for (const BoundChange& c : current->changes) {
        solver.set_bounds(c.var, c.lower, c.upper);
        if (!touched[c.var]) {
          touched[c.var] = 1;
          touched_list.push_back(c.var);
        }
      }
      solver.load_basis(current->basis);
    }

    const lp::LpSolution sol = solver.solve();
    ++result_.nodes;
    result_.lp_iterations += sol.iterations;

    if (sol.status == lp::LpStatus::TimeLimit) {
      open.push(std::move(*current));
      return finish(false);
    }
    if (sol.status == lp::LpStatus::Unbounded) {
      if (result_.nodes == 1) {
        result_.status = MipStatus::Unbounded;
        result_.wall_time = std::chrono::duration<double>(Clock::now() - start_).count();
        return std::move(result_);
      }
      throw NumericalBreakdown("node relaxation unbounded below a bounded root");
    }
    if (sol.status == lp::LpStatus::Infeasible || sol.objective >= prune_level()) {
      current.reset();
      continue;
    }

    // Most fractional within the highest priority class that has a candidate.
    int branch = -1;
    int best_class = 0;
    double best_score = 0.0;
    for (int k = 0; k < nr; ++k) {
      if (integral_[k] < std::max(best_class, 1)) continue;
      const double v = sol.primal[k];
      const double frac = v - std::floor(v);
      const double dist = std::min(frac, 1.0 - frac);
      if (dist <= config_.int_tol) continue;
      if (integral_[k] > best_class || dist > best_score) {
        best_class = integral_[k];
        best_score = dist;
        branch = k;
      }
    }
    if (branch < 0) {
      try_incumbent(sol.primal);
      current.reset();
      continue;
    }
    if (config_.dive_interval > 0) {
      const long interval = config_.dive_interval * (result_.incumbent ? 10 : 1);
      if (result_.nodes == 1 || result_.nodes - last_dive >= interval) {
        last_dive = result_.nodes;
        dive(solver, sol);
        if (sol.objective >= prune_level()) {
          current.reset();
          continue;
        }
      }
    }

    const double v = sol.primal[branch];
    const double lo = solver.lower(branch);
    const double hi = solver.upper(branch);
    const BoundChange down{branch, lo, std::floor(v)};
    const BoundChange up{branch, std::ceil(v), hi};
    // Without an incumbent, dive up on binaries: spare capacity keeps the
    // remaining integer columns easy to round.
    const bool up_first = (integral_[branch] == 2 && !result_.incumbent) || v - std::floor(v) >= 0.5;

    Node other;
    other.id = next_id++;
    other.bound = sol.objective;
    other.changes = current->changes;
    other.changes.push_back(up_first ? down : up);
    other.basis = sol.basis;
    open.push(std::move(other));

    const BoundChange& first = up_first ? up : down;
    current->id = next_id++;
    current->bound = sol.objective;
    current->changes.push_back(first);
    solver.set_bounds(first.var, first.lower, first.upper);
    if (!touched[first.var]) {
      touched[first.var] = 1;
      touched_list.push_back(first.var);
    }
    warm = true;
  }
}

}  // namespace

MipResult solve_mip(const MipProblem& problem, const SolveConfig& config) {
  BranchAndBound bb(problem, config);
  return bb.run();
}

}  // namespace vmc::mip
