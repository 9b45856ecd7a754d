#include "vmc/ks/kernel_search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <unordered_set>

#include <spdlog/spdlog.h>

#include "vmc/error.hpp"
#include "vmc/lp/simplex.hpp"

namespace vmc::ks {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::KSF: return "ksf";
    case Variant::KSFV: return "ksfv";
    case Variant::KSFVG: return "ksfvg";
  }
  return "unknown";
}

void KsParams::validate() const {
  if (!(t_max > 0.0)) throw InvalidModel("t_max must be positive");
  if (!(epsilon > 0.0)) throw InvalidModel("epsilon must be positive");
  if (!(omega > 0.0)) throw InvalidModel("omega must be positive");
  if (n_bar && *n_bar < 0) throw InvalidModel("n_bar must be non-negative");
  if (kernel_size && *kernel_size < 0) throw InvalidModel("kernel_size must be non-negative");
  if (bucket_size && *bucket_size < 1) throw InvalidModel("bucket_size must be positive");
  if (!(gap_tol >= 0.0)) throw InvalidModel("gap_tol must be non-negative");
}

std::vector<int> indices(const std::vector<FixedVar>& v) {
  std::vector<int> out;
  out.reserve(v.size());
  for (const FixedVar& f : v) out.push_back(f.var);
  return out;
}

FixingSets fix_variables(const lp::LpSolution& relax, const model::VmcpModel& model, double eps,
                         Variant variant) {
  FixingSets out;
  if (variant == Variant::KSF) return out;
  const std::vector<double>& rc = relax.reduced_costs;
  for (int j : model.binaries) {
    if (rc[j] >= eps) out.zeros_binary.push_back({j, rc[j]});
    else if (rc[j] <= -eps) out.ones_binary.push_back({j, rc[j]});
  }
  if (variant == Variant::KSFVG) {
    for (int j = 0; j < model.problem.num_vars(); ++j) {
      if (model.problem.kinds[j] == mip::VarKind::Integer && rc[j] >= eps) {
        out.zeros_integer.push_back({j, rc[j]});
      }
    }
  }
  return out;
}

std::vector<int> sort_binaries(const lp::LpSolution& relax, std::vector<int> unfixed) {
  const auto& x = relax.primal;
  const auto& rc = relax.reduced_costs;
  std::sort(unfixed.begin(), unfixed.end(), [&](int a, int b) {
    if (x[a] != x[b]) return x[a] > x[b];
    const double ra = std::abs(rc[a]);
    const double rb = std::abs(rc[b]);
    if (ra != rb) return ra < rb;
    return a < b;
  });
  return unfixed;
}

namespace {

std::vector<std::vector<int>> chunk(const std::vector<int>& items, std::size_t from, int size) {
  std::vector<std::vector<int>> out;
  for (std::size_t k = from; k < items.size(); k += static_cast<std::size_t>(size)) {
    const std::size_t end = std::min(items.size(), k + static_cast<std::size_t>(size));
    out.emplace_back(items.begin() + static_cast<long>(k), items.begin() + static_cast<long>(end));
  }
  return out;
}

std::vector<int> flatten(const std::vector<std::vector<int>>& buckets, std::size_t from) {
  std::vector<int> out;
  for (std::size_t b = from; b < buckets.size(); ++b) {
    out.insert(out.end(), buckets[b].begin(), buckets[b].end());
  }
  return out;
}

}  // namespace

KernelState build_kernel_and_buckets(const std::vector<int>& sorted, const lp::LpSolution& relax,
                                     const KsParams& params) {
  const int avail = static_cast<int>(sorted.size());
  int size = 0;
  if (params.kernel_size) {
    size = std::min(*params.kernel_size, avail);
  } else {
    for (int j : sorted) {
      if (relax.primal[j] > params.int_tol) ++size;
    }
    size = std::clamp(size, std::min(10, avail), avail);
  }
  KernelState s;
  s.kernel.assign(sorted.begin(), sorted.begin() + size);
  s.working_set = s.kernel;
  s.bucket_size = params.bucket_size.value_or(std::max(size, 1));
  s.buckets = chunk(sorted, static_cast<std::size_t>(size), s.bucket_size);
  return s;
}

mip::MipProblem make_restricted(const model::VmcpModel& model, const KernelState& state,
                                const FixingSets& fixings,
                                const std::optional<std::vector<int>>& bucket,
                                std::optional<double> ub) {
  std::unordered_set<int> free_set(state.working_set.begin(), state.working_set.end());
  if (bucket) free_set.insert(bucket->begin(), bucket->end());
  std::unordered_set<int> ones;
  for (const FixedVar& f : fixings.ones_binary) ones.insert(f.var);

  std::vector<int> zeros;
  for (int j : model.binaries) {
    if (!free_set.count(j) && !ones.count(j)) zeros.push_back(j);
  }
  for (const FixedVar& f : fixings.zeros_integer) zeros.push_back(f.var);
  const std::vector<int> one_list = indices(fixings.ones_binary);

  mip::MipProblem p = mip::apply_fixings(model.problem, zeros, one_list);
  if (ub && std::isfinite(*ub)) p = mip::add_cutoff(p, *ub);
  if (bucket) p = mip::add_piercing_cut(p, *bucket);
  return p;
}

namespace {

mip::MipResult solve_restricted(const mip::MipProblem& p, double budget, const KsParams& params) {
  mip::SolveConfig cfg;
  cfg.time_limit = std::max(budget, 1e-3);
  cfg.gap_tol = params.gap_tol;
  cfg.int_tol = params.int_tol;
  cfg.exec = params.exec;
  return mip::solve_mip(p, cfg);
}

}  // namespace

mip::MipResult expand_kernel_until_feasible(const model::VmcpModel& model, KernelState& state,
                                            const FixingSets& fixings, const KsParams& params,
                                            const std::function<double(const KernelState&)>& budget,
                                            const std::function<void(const TraceRecord&)>& record,
                                            const Observer& observer) {
  const std::size_t step = static_cast<std::size_t>(
      std::max(1.0, std::ceil(static_cast<double>(state.kernel.size()) * params.omega)));
  std::vector<int> rest = flatten(state.buckets, static_cast<std::size_t>(state.bucket_cursor));
  std::size_t taken = 0;
  while (taken < rest.size()) {
    const std::size_t end = std::min(rest.size(), taken + step);
    state.working_set.insert(state.working_set.end(), rest.begin() + static_cast<long>(taken),
                             rest.begin() + static_cast<long>(end));
    taken = end;
    state.buckets = chunk(rest, taken, state.bucket_size);
    state.bucket_cursor = 0;
    if (observer) observer(state, fixings);

    const mip::MipResult r =
        solve_restricted(make_restricted(model, state, fixings, std::nullopt, std::nullopt),
                         budget(state), params);
    TraceRecord t;
    t.phase = "expand";
    t.working_size = static_cast<int>(state.working_set.size());
    t.status = r.status;
    t.ub_i = r.objective.value_or(kInf);
    t.nodes = r.nodes;
    record(t);
    if (r.has_solution()) {
      state.kernel = state.working_set;
      if (observer) observer(state, fixings);
      return r;
    }
  }
  throw StillInfeasible("kernel expansion exhausted every bucket without a solution");
}

namespace {

using Clock = std::chrono::steady_clock;

class KernelSearch {
 public:
  KernelSearch(const model::Instance& inst, const KsParams& params, const Observer& observer)
      : inst_(inst), params_(params), observer_(observer), start_(Clock::now()) {}

  KsResult run();

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }
  double remaining() const { return std::max(0.0, std::min(params_.t_max, phase_end_) - elapsed()); }
  int buckets_to_scan(const KernelState& s) const {
    const int n = static_cast<int>(s.buckets.size()) - s.bucket_cursor;
    return params_.n_bar ? std::min(*params_.n_bar, n) : n;
  }
  void record(TraceRecord t) {
    t.wall_time = elapsed();
    t.ub_min = std::min(best_, t.ub_i);
    spdlog::info("{} bucket={} |U|={} status={} UB_i={} t={:.3f}s", t.phase, t.bucket,
                 t.working_size, mip::to_string(t.status), t.ub_i, t.wall_time);
    result_.trace.push_back(std::move(t));
  }
  void accept(const mip::MipResult& r, KernelState& s) {
    if (r.has_solution() && *r.objective < s.ub_min) {
      s.ub_min = *r.objective;
      s.incumbent = r.incumbent;
      best_ = s.ub_min;
    }
  }
  // Kernel phase plus bucket loop under one fixing level. Throws StillInfeasible.
  KernelState attempt(const FixingSets& fixings);

  const model::Instance& inst_;
  const KsParams& params_;
  const Observer& observer_;
  Clock::time_point start_;
  model::VmcpModel model_;
  lp::LpSolution relax_;
  double best_ = kInf;
  // Until a fixing level has a solution it may spend only half of what is
  // left before search_end_, the last one all of it. The unrestricted
  // fallback keeps the time after search_end_.
  double phase_end_ = kInf;
  double search_end_ = kInf;
  bool last_level_ = false;
  KsResult result_;
};

KernelState KernelSearch::attempt(const FixingSets& fixings) {
  std::unordered_set<int> fixed;
  for (const FixedVar& f : fixings.zeros_binary) fixed.insert(f.var);
  for (const FixedVar& f : fixings.ones_binary) fixed.insert(f.var);
  std::vector<int> unfixed;
  for (int j : model_.binaries) {
    if (!fixed.count(j)) unfixed.push_back(j);
  }
  KernelState state = build_kernel_and_buckets(sort_binaries(relax_, unfixed), relax_, params_);
  if (observer_) observer_(state, fixings);
  phase_end_ = last_level_ ? search_end_ : elapsed() + std::max(0.0, search_end_ - elapsed()) / 2;

  const double t1 = remaining() / (buckets_to_scan(state) + 1);
  mip::MipResult r = solve_restricted(
      make_restricted(model_, state, fixings, std::nullopt, std::nullopt), t1, params_);
  TraceRecord t;
  t.phase = "kernel";
  t.working_size = static_cast<int>(state.working_set.size());
  t.status = r.status;
  t.ub_i = r.objective.value_or(kInf);
  t.nodes = r.nodes;
  record(t);

  if (!r.has_solution()) {
    r = expand_kernel_until_feasible(
        model_, state, fixings, params_,
        [this](const KernelState& s) { return remaining() / (buckets_to_scan(s) + 1); },
        [this](const TraceRecord& rec) { record(rec); }, observer_);
  }
  accept(r, state);
  phase_end_ = kInf;

  const int scan = buckets_to_scan(state);
  for (int b = 0; b < scan; ++b) {
    if (remaining() <= 0.0) break;
    const double budget = remaining() / (scan - b);
    const std::vector<int>& bucket = state.buckets[static_cast<std::size_t>(state.bucket_cursor)];
    const std::optional<double> ub =
        std::isfinite(state.ub_min) ? std::optional<double>(state.ub_min) : std::nullopt;
    const mip::MipResult rb =
        solve_restricted(make_restricted(model_, state, fixings, bucket, ub), budget, params_);
    state.working_set.insert(state.working_set.end(), bucket.begin(), bucket.end());
    ++state.bucket_cursor;
    accept(rb, state);

    TraceRecord tb;
    tb.phase = "bucket";
    tb.bucket = b + 1;
    tb.working_size = static_cast<int>(state.working_set.size());
    tb.status = rb.status;
    tb.ub_i = rb.objective.value_or(kInf);
    tb.nodes = rb.nodes;
    record(tb);
    if (observer_) observer_(state, fixings);
  }
  return state;
}

KsResult KernelSearch::run() {
  params_.validate();
  model_ = model::build_mip(inst_);

  lp::SimplexOptions lp_options;
  lp_options.exec = params_.exec;
  lp_options.deadline =
      start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(params_.t_max));
  relax_ = lp::solve_lp(model_.problem.relaxation(), lp_options);

  auto finish = [&](std::optional<std::vector<double>> x) {
    if (x) {
      result_.status = KsStatus::Solved;
      result_.plan = model::extract_plan(model_.index, *x);
      result_.ub_min = model_.problem.objective_value(*x);
    }
    result_.wall_time = elapsed();
    return std::move(result_);
  };
  if (relax_.status != lp::LpStatus::Optimal) {
    spdlog::info("LP relaxation ended {}", lp::to_string(relax_.status));
    return finish(std::nullopt);
  }

  const FixingSets full = fix_variables(relax_, model_, params_.epsilon, params_.variant);
  result_.fixing_stats = {static_cast<int>(full.zeros_binary.size()),
                          static_cast<int>(full.ones_binary.size()),
                          static_cast<int>(full.zeros_integer.size())};

  FixingSets no_c = full;
  no_c.zeros_integer.clear();
  const FixingSets ladder[] = {full, no_c, FixingSets{}};
  const bool distinct[] = {true, !full.zeros_integer.empty(), !no_c.empty()};
  search_end_ = elapsed() + remaining() / 2;
  for (int level = 0; level < 3; ++level) {
    if (!distinct[level]) continue;
    last_level_ = level == 2 || (level == 1 && !distinct[2]) || (level == 0 && !distinct[1] && !distinct[2]);
    try {
      KernelState s = attempt(ladder[level]);
      result_.fallback_level = level;
      return finish(s.incumbent);
    } catch (const StillInfeasible&) {
      spdlog::info("fixing level {} left MIP(U) without a solution", level);
    }
  }

  result_.fallback_level = 3;
  phase_end_ = kInf;
  const mip::MipResult r = solve_restricted(model_.problem, remaining(), params_);
  TraceRecord t;
  t.phase = "fallback";
  t.working_size = static_cast<int>(model_.binaries.size());
  t.status = r.status;
  t.ub_i = r.objective.value_or(kInf);
  t.nodes = r.nodes;
  record(t);
  return finish(r.incumbent);
}

}  // namespace

KsResult run_kernel_search(const model::Instance& inst, const KsParams& params,
                           const Observer& observer) {
  KernelSearch ks(inst, params, observer);
  return ks.run();
}

}  // namespace vmc::ks
