#include "vmc/bench/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <ostream>

#include <omp.h>
#include <spdlog/spdlog.h>

#include "vmc/error.hpp"
#include "vmc/gen/generator.hpp"
#include "vmc/mip/branch_and_bound.hpp"
#include "vmc/model/vmcp.hpp"

namespace vmc::bench {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Exact: return "exact";
    case Algorithm::KSF: return "ksf";
    case Algorithm::KSFV: return "ksfv";
    case Algorithm::KSFVG: return "ksfvg";
  }
  return "unknown";
}

Algorithm parse_algorithm(const std::string& name) {
  for (Algorithm a : {Algorithm::Exact, Algorithm::KSF, Algorithm::KSFV, Algorithm::KSFVG}) {
    if (name == to_string(a)) return a;
  }
  throw InvalidModel("unknown algorithm '" + name + "'");
}

AlgoOutcome run_algorithm(const model::Instance& inst, Algorithm algo, const AlgoOptions& options) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  AlgoOutcome out;
  out.algo = algo;
  if (algo == Algorithm::Exact) {
    const model::VmcpModel m = model::build_mip(inst);
    mip::SolveConfig cfg;
    cfg.time_limit = options.time_limit;
    cfg.gap_tol = options.gap_tol;
    cfg.exec = options.exec;
    const mip::MipResult r = mip::solve_mip(m.problem, cfg);
    out.status = mip::to_string(r.status);
    out.best_bound = r.best_bound;
    out.nodes = r.nodes;
    out.proven_optimal = r.status == mip::MipStatus::Optimal && options.gap_tol == 0.0;
    if (r.incumbent) {
      out.plan = model::extract_plan(m.index, *r.incumbent);
      out.objective = r.objective;
    }
  } else {
    ks::KsParams p;
    p.t_max = options.time_limit;
    p.n_bar = options.n_bar;
    p.omega = options.omega;
    p.epsilon = options.epsilon;
    p.exec = options.exec;
    p.variant = algo == Algorithm::KSF    ? ks::Variant::KSF
                : algo == Algorithm::KSFV ? ks::Variant::KSFV
                                          : ks::Variant::KSFVG;
    ks::KsResult r = ks::run_kernel_search(inst, p);
    out.status = r.status == ks::KsStatus::Solved ? "solved" : "no_solution";
    for (const ks::TraceRecord& t : r.trace) out.nodes += t.nodes;
    out.trace = std::move(r.trace);
    out.fixing_stats = r.fixing_stats;
    out.fallback_level = r.fallback_level;
    if (r.plan) {
      out.plan = std::move(r.plan);
      out.objective = r.ub_min;
    }
  }
  out.time = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

void BenchConfig::validate() const {
  if (cells.empty()) throw InvalidModel("bench needs at least one cell");
  if (instances_per_cell < 1) throw InvalidModel("instances_per_cell must be at least 1");
  if (algorithms.empty()) throw InvalidModel("bench needs at least one algorithm");
  if (!(options.time_limit > 0.0) || !(exact_time_limit > 0.0)) {
    throw InvalidModel("time limits must be positive");
  }
}

std::uint64_t instance_seed(const BenchConfig& config, int cell, int k) {
  return config.seed_base * 1000003ULL + static_cast<std::uint64_t>(cell) * 1000ULL +
         static_cast<std::uint64_t>(k);
}

namespace {

struct Job {
  int cell;
  int instance;
};

std::vector<InstanceRecord> run_job(const BenchConfig& config, const Job& job) {
  const BenchCell& cell = config.cells[static_cast<std::size_t>(job.cell)];
  gen::GenParams gp;
  gp.num_servers = cell.num_servers;
  gp.alpha = config.alpha;
  gp.beta = cell.beta;
  gp.gamma = config.gamma;
  gp.seed = instance_seed(config, job.cell, job.instance);
  const model::Instance inst = gen::generate_instance(gp);
  if (config.instance_dir) {
    const std::string name = "inst_c" + std::to_string(job.cell) + "_k" +
                             std::to_string(job.instance) + ".json";
    write_json((std::filesystem::path(*config.instance_dir) / name).string(),
               instance_to_json(inst));
  }

  // Nested parallelism is off, so solver kernels stay serial inside a job.
  AlgoOptions exact_opts = config.options;
  exact_opts.time_limit = config.exact_time_limit;
  exact_opts.gap_tol = 0.0;
  const AlgoOutcome exact = run_algorithm(inst, Algorithm::Exact, exact_opts);

  std::vector<AlgoOutcome> outcomes;
  for (Algorithm a : config.algorithms) {
    if (a == Algorithm::Exact) outcomes.push_back(exact);
    else outcomes.push_back(run_algorithm(inst, a, config.options));
  }

  double f_star = kInf;
  std::string reference = "best_known";
  if (exact.objective) {
    f_star = *exact.objective;
    reference = exact.proven_optimal ? "exact_optimal" : "exact_time_limit";
  }
  if (!exact.proven_optimal) {
    for (const AlgoOutcome& o : outcomes) {
      if (o.objective && *o.objective < f_star) {
        f_star = *o.objective;
        reference = "best_known";
      }
    }
  }

  std::vector<InstanceRecord> out;
  for (const AlgoOutcome& o : outcomes) {
    InstanceRecord r;
    r.cell = job.cell;
    r.instance = job.instance;
    r.num_servers = cell.num_servers;
    r.beta = cell.beta;
    r.seed = gp.seed;
    r.algo = o.algo;
    r.status = o.status;
    r.f_h = o.objective;
    r.f_star = f_star;
    r.reference = reference;
    if (o.objective && std::isfinite(f_star) && f_star > 0.0) r.error = error_pct(*o.objective, f_star);
    r.feasible = o.plan && model::check_plan(inst, *o.plan).empty();
    r.time = std::max(o.time, 1e-6);
    r.nodes = o.nodes;
    r.restricted_solves = static_cast<int>(o.trace.size());
    r.fallback_level = o.fallback_level;
    r.fixing_stats = o.fixing_stats;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  config.validate();
  if (config.instance_dir) std::filesystem::create_directories(*config.instance_dir);
  std::vector<Job> jobs;
  for (int c = 0; c < static_cast<int>(config.cells.size()); ++c) {
    for (int k = 0; k < config.instances_per_cell; ++k) jobs.push_back({c, k});
  }
  std::vector<std::vector<InstanceRecord>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  const int threads = config.threads > 0 ? config.threads : omp_get_max_threads();
  const long n_jobs = static_cast<long>(jobs.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long t = 0; t < n_jobs; ++t) {
    try {
      results[static_cast<std::size_t>(t)] = run_job(config, jobs[static_cast<std::size_t>(t)]);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(t)] = e.what();
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw Error("bench job failed: " + e);
  }

  BenchReport report;
  report.config = config;
  for (auto& r : results) {
    for (auto& rec : r) report.records.push_back(std::move(rec));
  }
  std::stable_sort(report.records.begin(), report.records.end(),
                   [](const InstanceRecord& a, const InstanceRecord& b) {
                     if (a.cell != b.cell) return a.cell < b.cell;
                     return a.instance < b.instance;
                   });

  for (int c = 0; c < static_cast<int>(config.cells.size()); ++c) {
    for (Algorithm a : config.algorithms) {
      AggregateRow row;
      row.num_servers = config.cells[static_cast<std::size_t>(c)].num_servers;
      row.beta = config.cells[static_cast<std::size_t>(c)].beta;
      row.algo = a;
      std::vector<double> errs;
      std::vector<double> times;
      for (const InstanceRecord& r : report.records) {
        if (r.cell != c || r.algo != a) continue;
        ++row.n_instances;
        times.push_back(r.time);
        if (r.error) errs.push_back(*r.error);
      }
      row.n_solved = static_cast<int>(errs.size());
      if (!errs.empty()) {
        row.stats = aggregate_cell(errs, times);
      } else {
        row.stats = aggregate_cell(std::vector<double>{0.0}, times);
        row.stats.gp = row.stats.gp_arith = row.stats.wgp = std::nan("");
      }
      report.aggregates.push_back(row);
    }
  }
  return report;
}

void write_csv(std::ostream& os, const BenchReport& report) {
  os << "num_servers,beta,algo,GP,WGP,TT,n_instances\n";
  for (const AggregateRow& r : report.aggregates) {
    os << r.num_servers << ',' << r.beta << ',' << to_string(r.algo) << ',' << r.stats.gp << ','
       << r.stats.wgp << ',' << r.stats.tt << ',' << r.n_instances << '\n';
  }
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

json report_to_json(const BenchReport& report, bool include_timing) {
  const BenchConfig& c = report.config;
  json j;
  j["header"] = {
      {"reference", "f_star is the bundled exact branch and bound at gap 0 when it proves "
                    "optimality, otherwise the best objective any algorithm found"},
      {"timing", "seconds from model build to algorithm return; instance generation excluded"},
      {"gp", "shifted geometric mean exp(mean ln(1+e))-1 of percent errors; gp_arith is the plain mean"},
  };
  json cells = json::array();
  for (const BenchCell& cell : c.cells) cells.push_back({{"num_servers", cell.num_servers}, {"beta", cell.beta}});
  json algos = json::array();
  for (Algorithm a : c.algorithms) algos.push_back(to_string(a));
  j["config"] = {
      {"cells", cells},
      {"instances_per_cell", c.instances_per_cell},
      {"alpha", c.alpha},
      {"gamma", c.gamma},
      {"algorithms", algos},
      {"time_limit", c.options.time_limit},
      {"exact_time_limit", c.exact_time_limit},
      {"n_bar", c.options.n_bar ? json(*c.options.n_bar) : json(nullptr)},
      {"omega", c.options.omega},
      {"epsilon", c.options.epsilon},
      {"seed_base", c.seed_base},
  };
  json recs = json::array();
  for (const InstanceRecord& r : report.records) {
    json o = {
        {"cell", r.cell},
        {"instance", r.instance},
        {"num_servers", r.num_servers},
        {"beta", r.beta},
        {"seed", r.seed},
        {"algo", to_string(r.algo)},
        {"status", r.status},
        {"f_h", optional_number(r.f_h)},
        {"f_star", finite_or_null(r.f_star)},
        {"reference", r.reference},
        {"error", optional_number(r.error)},
        {"feasible", r.feasible},
        {"nodes", r.nodes},
        {"restricted_solves", r.restricted_solves},
        {"fallback_level", r.fallback_level},
        {"fixed", {{"zeros_binary", r.fixing_stats.zeros_binary},
                   {"ones_binary", r.fixing_stats.ones_binary},
                   {"zeros_integer", r.fixing_stats.zeros_integer}}},
    };
    if (include_timing) o["time"] = r.time;
    recs.push_back(std::move(o));
  }
  j["instances"] = std::move(recs);
  json aggs = json::array();
  for (const AggregateRow& r : report.aggregates) {
    json o = {
        {"num_servers", r.num_servers},
        {"beta", r.beta},
        {"algo", to_string(r.algo)},
        {"GP", finite_or_null(r.stats.gp)},
        {"GP_arith", finite_or_null(r.stats.gp_arith)},
        {"WGP", finite_or_null(r.stats.wgp)},
        {"n_instances", r.n_instances},
        {"n_solved", r.n_solved},
    };
    if (include_timing) o["TT"] = r.stats.tt;
    aggs.push_back(std::move(o));
  }
  j["aggregates"] = std::move(aggs);
  return j;
}

}  // namespace vmc::bench
