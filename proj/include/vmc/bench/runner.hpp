#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vmc/bench/io.hpp"
#include "vmc/bench/metrics.hpp"
#include "vmc/ks/kernel_search.hpp"
#include "vmc/model/instance.hpp"

namespace vmc::bench {

enum class Algorithm { Exact, KSF, KSFV, KSFVG };

const char* to_string(Algorithm a);
// Throws InvalidModel on an unknown name.
Algorithm parse_algorithm(const std::string& name);

struct AlgoOptions {
  double time_limit = 60.0;
  double gap_tol = 0.0;  // exact solves only
  std::optional<int> n_bar;
  double omega = 1.0;
  double epsilon = 1e-4;
  kernels::Exec exec = kernels::Exec::Parallel;
};

struct AlgoOutcome {
  Algorithm algo = Algorithm::Exact;
  std::string status;  // solver status string
  std::optional<double> objective;
  std::optional<model::Plan> plan;
  double best_bound = -kInf;  // exact only
  bool proven_optimal = false;
  double time = 0.0;  // model build to return
  long nodes = 0;
  std::vector<ks::TraceRecord> trace;
  ks::FixingStats fixing_stats;
  int fallback_level = 0;
};

AlgoOutcome run_algorithm(const model::Instance& inst, Algorithm algo, const AlgoOptions& options);

struct BenchCell {
  int num_servers = 10;
  double beta = 0.2;
};

struct BenchConfig {
  std::vector<BenchCell> cells;
  int instances_per_cell = 3;
  double alpha = 0.5;
  double gamma = 0.5;
  std::vector<Algorithm> algorithms{Algorithm::Exact, Algorithm::KSFVG};
  AlgoOptions options;           // heuristics
  double exact_time_limit = 600;  // reference solve
  std::uint64_t seed_base = 1;
  std::optional<std::string> instance_dir;  // write generated instances here
  int threads = 0;                          // 0: OpenMP default

  void validate() const;
};

// Seed of instance k in cell c.
std::uint64_t instance_seed(const BenchConfig& config, int cell, int k);

struct InstanceRecord {
  int cell = 0;
  int instance = 0;
  int num_servers = 0;
  double beta = 0.0;
  std::uint64_t seed = 0;
  Algorithm algo = Algorithm::Exact;
  std::string status;
  std::optional<double> f_h;
  double f_star = 0.0;
  std::string reference;  // exact_optimal, exact_time_limit or best_known
  std::optional<double> error;
  bool feasible = false;  // plan present and check_plan empty
  double time = 0.0;
  long nodes = 0;
  int restricted_solves = 0;
  int fallback_level = 0;
  ks::FixingStats fixing_stats;
};

struct AggregateRow {
  int num_servers = 0;
  double beta = 0.0;
  Algorithm algo = Algorithm::Exact;
  CellAggregate stats;
  int n_instances = 0;
  int n_solved = 0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<InstanceRecord> records;  // sorted by (cell, instance, algorithm)
  std::vector<AggregateRow> aggregates;
};

BenchReport run_bench(const BenchConfig& config);

// num_servers,beta,algo,GP,WGP,TT,n_instances
void write_csv(std::ostream& os, const BenchReport& report);
json report_to_json(const BenchReport& report, bool include_timing = true);

}  // namespace vmc::bench
