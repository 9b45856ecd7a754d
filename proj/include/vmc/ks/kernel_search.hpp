#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vmc/kernels/sparse_kernels.hpp"
#include "vmc/lp/linear_program.hpp"
#include "vmc/mip/branch_and_bound.hpp"
#include "vmc/model/vmcp.hpp"

namespace vmc::ks {

enum class Variant { KSF, KSFV, KSFVG };

const char* to_string(Variant v);

struct KsParams {
  double t_max = 60.0;        // seconds, LP and fixing included
  std::optional<int> n_bar;   // buckets analyzed; all when empty
  double epsilon = 1e-4;
  double omega = 1.0;
  std::optional<int> kernel_size;  // overrides the positive-LP-value rule
  std::optional<int> bucket_size;  // defaults to the kernel size
  Variant variant = Variant::KSFVG;
  double gap_tol = 1e-4;      // for every restricted solve
  double int_tol = 1e-6;
  kernels::Exec exec = kernels::Exec::Parallel;

  void validate() const;
};

struct FixedVar {
  int var;
  double reduced_cost;
};

struct FixingSets {
  std::vector<FixedVar> zeros_binary;   // strategy a
  std::vector<FixedVar> ones_binary;    // strategy b
  std::vector<FixedVar> zeros_integer;  // strategy c

  bool empty() const { return zeros_binary.empty() && ones_binary.empty() && zeros_integer.empty(); }
};

std::vector<int> indices(const std::vector<FixedVar>& v);

struct KernelState {
  std::vector<int> kernel;
  std::vector<std::vector<int>> buckets;
  std::vector<int> working_set;
  double ub_min = kInf;
  std::optional<std::vector<double>> incumbent;
  int bucket_cursor = 0;  // buckets [0, cursor) are already in the working set
  int bucket_size = 0;
};

struct TraceRecord {
  std::string phase;   // kernel, expand, bucket, fallback
  int bucket = -1;     // 1-based bucket number in the bucket loop
  int working_size = 0;
  mip::MipStatus status = mip::MipStatus::Infeasible;
  double ub_i = kInf;
  double ub_min = kInf;
  double wall_time = 0.0;  // seconds since the run started
  long nodes = 0;
};

enum class KsStatus { Solved, NoSolution };

struct FixingStats {
  int zeros_binary = 0;
  int ones_binary = 0;
  int zeros_integer = 0;
};

struct KsResult {
  KsStatus status = KsStatus::NoSolution;
  double ub_min = kInf;
  std::optional<model::Plan> plan;
  std::vector<TraceRecord> trace;
  FixingStats fixing_stats;  // as computed, before any fallback
  int fallback_level = 0;    // 0 none, 1 without c, 2 without a/b, 3 unrestricted
  double wall_time = 0.0;
};

// Called after the kernel is built, after every expansion step and after
// every bucket iteration.
using Observer = std::function<void(const KernelState&, const FixingSets&)>;

FixingSets fix_variables(const lp::LpSolution& relax, const model::VmcpModel& model, double eps,
                         Variant variant);

// LP value descending, |reduced cost| ascending, index ascending.
std::vector<int> sort_binaries(const lp::LpSolution& relax, std::vector<int> unfixed);

KernelState build_kernel_and_buckets(const std::vector<int>& sorted, const lp::LpSolution& relax,
                                     const KsParams& params);

// MIP(U) with U = working_set plus `bucket`, fixings applied, and the cutoff
// and piercing rows added when given.
mip::MipProblem make_restricted(const model::VmcpModel& model, const KernelState& state,
                                const FixingSets& fixings,
                                const std::optional<std::vector<int>>& bucket,
                                std::optional<double> ub);

// Solves MIP(U) with U grown by ceil(|K| * omega) bucket variables per round
// until a solution appears. On success the kernel becomes U and the buckets
// are rebuilt from the rest. `budget` returns the time for the next solve.
// Throws StillInfeasible when the buckets run out.
mip::MipResult expand_kernel_until_feasible(const model::VmcpModel& model, KernelState& state,
                                            const FixingSets& fixings, const KsParams& params,
                                            const std::function<double(const KernelState&)>& budget,
                                            const std::function<void(const TraceRecord&)>& record,
                                            const Observer& observer = {});

KsResult run_kernel_search(const model::Instance& inst, const KsParams& params,
                           const Observer& observer = {});

}  // namespace vmc::ks
