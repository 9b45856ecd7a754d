// vmc: generate, solve, check and benchmark VM consolidation instances.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "vmc/bench/io.hpp"
#include "vmc/bench/runner.hpp"
#include "vmc/error.hpp"
#include "vmc/gen/generator.hpp"
#include "vmc/log.hpp"
#include "vmc/lp/linear_program.hpp"
#include "vmc/model/vmcp.hpp"

namespace {

using namespace vmc;

enum Exit { kOk = 0, kInvalid = 1, kSolverFailure = 2 };

void emit(const bench::json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    bench::write_json(path, j);
  }
}

std::vector<bench::BenchCell> parse_cells(const std::vector<std::string>& specs) {
  std::vector<bench::BenchCell> out;
  for (const std::string& s : specs) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw InvalidModel("cell '" + s + "' is not SERVERS:BETA");
    try {
      out.push_back({std::stoi(s.substr(0, colon)), std::stod(s.substr(colon + 1))});
    } catch (const std::exception&) {
      throw InvalidModel("cell '" + s + "' is not SERVERS:BETA");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  init_logging();
  CLI::App app{"Virtual machine consolidation: exact and kernel search solvers"};
  app.require_subcommand(1);

  gen::GenParams gp;
  std::string output;
  auto* generate = app.add_subcommand("generate", "Write a random instance");
  generate->add_option("--servers", gp.num_servers, "Number of servers")->check(CLI::PositiveNumber);
  generate->add_option("--alpha", gp.alpha, "Probability a server starts loaded");
  generate->add_option("--beta", gp.beta, "Load target of the current allocation");
  generate->add_option("--gamma", gp.gamma, "Load target of the new demand");
  generate->add_option("--seed", gp.seed, "Generator seed");
  generate->add_option("-o,--output", output, "Instance file (stdout when omitted)");

  std::string algo = "ksfvg";
  std::string instance_path;
  std::string plan_path;
  std::string lp_dump;
  bench::AlgoOptions opts;
  auto add_algo_flags = [&](CLI::App* sub) {
    sub->add_option("--time-limit", opts.time_limit, "Seconds per algorithm run");
    sub->add_option("--nbar", opts.n_bar, "Buckets to analyze (all by default)");
    sub->add_option("--omega", opts.omega, "Kernel expansion factor");
    sub->add_option("--epsilon", opts.epsilon, "Reduced-cost fixing threshold");
  };
  auto* solve = app.add_subcommand("solve", "Solve one instance");
  solve->add_option("instance", instance_path, "Instance file")->required();
  solve->add_option("--algo", algo, "exact|ksf|ksfv|ksfvg")
      ->check(CLI::IsMember({"exact", "ksf", "ksfv", "ksfvg"}));
  add_algo_flags(solve);
  solve->add_option("--gap-tol", opts.gap_tol, "Relative gap for exact solves");
  solve->add_option("-o,--output", output, "Plan file (stdout when omitted)");
  solve->add_option("--dump-lp", lp_dump, "Write the LP relaxation as a text listing");

  auto* check = app.add_subcommand("check", "Validate a plan against an instance");
  check->add_option("instance", instance_path, "Instance file")->required();
  check->add_option("plan", plan_path, "Plan file")->required();

  bench::BenchConfig bc;
  bc.cells.clear();
  std::vector<std::string> cell_specs{"10:0.2", "10:0.4"};
  std::vector<std::string> algo_names{"exact", "ksfvg"};
  std::string csv_path;
  auto* bench_cmd = app.add_subcommand("bench", "Run a generated benchmark grid");
  bench_cmd->add_option("--cells", cell_specs, "SERVERS:BETA pairs");
  bench_cmd->add_option("--instances", bc.instances_per_cell, "Instances per cell");
  bench_cmd->add_option("--alpha", bc.alpha, "Probability a server starts loaded");
  bench_cmd->add_option("--gamma", bc.gamma, "Load target of the new demand");
  bench_cmd->add_option("--seed", bc.seed_base, "Seed base");
  bench_cmd->add_option("--algos", algo_names, "Algorithms to report");
  add_algo_flags(bench_cmd);
  bench_cmd->add_option("--exact-time-limit", bc.exact_time_limit, "Seconds for the reference solve");
  bench_cmd->add_option("--threads", bc.threads, "Worker threads (0: OpenMP default)");
  bench_cmd->add_option("--instance-dir", bc.instance_dir, "Also write each instance here");
  bench_cmd->add_option("--csv", csv_path, "Aggregate CSV (stdout when omitted)");
  bench_cmd->add_option("-o,--output", output, "JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*generate) {
      emit(bench::instance_to_json(gen::generate_instance(gp)), output);
      return kOk;
    }
    if (*solve) {
      const model::Instance inst = bench::instance_from_json(bench::read_json(instance_path));
      if (!lp_dump.empty()) {
        std::ofstream os(lp_dump);
        lp::write_listing(os, model::build_mip(inst).problem.relaxation());
      }
      const bench::AlgoOutcome r = bench::run_algorithm(inst, bench::parse_algorithm(algo), opts);
      if (!r.plan) {
        std::cerr << "no plan found (" << r.status << ")\n";
        return kSolverFailure;
      }
      bench::json j = bench::plan_to_json(*r.plan, r.objective);
      j["algo"] = algo;
      j["status"] = r.status;
      j["time"] = r.time;
      j["nodes"] = r.nodes;
      emit(j, output);
      std::cerr << algo << ": objective " << *r.objective << " status " << r.status << " in "
                << r.time << "s, " << r.nodes << " nodes\n";
      return kOk;
    }
    if (*check) {
      const model::Instance inst = bench::instance_from_json(bench::read_json(instance_path));
      const model::Plan plan = bench::plan_from_json(bench::read_json(plan_path));
      const auto violations = model::check_plan(inst, plan);
      for (const model::PlanViolation& v : violations) {
        std::cout << v.family << " i=" << v.i << " j=" << v.j << " r=" << v.r
                  << " slack=" << v.slack << '\n';
      }
      std::cout << violations.size() << " violations, cost " << model::plan_cost(inst, plan) << '\n';
      return violations.empty() ? kOk : kInvalid;
    }
    if (*bench_cmd) {
      bc.cells = parse_cells(cell_specs);
      bc.algorithms.clear();
      for (const std::string& a : algo_names) bc.algorithms.push_back(bench::parse_algorithm(a));
      bc.options = opts;
      const bench::BenchReport report = bench::run_bench(bc);
      if (csv_path.empty()) {
        bench::write_csv(std::cout, report);
      } else {
        std::ofstream os(csv_path);
        bench::write_csv(os, report);
      }
      if (!output.empty()) bench::write_json(output, bench::report_to_json(report));
      return kOk;
    }
  } catch (const InvalidModel& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const DimensionMismatch& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  } catch (const GenerationStalled& e) {
    std::cerr << "generation failed: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolverFailure;
  }
  return kOk;
}
