#include "vmc/model/vmcp.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <string>

#include "vmc/error.hpp"

namespace vmc::model {

int Instance::old_count(int i) const {
  int total = 0;
  for (int j = 0; j < num_servers(); ++j) total += n(i, j);
  return total;
}

void Instance::validate() const {
  const int types = num_types();
  const int srv = num_servers();
  const int res = num_resources();
  auto fail = [](const std::string& what) { throw InvalidModel("instance: " + what); };
  auto good = [](double v) { return std::isfinite(v) && v >= 0.0; };
  for (const VmSpec& vm : vm_types) {
    if (static_cast<int>(vm.demand.size()) != res) fail("VM demand length differs from |R|");
    for (double u : vm.demand) {
      if (!good(u)) fail("VM demand must be finite and non-negative");
    }
  }
  for (const ServerSpec& s : servers) {
    if (static_cast<int>(s.capacity.size()) != res) fail("server capacity length differs from |R|");
    for (double c : s.capacity) {
      if (!good(c)) fail("server capacity must be finite and non-negative");
    }
    if (!good(s.p_max)) fail("p_max must be finite and non-negative");
  }
  if (static_cast<int>(n.rows()) != types || static_cast<int>(n.cols()) != srv) fail("n has the wrong shape");
  for (int v : n.data()) {
    if (v < 0) fail("n has a negative entry");
  }
  if (static_cast<int>(d_new.size()) != types) fail("d_new has the wrong length");
  for (int v : d_new) {
    if (v < 0) fail("d_new has a negative entry");
  }
  if (static_cast<int>(costs.run.size()) != srv) fail("run costs have the wrong length");
  for (double c : costs.run) {
    if (!good(c)) fail("run cost must be finite and non-negative");
  }
  for (const Matrix<double>* m : {&costs.assign, &costs.mig, &costs.fresh}) {
    if (static_cast<int>(m->rows()) != types || static_cast<int>(m->cols()) != srv) {
      fail("cost matrix has the wrong shape");
    }
    for (double c : m->data()) {
      if (!good(c)) fail("cost must be finite and non-negative");
    }
  }
}

Plan empty_plan(const Instance& inst) {
  const auto types = static_cast<std::size_t>(inst.num_types());
  const auto srv = static_cast<std::size_t>(inst.num_servers());
  return Plan{Matrix<int>(types, srv), std::vector<int>(srv, 0), Matrix<int>(types, srv),
              Matrix<int>(types, srv)};
}

namespace {

// min_r floor(s_{j,r} / u_{i,r}), capped at `cap`.
int fit_count(const Instance& inst, int i, int j, int cap) {
  long best = cap;
  for (int r = 0; r < inst.num_resources(); ++r) {
    const double u = inst.demand(i, r);
    if (u <= 0.0) continue;
    const double ratio = std::floor(inst.capacity(j, r) / u);
    if (ratio < static_cast<double>(best)) best = static_cast<long>(ratio);
  }
  return static_cast<int>(std::max(0L, best));
}

}  // namespace

int upper_bound_v(const Instance& inst, int i, int j) {
  return fit_count(inst, i, j, inst.old_count(i));
}

VmcpModel build_mip(const Instance& inst, ObjectiveMode mode) {
  inst.validate();
  const int types = inst.num_types();
  const int srv = inst.num_servers();
  VmcpModel out;
  out.index = VmcpIndex{types, srv};
  const VmcpIndex& ix = out.index;

  lp::LinearProgram lp;
  lp.num_vars = ix.num_vars();
  lp.objective.assign(lp.num_vars, 0.0);
  lp.bounds.assign(lp.num_vars, lp::Bounds{0.0, 0.0});
  for (int i = 0; i < types; ++i) {
    const int d_new = inst.d_new[i];
    for (int j = 0; j < srv; ++j) {
      const double v = upper_bound_v(inst, i, j);
      if (mode == ObjectiveMode::Assignment) {
        lp.objective[ix.x(i, j)] = inst.costs.assign(i, j);
      } else {
        lp.objective_offset += inst.costs.assign(i, j) * inst.n(i, j);
      }
      lp.objective[ix.z(i, j)] = inst.costs.mig(i, j);
      lp.objective[ix.x_new(i, j)] = inst.costs.fresh(i, j);
      lp.bounds[ix.x(i, j)] = {0.0, v};
      // z never needs to exceed x, and x_new never exceeds its demand or what fits.
      lp.bounds[ix.z(i, j)] = {0.0, v};
      lp.bounds[ix.x_new(i, j)] = {0.0, static_cast<double>(fit_count(inst, i, j, d_new))};
    }
  }
  for (int j = 0; j < srv; ++j) {
    lp.objective[ix.y(j)] = inst.costs.run[j];
    lp.bounds[ix.y(j)] = {0.0, 1.0};
  }

  for (int r = 0; r < inst.num_resources(); ++r) {
    for (int j = 0; j < srv; ++j) {
      std::vector<lp::Term> row;
      for (int i = 0; i < types; ++i) {
        const double u = inst.demand(i, r);
        if (u == 0.0) continue;
        row.push_back({ix.x(i, j), u});
        row.push_back({ix.x_new(i, j), u});
      }
      row.push_back({ix.y(j), -inst.capacity(j, r)});
      lp.add_constraint(std::move(row), lp::Relation::LessEqual, 0.0);
    }
  }
  for (int i = 0; i < types; ++i) {
    for (int j = 0; j < srv; ++j) {
      lp.add_constraint({{ix.x(i, j), 1.0}, {ix.z(i, j), -1.0}}, lp::Relation::LessEqual,
                        inst.n(i, j));
    }
  }
  for (int i = 0; i < types; ++i) {
    std::vector<lp::Term> row;
    for (int j = 0; j < srv; ++j) row.push_back({ix.x(i, j), 1.0});
    lp.add_constraint(std::move(row), lp::Relation::Equal, inst.old_count(i));
  }
  for (int i = 0; i < types; ++i) {
    std::vector<lp::Term> row;
    for (int j = 0; j < srv; ++j) row.push_back({ix.x_new(i, j), 1.0});
    lp.add_constraint(std::move(row), lp::Relation::Equal, inst.d_new[i]);
  }

  out.problem = mip::make_problem(std::move(lp));
  std::fill(out.problem.kinds.begin(), out.problem.kinds.end(), mip::VarKind::Integer);
  for (int j = 0; j < srv; ++j) {
    out.problem.kinds[ix.y(j)] = mip::VarKind::Binary;
    out.binaries.push_back(ix.y(j));
  }
  return out;
}

Plan extract_plan(const VmcpIndex& index, std::span<const double> values) {
  if (static_cast<int>(values.size()) != index.num_vars()) {
    throw DimensionMismatch("solution vector does not match the model layout");
  }
  const auto types = static_cast<std::size_t>(index.types);
  const auto srv = static_cast<std::size_t>(index.servers);
  Plan p{Matrix<int>(types, srv), std::vector<int>(srv), Matrix<int>(types, srv),
         Matrix<int>(types, srv)};
  auto round = [](double v) { return static_cast<int>(std::lround(v)); };
  for (int i = 0; i < index.types; ++i) {
    for (int j = 0; j < index.servers; ++j) {
      p.x(i, j) = round(values[index.x(i, j)]);
      p.z(i, j) = round(values[index.z(i, j)]);
      p.x_new(i, j) = round(values[index.x_new(i, j)]);
    }
  }
  for (int j = 0; j < index.servers; ++j) p.y[j] = round(values[index.y(j)]);
  return p;
}

namespace {

void check_shape(const Instance& inst, const Plan& plan) {
  const auto types = static_cast<std::size_t>(inst.num_types());
  const auto srv = static_cast<std::size_t>(inst.num_servers());
  for (const Matrix<int>* m : {&plan.x, &plan.z, &plan.x_new}) {
    if (m->rows() != types || m->cols() != srv) {
      throw DimensionMismatch("plan matrix is not |I| x |J|");
    }
  }
  if (plan.y.size() != srv) throw DimensionMismatch("plan y is not |J| long");
}

}  // namespace

std::vector<PlanViolation> check_plan(const Instance& inst, const Plan& plan) {
  check_shape(inst, plan);
  const int types = inst.num_types();
  const int srv = inst.num_servers();
  std::vector<PlanViolation> out;

  for (int j = 0; j < srv; ++j) {
    if (plan.y[j] != 0 && plan.y[j] != 1) {
      out.push_back({"domain", -1, j, -1, plan.y[j] < 0 ? plan.y[j] : 1.0 - plan.y[j]});
    }
    for (int i = 0; i < types; ++i) {
      for (int v : {plan.x(i, j), plan.z(i, j), plan.x_new(i, j)}) {
        if (v < 0) out.push_back({"domain", i, j, -1, static_cast<double>(v)});
      }
    }
  }
  for (int r = 0; r < inst.num_resources(); ++r) {
    for (int j = 0; j < srv; ++j) {
      // Demands and capacities are integral in every shipped catalog, so these
      // sums are exact in double precision.
      double used = 0.0;
      for (int i = 0; i < types; ++i) {
        used += inst.demand(i, r) * (static_cast<double>(plan.x(i, j)) + plan.x_new(i, j));
      }
      const double slack = inst.capacity(j, r) * plan.y[j] - used;
      if (slack < 0.0) out.push_back({"capacity", -1, j, r, slack});
    }
  }
  for (int i = 0; i < types; ++i) {
    for (int j = 0; j < srv; ++j) {
      const int slack = inst.n(i, j) + plan.z(i, j) - plan.x(i, j);
      if (slack < 0) out.push_back({"migration", i, j, -1, static_cast<double>(slack)});
    }
  }
  for (int i = 0; i < types; ++i) {
    long old_total = 0;
    long new_total = 0;
    for (int j = 0; j < srv; ++j) {
      old_total += plan.x(i, j);
      new_total += plan.x_new(i, j);
    }
    if (old_total != inst.old_count(i)) {
      out.push_back({"demand_old", i, -1, -1, -std::abs(static_cast<double>(old_total - inst.old_count(i)))});
    }
    if (new_total != inst.d_new[i]) {
      out.push_back({"demand_new", i, -1, -1, -std::abs(static_cast<double>(new_total - inst.d_new[i]))});
    }
  }
  return out;
}

double plan_cost(const Instance& inst, const Plan& plan) {
  check_shape(inst, plan);
  double total = 0.0;
  for (int j = 0; j < inst.num_servers(); ++j) {
    total += inst.costs.run[j] * plan.y[j];
  }
  for (int i = 0; i < inst.num_types(); ++i) {
    for (int j = 0; j < inst.num_servers(); ++j) {
      total += inst.costs.assign(i, j) * plan.x(i, j) + inst.costs.mig(i, j) * plan.z(i, j) +
               inst.costs.fresh(i, j) * plan.x_new(i, j);
    }
  }
  return total;
}

}  // namespace vmc::model
