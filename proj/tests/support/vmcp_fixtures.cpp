#include "vmcp_fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "vmc/gen/generator.hpp"

namespace vmc::testing {

model::Instance catalog_instance(const std::vector<int>& server_types,
                                 const std::vector<int>& vm_types,
                                 const std::vector<std::vector<int>>& n,
                                 const std::vector<int>& d_new) {
  const gen::Catalog& cat = gen::catalog();
  model::Instance inst;
  inst.resources = cat.resources;
  for (int t : vm_types) inst.vm_types.push_back(cat.vm_types[t - 1]);
  for (int t : server_types) inst.servers.push_back(cat.server_types[t - 1]);
  inst.n = Matrix<int>(vm_types.size(), server_types.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    for (std::size_t j = 0; j < n[i].size(); ++j) inst.n(i, j) = n[i][j];
  }
  inst.d_new = d_new;
  inst.costs = gen::derive_costs(inst.vm_types, inst.servers);
  return inst;
}

model::Instance random_tiny_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> srv_count(2, 3), type_count(1, 2);
  std::uniform_int_distribution<int> srv_type(1, 10), vm_type(1, 3), count(0, 2);
  const int srv = srv_count(rng);
  const int types = type_count(rng);
  std::vector<int> st, vt;
  for (int j = 0; j < srv; ++j) st.push_back(srv_type(rng));
  for (int i = 0; i < types; ++i) vt.push_back(vm_type(rng));
  std::vector<std::vector<int>> n(types, std::vector<int>(srv, 0));
  std::vector<int> d_new(types);
  for (int i = 0; i < types; ++i) {
    n[i][static_cast<std::size_t>(count(rng)) % srv] = count(rng);
    d_new[i] = count(rng) / 2 + (i == 0 ? 1 : 0);
  }
  return catalog_instance(st, vt, n, d_new);
}

namespace {

int fits(const model::Instance& inst, int i, int j) {
  int best = 1 << 20;
  for (int r = 0; r < inst.num_resources(); ++r) {
    const double u = inst.vm_types[i].demand[r];
    if (u > 0) best = std::min(best, static_cast<int>(std::floor(inst.servers[j].capacity[r] / u)));
  }
  return best;
}

struct Search {
  const model::Instance& inst;
  int types, srv;
  std::vector<int> y, x, xn, z, hi_x, hi_n;
  double best = INFINITY;

  bool feasible() const {
    for (int i = 0; i < types; ++i) {
      int old = 0, fresh = 0, want = 0;
      for (int j = 0; j < srv; ++j) {
        old += x[i * srv + j];
        fresh += xn[i * srv + j];
        want += inst.n(i, j);
      }
      if (old != want || fresh != inst.d_new[i]) return false;
    }
    for (int j = 0; j < srv; ++j) {
      for (int r = 0; r < inst.num_resources(); ++r) {
        double used = 0;
        for (int i = 0; i < types; ++i) {
          used += inst.vm_types[i].demand[r] * (x[i * srv + j] + xn[i * srv + j]);
        }
        if (used > inst.servers[j].capacity[r] * y[j] + 1e-9) return false;
      }
    }
    return true;
  }

  double cost() const {
    double c = 0;
    for (int j = 0; j < srv; ++j) c += inst.costs.run[j] * y[j];
    for (int i = 0; i < types; ++i) {
      for (int j = 0; j < srv; ++j) {
        const int k = i * srv + j;
        c += inst.costs.assign(i, j) * x[k] + inst.costs.mig(i, j) * z[k] +
             inst.costs.fresh(i, j) * xn[k];
      }
    }
    return c;
  }

  // Enumerate z last; each z must satisfy x - z <= n.
  void over_z(int k) {
    if (k == types * srv) {
      best = std::min(best, cost());
      return;
    }
    const int i = k / srv, j = k % srv;
    for (int v = 0; v <= hi_x[k]; ++v) {
      z[k] = v;
      if (x[k] - v <= inst.n(i, j)) over_z(k + 1);
    }
  }
  void over_xn(int k) {
    if (k == types * srv) {
      if (feasible()) over_z(0);
      return;
    }
    for (int v = 0; v <= hi_n[k]; ++v) {
      xn[k] = v;
      over_xn(k + 1);
    }
  }
  void over_x(int k) {
    if (k == types * srv) {
      over_xn(0);
      return;
    }
    for (int v = 0; v <= hi_x[k]; ++v) {
      x[k] = v;
      over_x(k + 1);
    }
  }
  void over_y(int j) {
    if (j == srv) {
      over_x(0);
      return;
    }
    for (int v = 0; v <= 1; ++v) {
      y[j] = v;
      over_y(j + 1);
    }
  }
};

}  // namespace

std::optional<double> brute_force_vmcp(const model::Instance& inst) {
  Search s{inst, inst.num_types(), inst.num_servers()};
  const int cells = s.types * s.srv;
  s.y.assign(s.srv, 0);
  s.x.assign(cells, 0);
  s.xn.assign(cells, 0);
  s.z.assign(cells, 0);
  s.hi_x.assign(cells, 0);
  s.hi_n.assign(cells, 0);
  for (int i = 0; i < s.types; ++i) {
    int d = 0;
    for (int j = 0; j < s.srv; ++j) d += inst.n(i, j);
    for (int j = 0; j < s.srv; ++j) {
      s.hi_x[i * s.srv + j] = std::min(d, fits(inst, i, j));
      s.hi_n[i * s.srv + j] = std::min(inst.d_new[i], fits(inst, i, j));
    }
  }
  s.over_y(0);
  if (!std::isfinite(s.best)) return std::nullopt;
  return s.best;
}

}  // namespace vmc::testing
