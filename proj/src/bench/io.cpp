#include "vmc/bench/io.hpp"

#include <fstream>

#include "vmc/error.hpp"

namespace vmc::bench {

namespace {

template <typename T>
json matrix_to_json(const Matrix<T>& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

template <typename T>
Matrix<T> matrix_from_json(const json& j, std::size_t rows, std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows) {
    throw InvalidModel(std::string(name) + " must have " + std::to_string(rows) + " rows");
  }
  Matrix<T> m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw InvalidModel(std::string(name) + " row " + std::to_string(r) + " must have " +
                         std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = j[r][c].get<T>();
  }
  return m;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidModel(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

json instance_to_json(const model::Instance& inst) {
  json j;
  if (inst.generator) {
    const model::GeneratorHeader& g = *inst.generator;
    j["generator"] = {
        {"spec_version", g.spec_version},
        {"rng", g.rng},
        {"seed", g.seed},
        {"attempt", g.attempt},
        {"params",
         {{"num_servers", g.num_servers}, {"alpha", g.alpha}, {"beta", g.beta}, {"gamma", g.gamma}}},
    };
  }
  j["resources"] = inst.resources;
  json vms = json::array();
  for (const model::VmSpec& vm : inst.vm_types) vms.push_back({{"demand", vm.demand}});
  j["vm_types"] = std::move(vms);
  json servers = json::array();
  for (const model::ServerSpec& s : inst.servers) {
    servers.push_back({{"type", s.type}, {"capacity", s.capacity}, {"p_max", s.p_max}});
  }
  j["servers"] = std::move(servers);
  j["n"] = matrix_to_json(inst.n);
  j["d_new"] = inst.d_new;
  j["costs"] = {
      {"run", inst.costs.run},
      {"assign", matrix_to_json(inst.costs.assign)},
      {"mig", matrix_to_json(inst.costs.mig)},
      {"new", matrix_to_json(inst.costs.fresh)},
  };
  return j;
}

model::Instance instance_from_json(const json& j) {
  try {
    model::Instance inst;
    if (j.contains("generator")) {
      const json& g = j.at("generator");
      const json& p = field(g, "params");
      inst.generator = model::GeneratorHeader{
          field(g, "spec_version").get<std::string>(), field(g, "rng").get<std::string>(),
          field(g, "seed").get<std::uint64_t>(),       g.value("attempt", 0),
          field(p, "num_servers").get<int>(),          field(p, "alpha").get<double>(),
          field(p, "beta").get<double>(),              field(p, "gamma").get<double>()};
    }
    inst.resources = field(j, "resources").get<std::vector<std::string>>();
    for (const json& vm : field(j, "vm_types")) {
      inst.vm_types.push_back({field(vm, "demand").get<std::vector<double>>()});
    }
    for (const json& s : field(j, "servers")) {
      inst.servers.push_back({s.value("type", 0), field(s, "capacity").get<std::vector<double>>(),
                              field(s, "p_max").get<double>()});
    }
    const std::size_t types = inst.vm_types.size();
    const std::size_t srv = inst.servers.size();
    inst.n = matrix_from_json<int>(field(j, "n"), types, srv, "n");
    inst.d_new = field(j, "d_new").get<std::vector<int>>();
    const json& c = field(j, "costs");
    inst.costs.run = field(c, "run").get<std::vector<double>>();
    inst.costs.assign = matrix_from_json<double>(field(c, "assign"), types, srv, "costs.assign");
    inst.costs.mig = matrix_from_json<double>(field(c, "mig"), types, srv, "costs.mig");
    inst.costs.fresh = matrix_from_json<double>(field(c, "new"), types, srv, "costs.new");
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw InvalidModel(std::string("instance JSON: ") + e.what());
  }
}

json plan_to_json(const model::Plan& plan, std::optional<double> objective) {
  json j;
  j["x"] = matrix_to_json(plan.x);
  j["y"] = plan.y;
  j["z"] = matrix_to_json(plan.z);
  j["x_new"] = matrix_to_json(plan.x_new);
  if (objective) j["objective"] = *objective;
  return j;
}

model::Plan plan_from_json(const json& j) {
  try {
    model::Plan p;
    p.y = field(j, "y").get<std::vector<int>>();
    const json& x = field(j, "x");
    const std::size_t rows = x.size();
    const std::size_t cols = p.y.size();
    p.x = matrix_from_json<int>(x, rows, cols, "x");
    p.z = matrix_from_json<int>(field(j, "z"), rows, cols, "z");
    p.x_new = matrix_from_json<int>(field(j, "x_new"), rows, cols, "x_new");
    return p;
  } catch (const json::exception& e) {
    throw InvalidModel(std::string("plan JSON: ") + e.what());
  }
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidModel("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidModel(path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace vmc::bench
