#include "mecsim/config_io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mecsim {

using nlohmann::json;

namespace {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

double battery_field(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "unlimited" || s == "UNLIMITED") return kUnlimitedBattery;
    throw std::runtime_error("battery_capacity string must be \"unlimited\"");
  }
  return j.get<double>();
}

}  // namespace

Catalog catalog_from_json(const json& j) {
  Catalog cat;
  for (const auto& c : j.at("classes")) {
    DeviceClass dc;
    dc.name = c.at("name").get<std::string>();
    dc.cores = c.at("cores").get<int>();
    dc.flops_per_core = c.at("flops_per_core").get<double>();
    dc.compute_energy_coeff = c.value("compute_energy_coeff", 0.0);
    dc.tx_power = c.value("tx_power", 0.0);
    dc.comm_energy_coeff = c.value("comm_energy_coeff", 0.0);
    dc.base_power = c.value("base_power", 0.0);
    dc.battery_capacity =
        c.contains("battery_capacity") ? battery_field(c["battery_capacity"]) : kUnlimitedBattery;
    dc.reserved_memory_fraction = c.value("reserved_memory_fraction", 0.0);
    if (dc.cores < 1) throw std::runtime_error("class " + dc.name + ": cores must be >= 1");
    if (!(dc.flops_per_core > 0.0))
      throw std::runtime_error("class " + dc.name + ": flops_per_core must be > 0");
    if (dc.compute_energy_coeff < 0.0 || dc.tx_power < 0.0 || dc.comm_energy_coeff < 0.0 ||
        dc.base_power < 0.0)
      throw std::runtime_error("class " + dc.name + ": coefficients must be >= 0");
    if (dc.reserved_memory_fraction < 0.0 || dc.reserved_memory_fraction > 1.0)
      throw std::runtime_error("class " + dc.name + ": reserved_memory_fraction must be in [0,1]");
    cat.classes.push_back(std::move(dc));
  }
  for (const auto& t : j.at("tasks")) {
    TaskSpec task;
    task.name = t.at("name").get<std::string>();
    task.bits = t.at("bits").get<double>();
    task.flops = t.at("flops").get<double>();
    task.parallel_fraction = t.value("parallel_fraction", 0.95);
    task.memory_fraction = t.value("memory_fraction", 0.0);
    task.kind = t.value("kind", "vision");
    if (task.bits < 0.0) throw std::runtime_error("task " + task.name + ": bits must be >= 0");
    if (!(task.flops > 0.0)) throw std::runtime_error("task " + task.name + ": flops must be > 0");
    if (task.parallel_fraction < 0.0 || task.parallel_fraction > 1.0)
      throw std::runtime_error("task " + task.name + ": parallel_fraction must be in [0,1]");
    if (task.memory_fraction < 0.0 || task.memory_fraction > 1.0)
      throw std::runtime_error("task " + task.name + ": memory_fraction must be in [0,1]");
    cat.tasks.push_back(std::move(task));
  }
  if (cat.tasks.empty()) throw std::runtime_error("catalog has no tasks");
  return cat;
}

Catalog load_catalog(const std::string& path) {
  return catalog_from_json(read_json_file(path));
}

Scenario scenario_from_json(const json& j) {
  static const std::set<std::string> known = {
      "n_md", "n_es", "area_side", "cluster_spec", "task_mix", "alpha",
      "epsilon_local", "total_bandwidth", "noise_psd", "reg_epsilon", "seed",
      "steps", "step_sizes", "dt", "catalog", "md_class", "es_class",
      "es_positions", "policies", "warmup_fraction", "price_warmup_iters",
      "trace", "memory_strict", "shadowing_sigma_db", "n_seeds"};
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) {
      std::ostringstream msg;
      msg << "unknown config key '" << key << "'; known keys:";
      for (const auto& k : known) msg << ' ' << k;
      throw std::runtime_error(msg.str());
    }
  }

  Scenario s;
  s.n_md = j.at("n_md").get<int>();
  s.n_es = j.at("n_es").get<int>();
  s.area_side = j.value("area_side", s.area_side);
  if (j.contains("cluster_spec")) {
    const auto& c = j["cluster_spec"];
    s.cluster_spec.count = c.value("count", 0);
    s.cluster_spec.radius = c.value("radius", 0.0);
    s.cluster_spec.member_fraction = c.value("member_fraction", 0.0);
  }
  if (j.contains("task_mix")) {
    for (const auto& [name, w] : j["task_mix"].items())
      s.task_mix.emplace_back(name, w.get<double>());
  }
  s.alpha = j.value("alpha", s.alpha);
  s.epsilon_local = j.value("epsilon_local", s.epsilon_local);
  s.total_bandwidth = j.value("total_bandwidth", s.total_bandwidth);
  s.noise_psd = j.value("noise_psd", s.noise_psd);
  s.reg_epsilon = j.value("reg_epsilon", s.reg_epsilon);
  s.seed = j.value("seed", s.seed);
  s.steps = j.value("steps", s.steps);
  if (j.contains("step_sizes")) {
    const auto& e = j["step_sizes"];
    if (!e.is_array() || e.size() != 2)
      throw std::runtime_error("step_sizes must be an array [eta1, eta2]");
    s.eta1 = e[0].get<double>();
    s.eta2 = e[1].get<double>();
  }
  s.dt = j.value("dt", s.dt);
  s.catalog_path = j.value("catalog", s.catalog_path);
  s.md_class = j.value("md_class", s.md_class);
  s.es_class = j.value("es_class", s.es_class);
  if (j.contains("es_positions")) {
    for (const auto& p : j["es_positions"]) {
      if (!p.is_array() || p.size() != 2)
        throw std::runtime_error("es_positions entries must be [x, y]");
      s.es_positions.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
  }
  if (j.contains("policies")) {
    for (const auto& p : j["policies"]) s.policies.push_back(p.get<std::string>());
  }
  s.warmup_fraction = j.value("warmup_fraction", s.warmup_fraction);
  s.price_warmup_iters = j.value("price_warmup_iters", s.price_warmup_iters);
  s.trace = j.value("trace", s.trace);
  s.memory_strict = j.value("memory_strict", s.memory_strict);
  s.shadowing_sigma_db = j.value("shadowing_sigma_db", s.shadowing_sigma_db);
  s.n_seeds = j.value("n_seeds", s.n_seeds);
  validate(s);
  return s;
}

json scenario_to_json(const Scenario& s) {
  json j;
  j["n_md"] = s.n_md;
  j["n_es"] = s.n_es;
  j["area_side"] = s.area_side;
  j["cluster_spec"] = {{"count", s.cluster_spec.count},
                       {"radius", s.cluster_spec.radius},
                       {"member_fraction", s.cluster_spec.member_fraction}};
  json mix = json::object();
  for (const auto& [name, w] : s.task_mix) mix[name] = w;
  j["task_mix"] = mix;
  j["alpha"] = s.alpha;
  j["epsilon_local"] = s.epsilon_local;
  j["total_bandwidth"] = s.total_bandwidth;
  j["noise_psd"] = s.noise_psd;
  j["reg_epsilon"] = s.reg_epsilon;
  j["seed"] = s.seed;
  j["steps"] = s.steps;
  j["step_sizes"] = {s.eta1, s.eta2};
  j["dt"] = s.dt;
  j["catalog"] = s.catalog_path;
  j["md_class"] = s.md_class;
  j["es_class"] = s.es_class;
  if (!s.es_positions.empty()) {
    json pos = json::array();
    for (const auto& [x, y] : s.es_positions) pos.push_back({x, y});
    j["es_positions"] = pos;
  }
  json pol = json::array();
  for (const auto& p : s.policies) pol.push_back(p);
  j["policies"] = pol;
  j["warmup_fraction"] = s.warmup_fraction;
  j["price_warmup_iters"] = s.price_warmup_iters;
  j["trace"] = s.trace;
  j["memory_strict"] = s.memory_strict;
  j["shadowing_sigma_db"] = s.shadowing_sigma_db;
  j["n_seeds"] = s.n_seeds;
  return j;
}

void apply_override(json& config, const std::string& keyval) {
  const auto eq = keyval.find('=');
  if (eq == std::string::npos)
    throw std::runtime_error("override must look like key=value: " + keyval);
  const std::string key = keyval.substr(0, eq);
  const std::string val = keyval.substr(eq + 1);

  // Descend dotted path; every intermediate must already exist.
  json* node = &config;
  std::size_t start = 0;
  std::string leaf;
  while (true) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
    if (dot == std::string::npos) {
      leaf = part;
      break;
    }
    if (!node->contains(part))
      throw std::runtime_error("override references unknown key: " + key);
    node = &(*node)[part];
    start = dot + 1;
  }
  if (!node->is_object() || !node->contains(leaf))
    throw std::runtime_error("override references unknown key: " + key);

  json parsed = json::parse(val, nullptr, false);
  (*node)[leaf] = parsed.is_discarded() ? json(val) : parsed;
}

LoadedConfig load_config(const std::string& path, const std::vector<std::string>& overrides) {
  LoadedConfig out;
  out.raw = read_json_file(path);
  for (const auto& kv : overrides) apply_override(out.raw, kv);
  out.scenario = scenario_from_json(out.raw);

  std::filesystem::path cat(out.scenario.catalog_path);
  if (cat.is_relative()) cat = std::filesystem::path(path).parent_path() / cat;
  out.catalog = load_catalog(cat.string());
  return out;
}

}  // namespace mecsim
