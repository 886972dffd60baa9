#include "mecsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "mecsim/instance.hpp"
#include "mecsim/pricing.hpp"
#include "mecsim/rng.hpp"

namespace mecsim {

std::uint64_t episode_seed(std::uint64_t master_seed, std::uint64_t counter) {
  return Rng::mix(master_seed, streams::kEpisodeBase + counter);
}

std::string to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::NMd: return "n_md";
    case SweepAxis::NEs: return "n_es";
    case SweepAxis::Alpha: return "alpha";
  }
  return "?";
}

SweepAxis axis_from_string(const std::string& name) {
  if (name == "n_md") return SweepAxis::NMd;
  if (name == "n_es") return SweepAxis::NEs;
  if (name == "alpha") return SweepAxis::Alpha;
  throw std::invalid_argument("unknown sweep axis: " + name +
                              " (expected n_md, n_es, or alpha)");
}

namespace {

int integral_axis_value(SweepAxis axis, double value) {
  if (!(value >= 1.0) || value != std::floor(value) || value > 1.0e9)
    throw std::invalid_argument("axis " + to_string(axis) +
                                " requires a positive integer, got " + format_double(value));
  return static_cast<int>(value);
}

std::vector<PolicyKind> resolve_policies(const std::vector<std::string>& names) {
  if (names.empty()) return all_policies();
  std::vector<PolicyKind> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    const auto k = policy_from_string(n);
    if (!k) throw std::invalid_argument("unknown policy: " + n);
    out.push_back(*k);
  }
  return out;
}

std::optional<double> mean_field(const std::vector<Metrics>& ms,
                                 std::optional<double> Metrics::*field) {
  if (ms.empty()) return std::nullopt;
  double sum = 0.0;
  for (const auto& m : ms) {
    if (!(m.*field)) return std::nullopt;
    sum += *(m.*field);
  }
  return sum / static_cast<double>(ms.size());
}

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : "nan"; }

CsvTable trace_to_table(const std::vector<DualTraceRow>& trace, int n_es) {
  CsvTable t;
  t.header.push_back("t");
  for (int j = 0; j < n_es; ++j) t.header.push_back("mu_" + std::to_string(j));
  for (int j = 0; j < n_es; ++j) t.header.push_back("nu_" + std::to_string(j));
  t.header.insert(t.header.end(), {"g", "primal", "gap"});
  for (const auto& row : trace) {
    std::vector<std::string> r;
    r.reserve(t.header.size());
    r.push_back(std::to_string(row.t));
    for (double m : row.mu) r.push_back(format_double(m));
    for (double n : row.nu) r.push_back(format_double(n));
    r.push_back(format_double(row.g));
    r.push_back(format_double(row.primal));
    r.push_back(format_double(row.gap));
    t.rows.push_back(std::move(r));
  }
  return t;
}

}  // namespace

Scenario apply_axis(const Scenario& base, SweepAxis axis, double value) {
  Scenario s = base;
  switch (axis) {
    case SweepAxis::NMd: s.n_md = integral_axis_value(axis, value); break;
    case SweepAxis::NEs: s.n_es = integral_axis_value(axis, value); break;
    case SweepAxis::Alpha:
      if (!(value >= 0.0))
        throw std::invalid_argument("axis alpha requires a non-negative value, got " +
                                    format_double(value));
      s.alpha = value;
      break;
  }
  validate(s);
  return s;
}

CsvTable sweep_table(const Scenario& base, const Catalog& catalog, SweepAxis axis,
                     const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("sweep values list is empty");
  const std::vector<PolicyKind> pols = resolve_policies(base.policies);
  const int n_seeds = std::max(1, base.n_seeds);
  const std::size_t n_vals = values.size();

  // Scenario of each (axis value, seed) cell; every policy at a cell runs on
  // the identical generated network.  An alpha sweep leaves the generated
  // world untouched, so its cells reuse the same seeds across values and the
  // study isolates the effect of the weight alone.
  const bool axis_changes_world = axis != SweepAxis::Alpha;
  std::vector<Scenario> cell_cfg;
  cell_cfg.reserve(n_vals * static_cast<std::size_t>(n_seeds));
  for (std::size_t v = 0; v < n_vals; ++v) {
    Scenario sc = apply_axis(base, axis, values[v]);
    for (int s = 0; s < n_seeds; ++s) {
      const std::uint64_t counter =
          (axis_changes_world ? v * static_cast<std::uint64_t>(n_seeds) : 0) + s;
      sc.seed = episode_seed(base.seed, counter);
      cell_cfg.push_back(sc);
    }
  }

  struct Job {
    std::size_t v, p;
    int s;
  };
  std::vector<Job> jobs;
  jobs.reserve(n_vals * pols.size() * static_cast<std::size_t>(n_seeds));
  for (std::size_t v = 0; v < n_vals; ++v)
    for (std::size_t p = 0; p < pols.size(); ++p)
      for (int s = 0; s < n_seeds; ++s) jobs.push_back({v, p, s});

  std::vector<Metrics> results(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(jobs.size()); ++k) {
    const Job& jb = jobs[static_cast<std::size_t>(k)];
    const Scenario& sc = cell_cfg[jb.v * static_cast<std::size_t>(n_seeds) + jb.s];
    const Network net = generate_scenario(sc, catalog);
    results[static_cast<std::size_t>(k)] = run_episode(net, catalog, pols[jb.p]);
  }

  CsvTable t;
  t.header = {"axis",
              "policy",
              "mean_latency",
              "comm_latency",
              "comp_latency",
              "local_energy_per_task",
              "edge_energy_per_task",
              "offload_ratio",
              "gap"};
  std::size_t k = 0;
  for (std::size_t v = 0; v < n_vals; ++v) {
    for (std::size_t p = 0; p < pols.size(); ++p) {
      std::vector<Metrics> ms;
      ms.reserve(static_cast<std::size_t>(n_seeds));
      for (int s = 0; s < n_seeds; ++s) ms.push_back(results[k++]);
      t.rows.push_back({format_double(values[v]), to_string(pols[p]),
                        cell(mean_field(ms, &Metrics::mean_latency)),
                        cell(mean_field(ms, &Metrics::comm_latency)),
                        cell(mean_field(ms, &Metrics::comp_latency)),
                        cell(mean_field(ms, &Metrics::local_energy_per_task)),
                        cell(mean_field(ms, &Metrics::edge_energy_per_task)),
                        cell(mean_field(ms, &Metrics::offload_ratio)),
                        cell(mean_field(ms, &Metrics::final_gap))});
    }
  }
  return t;
}

CsvTable pareto_table(const Scenario& base, const Catalog& catalog,
                      const std::vector<double>& eps_grid,
                      const std::vector<double>& alpha_grid) {
  if (eps_grid.empty()) throw std::invalid_argument("pareto eps grid is empty");
  if (alpha_grid.empty()) throw std::invalid_argument("pareto alpha grid is empty");
  for (double e : eps_grid)
    if (!(e >= 0.0 && e <= 1.0))
      throw std::invalid_argument("eps grid value out of [0,1]: " + format_double(e));
  for (double a : alpha_grid)
    if (!(a >= 0.0))
      throw std::invalid_argument("alpha grid value must be non-negative: " + format_double(a));

  struct Point {
    PolicyKind policy;
    double grid;
  };
  std::vector<Point> points;
  for (PolicyKind p : all_policies()) {
    if (p == PolicyKind::Pricing) continue;
    for (double e : eps_grid) points.push_back({p, e});
  }
  for (double a : alpha_grid) points.push_back({PolicyKind::Pricing, a});

  const int n_seeds = std::max(1, base.n_seeds);
  // The placement/channel/task draws ignore eps and alpha, so every grid
  // point at seed index s runs on the same network.
  std::vector<std::uint64_t> seeds;
  seeds.reserve(static_cast<std::size_t>(n_seeds));
  for (int s = 0; s < n_seeds; ++s) seeds.push_back(episode_seed(base.seed, s));

  const std::size_t n_jobs = points.size() * static_cast<std::size_t>(n_seeds);
  std::vector<Metrics> results(n_jobs);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(n_jobs); ++k) {
    const std::size_t pi = static_cast<std::size_t>(k) / static_cast<std::size_t>(n_seeds);
    const int s = static_cast<int>(static_cast<std::size_t>(k) % static_cast<std::size_t>(n_seeds));
    Scenario sc = base;
    sc.seed = seeds[static_cast<std::size_t>(s)];
    if (points[pi].policy == PolicyKind::Pricing)
      sc.alpha = points[pi].grid;
    else
      sc.epsilon_local = points[pi].grid;
    const Network net = generate_scenario(sc, catalog);
    results[static_cast<std::size_t>(k)] = run_episode(net, catalog, points[pi].policy);
  }

  struct Agg {
    std::optional<double> lat, energy;
  };
  std::vector<Agg> agg(points.size());
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    std::vector<Metrics> ms;
    for (int s = 0; s < n_seeds; ++s)
      ms.push_back(results[pi * static_cast<std::size_t>(n_seeds) + s]);
    agg[pi].lat = mean_field(ms, &Metrics::mean_latency);
    agg[pi].energy = mean_field(ms, &Metrics::local_energy_per_task);
  }

  // Dominance on the (latency, device-side energy) minimization plane:
  // a point loses its flag when some other point is at least as good on both
  // axes and strictly better on one.
  auto dominated = [&](std::size_t pi) {
    if (!agg[pi].lat || !agg[pi].energy) return false;
    for (std::size_t q = 0; q < points.size(); ++q) {
      if (q == pi || !agg[q].lat || !agg[q].energy) continue;
      const bool no_worse = *agg[q].lat <= *agg[pi].lat && *agg[q].energy <= *agg[pi].energy;
      const bool strictly =
          *agg[q].lat < *agg[pi].lat || *agg[q].energy < *agg[pi].energy;
      if (no_worse && strictly) return true;
    }
    return false;
  };

  const double reg = base.reg_epsilon;
  CsvTable t;
  t.header = {"policy",      "grid",        "mean_latency", "local_energy_per_task",
              "inv_latency", "inv_local_energy", "dominant"};
  for (std::size_t pi = 0; pi < points.size(); ++pi) {
    const Agg& a = agg[pi];
    std::string inv_lat = "nan", inv_en = "nan", flag = "0";
    if (a.lat && a.energy) {
      inv_lat = format_double(1.0 / std::max(*a.lat, reg));
      inv_en = format_double(1.0 / std::max(*a.energy, reg));
      flag = dominated(pi) ? "0" : "1";
    }
    t.rows.push_back({to_string(points[pi].policy), format_double(points[pi].grid),
                      cell(a.lat), cell(a.energy), inv_lat, inv_en, flag});
  }
  return t;
}

CsvTable convergence_table(const Scenario& base, const Catalog& catalog, double eta) {
  const Network net = generate_scenario(base, catalog);
  const OffloadInstance inst = OffloadInstance::from_network(net);
  PriceState prices = PriceState::init_random(base.n_es, base.seed, eta, eta);
  std::vector<DualTraceRow> trace;
  run_dual(inst, std::move(prices), base.steps, 0.0, &trace, /*trace_primal=*/true);
  return trace_to_table(trace, base.n_es);
}

nlohmann::json oracle_compare_json(const Scenario& base, const Catalog& catalog) {
  if (!oracle_search_space(base.n_md, base.n_es))
    throw std::runtime_error(
        "association search space exceeds the enumeration guard (" +
        std::to_string(kOracleGuard) + "); reduce n_md or n_es");
  const Network net = generate_scenario(base, catalog);
  const OffloadInstance inst = OffloadInstance::from_network(net);
  PriceState prices = PriceState::init_random(base.n_es, base.seed, base.eta1, base.eta2);
  const DualRunResult run =
      run_dual(inst, std::move(prices), base.steps, 0.0, nullptr, /*trace_primal=*/false);
  const OracleResult oracle = exhaustive_oracle(inst);
  const ScoreTerms terms = score_terms(inst);
  const DualReport report = duality_report(terms, run.prices, run.assignment, inst);

  const double gap = run.primal_final - oracle.objective;
  nlohmann::json out;
  out["oracle_obj"] = oracle.objective;
  out["pricing_obj"] = run.primal_final;
  out["gap"] = gap;
  out["bound"] = report.bound;
  out["within_bound"] = gap <= report.bound + 1e-6;
  out["associations_evaluated"] = oracle.evaluated;
  out["steps"] = run.steps_run;
  return out;
}

SimulateResult simulate(const Scenario& config, const Catalog& catalog) {
  const std::vector<PolicyKind> pols = resolve_policies(config.policies);
  const Network net = generate_scenario(config, catalog);

  std::int64_t trace_idx = -1;
  if (config.trace) {
    for (std::size_t k = 0; k < pols.size(); ++k) {
      if (pols[k] == PolicyKind::Pricing) {
        trace_idx = static_cast<std::int64_t>(k);
        break;
      }
    }
  }

  std::vector<Metrics> results(pols.size());
  std::vector<DualTraceRow> trace;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(pols.size()); ++k) {
    results[static_cast<std::size_t>(k)] =
        run_episode(net, catalog, pols[static_cast<std::size_t>(k)],
                    k == trace_idx ? &trace : nullptr);
  }

  SimulateResult r;
  r.metrics = nlohmann::json::array();
  for (const Metrics& m : results) r.metrics.push_back(m.to_json());
  if (trace_idx >= 0) r.trace = trace_to_table(trace, config.n_es);
  return r;
}

}  // namespace mecsim
