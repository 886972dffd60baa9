#ifndef MECSIM_ENGINE_HPP
#define MECSIM_ENGINE_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mecsim/baselines.hpp"
#include "mecsim/instance.hpp"
#include "mecsim/pricing.hpp"

namespace mecsim {

// Time-stepped episode: per step the servers expose prices, devices whose
// previous task finished draw a new one and pick where it runs, each server
// re-splits its bandwidth/cores over its current load, work advances (with
// carry-over inside the step as a task crosses transfer -> serial ->
// parallel phases), batteries drain, and the pricing policy performs one
// subgradient step.  Everything is deterministic given the scenario seed.

struct ActiveTask {
  TaskSpec spec;
  int es = kLocal;  // serving server, or local execution
  double bits_remaining = 0.0;
  double serial_remaining = 0.0;    // flops
  double parallel_remaining = 0.0;  // flops
  int created_step = 0;
  double comm_time = 0.0;     // s spent transferring
  double compute_time = 0.0;  // s spent computing (either side)
  double md_energy = 0.0;     // J on the device (radio + local compute, no base)
  double es_energy = 0.0;     // J on the serving server
};

struct TaskRecord {
  int md = 0;
  int es = kLocal;
  int created_step = 0, completed_step = 0;
  double latency = 0.0;  // (completed - created + 1) * dt, step granularity
  double comm_time = 0.0, compute_time = 0.0;
  double md_energy = 0.0, es_energy = 0.0;
  bool offloaded = false;
};

struct EpisodeState {
  double time = 0.0;  // s
  int step = 0;
  std::vector<std::optional<ActiveTask>> tasks;  // per MD
  std::vector<double> y, z;  // fractions granted this step, per MD
  std::vector<double> batteries;
  PriceState prices;  // pricing policy only
  std::vector<TaskRecord> completed;
  int memory_violation_steps = 0;
  int idle_md_steps = 0;  // device-steps spent dead
  int warmup_steps = 0;
  double dt = 0.01;
  // Dual summary (pricing policy).
  double g_max = 0.0;
  double final_gap = 0.0;
  bool has_dual = false;
};

struct Metrics {
  std::string policy;
  std::uint64_t seed = 0;
  int tasks_completed = 0;  // completed after warm-up
  std::optional<double> mean_latency;  // s; absent when nothing completed
  std::optional<double> comm_latency;
  std::optional<double> comp_latency;
  std::optional<double> local_energy_per_task;  // J, averaged over all completed
  std::optional<double> edge_energy_per_task;   // J, averaged over all completed
  std::optional<double> offload_ratio;
  int memory_violation_steps = 0;
  int idle_steps = 0;
  std::optional<double> final_gap;  // pricing only
  std::optional<double> g_max;      // pricing only

  nlohmann::json to_json() const;
};

// Battery bookkeeping: unlimited supplies never change; limited ones clamp
// at zero.
double battery_update(double battery, double power_w, double dt);

// Aggregates the per-task records of a finished episode; tasks completing
// inside the warm-up window are excluded from every average.
Metrics collect_metrics(const EpisodeState& state);

// Runs one episode of `net.config.steps` steps under the given policy.
// `trace`, if non-null and the policy is pricing, receives one row per step
// with the prices, dual value, primal objective, and gap.
Metrics run_episode(const Network& net, const Catalog& catalog, PolicyKind policy,
                    std::vector<DualTraceRow>* trace = nullptr);

}  // namespace mecsim

#endif  // MECSIM_ENGINE_HPP
