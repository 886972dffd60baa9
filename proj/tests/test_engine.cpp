#include <doctest.h>

#include <vector>

#include "mecsim/engine.hpp"
#include "mecsim/model.hpp"

using namespace mecsim;

namespace {

// One device, one server, round-number hardware: a 2e4-bit payload crosses a
// 1e6 bit/s link in exactly 2 steps of dt = 0.01, and 3e7 serial flops take
// exactly 3 steps at 1e9 flops/s on either side.
struct World {
  Catalog cat;
  Network net;
};

World five_step_world(int steps, double eps_local) {
  DeviceClass md;
  md.name = "m";
  md.cores = 1;
  md.flops_per_core = 1.0e9;
  md.compute_energy_coeff = 2.0e-9;
  md.tx_power = 0.5;
  md.comm_energy_coeff = 2.0e-8;
  md.base_power = 0.05;
  DeviceClass es;
  es.name = "e";
  es.cores = 4;
  es.flops_per_core = 1.0e9;
  es.compute_energy_coeff = 1.0e-11;
  TaskSpec t;
  t.name = "t";
  t.bits = 2.0e4;
  t.flops = 3.0e7;
  t.parallel_fraction = 0.0;
  t.kind = "vision";

  World w;
  w.cat.classes = {md, es};
  w.cat.tasks = {t};

  Scenario cfg;
  cfg.n_md = 1;
  cfg.n_es = 1;
  cfg.task_mix = {{"t", 1.0}};
  cfg.epsilon_local = eps_local;
  cfg.seed = 5;
  cfg.steps = steps;
  cfg.dt = 0.01;
  cfg.warmup_fraction = 0.0;
  cfg.price_warmup_iters = 0;

  w.net.config = cfg;
  w.net.mds = {MobileDevice{0, 0.0, 0.0, md, kUnlimitedBattery}};
  w.net.ess = {EdgeServer{0, 10.0, 0.0, es, 1.0e7}};
  w.net.initial_tasks = {t};
  w.net.rate = {1.0e6};
  w.net.snr = {100.0};
  return w;
}

}  // namespace

TEST_CASE("battery arithmetic clamps and spares unlimited supplies") {
  CHECK(battery_update(5.0, 0.0, 1.0) == 5.0);
  CHECK(battery_update(kUnlimitedBattery, 50.0, 1.0) == kUnlimitedBattery);
  CHECK(battery_update(10.0, 1.0, 4.0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(battery_update(10.0, 100.0, 1.0) == 0.0);  // never negative
}

TEST_CASE("record aggregation respects the warm-up window") {
  EpisodeState st;
  st.dt = 0.01;
  TaskRecord early;
  early.completed_step = 5;
  early.latency = 1.0;
  early.comm_time = 0.2;
  early.compute_time = 0.8;
  early.md_energy = 0.1;
  early.es_energy = 0.2;
  early.offloaded = true;
  TaskRecord late;
  late.completed_step = 9;
  late.latency = 3.0;
  late.compute_time = 3.0;
  late.md_energy = 0.4;
  late.offloaded = false;
  st.completed = {early, late};

  st.warmup_steps = 0;
  Metrics all = collect_metrics(st);
  CHECK(all.tasks_completed == 2);
  CHECK(*all.mean_latency == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(*all.local_energy_per_task == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(*all.edge_energy_per_task == doctest::Approx(0.15).epsilon(1e-14));
  CHECK(*all.offload_ratio == doctest::Approx(0.5).epsilon(1e-14));

  st.warmup_steps = 6;  // drops the record completed at step 5
  Metrics tail = collect_metrics(st);
  CHECK(tail.tasks_completed == 1);
  CHECK(*tail.mean_latency == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(*tail.offload_ratio == 0.0);
}

TEST_CASE("an empty episode reports absent averages") {
  EpisodeState st;
  const Metrics m = collect_metrics(st);
  CHECK(m.tasks_completed == 0);
  CHECK_FALSE(m.mean_latency.has_value());
  CHECK_FALSE(m.offload_ratio.has_value());
  CHECK_FALSE(m.final_gap.has_value());
  const auto j = m.to_json();
  CHECK(j["mean_latency"].is_null());
  CHECK(j["g_max"].is_null());
  CHECK(j["tasks_completed"] == 0);
}

TEST_CASE("an offloaded task finishes in exactly five steps") {
  const World w = five_step_world(20, 0.0);
  const Metrics m = run_episode(w.net, w.cat, PolicyKind::MaxSinr);
  // Completions land on steps 4, 9, 14, 19: 2 transfer + 3 serial steps per
  // task, and the device re-draws on the step after each completion.
  CHECK(m.tasks_completed == 4);
  CHECK(*m.mean_latency == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(*m.comm_latency == doctest::Approx(0.02).epsilon(1e-9));
  CHECK(*m.comp_latency == doctest::Approx(0.03).epsilon(1e-9));
  CHECK(*m.offload_ratio == 1.0);
  CHECK(*m.local_energy_per_task == 0.0);
  // Radio: 2e-8 * 1e7 Hz * 0.5 W over 0.02 s; server: 1e-11 * 1e9 over 0.03 s.
  CHECK(*m.edge_energy_per_task == doctest::Approx(0.0023).epsilon(1e-9));
  CHECK(m.memory_violation_steps == 0);
  CHECK(m.idle_steps == 0);
  CHECK_FALSE(m.final_gap.has_value());
}

TEST_CASE("the warm-up window drops early completions") {
  World w = five_step_world(20, 0.0);
  w.net.config.warmup_fraction = 0.5;  // warmup_steps = 10
  const Metrics m = run_episode(w.net, w.cat, PolicyKind::MaxSinr);
  CHECK(m.tasks_completed == 2);  // only the completions at steps 14 and 19
  CHECK(*m.mean_latency == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("a local task finishes in exactly three steps") {
  const World w = five_step_world(20, 1.0);  // the coin always says local
  const Metrics m = run_episode(w.net, w.cat, PolicyKind::MaxSinr);
  // Completions at steps 2, 5, 8, 11, 14, 17; the task created at step 18
  // runs out of episode.
  CHECK(m.tasks_completed == 6);
  CHECK(*m.mean_latency == doctest::Approx(0.03).epsilon(1e-12));
  CHECK(*m.comm_latency == 0.0);
  CHECK(*m.offload_ratio == 0.0);
  // 2e-9 * 1e9 flops/s = 2 W of compute over 0.03 s, base floor excluded.
  CHECK(*m.local_energy_per_task == doctest::Approx(0.06).epsilon(1e-9));
  CHECK(*m.edge_energy_per_task == 0.0);
}

TEST_CASE("a drained battery idles the device for the rest of the run") {
  World w = five_step_world(20, 1.0);
  w.net.mds[0].cls.battery_capacity = 1.0e-3;
  w.net.mds[0].battery = 1.0e-3;  // dies during the first step
  const Metrics m = run_episode(w.net, w.cat, PolicyKind::MaxSinr);
  CHECK(m.tasks_completed == 0);
  CHECK_FALSE(m.mean_latency.has_value());
  CHECK(m.idle_steps == 19);  // dead from step 1 onward
}

TEST_CASE("zero steps complete zero tasks") {
  const World w = five_step_world(0, 0.0);
  const Metrics m = run_episode(w.net, w.cat, PolicyKind::MaxSinr);
  CHECK(m.tasks_completed == 0);
}

TEST_CASE("strict memory mode diverts the overflowing offload") {
  World w = five_step_world(5, 0.0);
  // Second device, same class; both tasks want 60% of the server's VRAM but
  // only 90% is usable.
  w.net.config.n_md = 2;
  w.net.mds.push_back(w.net.mds[0]);
  w.net.mds[1].id = 1;
  w.cat.tasks[0].memory_fraction = 0.6;
  w.net.initial_tasks = {w.cat.tasks[0], w.cat.tasks[0]};
  w.net.ess[0].cls.reserved_memory_fraction = 0.1;
  w.net.rate = {1.0e6, 1.0e6};
  w.net.snr = {100.0, 100.0};

  w.net.config.memory_strict = true;
  const Metrics strict = run_episode(w.net, w.cat, PolicyKind::MaxSinr);
  // Device 0 claims the server; device 1 falls back to local and finishes at
  // step 2, device 0 at step 4.
  CHECK(strict.memory_violation_steps == 0);
  CHECK(strict.tasks_completed == 2);
  CHECK(*strict.offload_ratio == doctest::Approx(0.5).epsilon(1e-14));

  w.net.config.memory_strict = false;
  const Metrics loose = run_episode(w.net, w.cat, PolicyKind::MaxSinr);
  // Both offload into 120% residency; the shared link stretches transfers
  // past the 5-step horizon, and every step is in violation.
  CHECK(loose.memory_violation_steps == 5);
  CHECK(loose.tasks_completed == 0);
}

TEST_CASE("identical runs produce identical metrics") {
  Catalog cat;
  DeviceClass md;
  md.name = "m";
  md.cores = 2;
  md.flops_per_core = 5.0e8;
  md.compute_energy_coeff = 2.5e-10;
  md.tx_power = 0.2;
  md.comm_energy_coeff = 2.6e-7;
  md.base_power = 0.1;
  md.battery_capacity = 3.0e4;
  DeviceClass es;
  es.name = "e";
  es.cores = 16;
  es.flops_per_core = 1.0e10;
  es.compute_energy_coeff = 1.2e-11;
  es.reserved_memory_fraction = 0.1;
  TaskSpec t;
  t.name = "t";
  t.bits = 1.0e6;
  t.flops = 2.0e8;
  t.parallel_fraction = 0.9;
  t.memory_fraction = 0.05;
  t.kind = "vision";
  cat.classes = {md, es};
  cat.tasks = {t};

  Scenario cfg;
  cfg.n_md = 6;
  cfg.n_es = 2;
  cfg.area_side = 300.0;
  cfg.task_mix = {{"t", 1.0}};
  cfg.total_bandwidth = 2.0e7;
  cfg.seed = 99;
  cfg.steps = 120;
  cfg.md_class = "m";
  cfg.es_class = "e";
  cfg.warmup_fraction = 0.2;
  cfg.price_warmup_iters = 50;

  const Network net = generate_scenario(cfg, cat);
  for (PolicyKind policy : all_policies()) {
    std::vector<DualTraceRow> trace_a, trace_b;
    const Metrics a = run_episode(net, cat, policy, &trace_a);
    const Metrics b = run_episode(net, cat, policy, &trace_b);
    CHECK(a.to_json().dump() == b.to_json().dump());
    if (policy == PolicyKind::Pricing) {
      CHECK(a.final_gap.has_value());
      CHECK(a.g_max.has_value());
      REQUIRE(trace_a.size() == 120);
      CHECK(trace_a.back().mu == trace_b.back().mu);
      CHECK(trace_a.back().g == trace_b.back().g);
    } else {
      CHECK(trace_a.empty());
    }
  }
}
