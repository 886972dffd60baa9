#include "mecsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mecsim/allocator.hpp"
#include "mecsim/objective.hpp"
#include "mecsim/perf.hpp"
#include "mecsim/rng.hpp"

namespace mecsim {

double battery_update(double battery, double power_w, double dt) {
  if (battery_unlimited(battery)) return battery;
  const double drained = battery - power_w * dt;
  return drained > 0.0 ? drained : 0.0;
}

namespace {

bool is_dead(double battery) { return !battery_unlimited(battery) && battery <= 0.0; }

// Normalized queue of a server: remaining parallel flops over total speed.
// Tasks still in transfer count in full; they are committed work.
std::vector<double> load_view(const std::vector<std::optional<ActiveTask>>& tasks,
                              const std::vector<EdgeServer>& ess) {
  std::vector<double> load(ess.size(), 0.0);
  for (const auto& t : tasks) {
    if (!t || t->es == kLocal) continue;
    load[t->es] += t->parallel_remaining / ess[t->es].cls.total_flops();
  }
  return load;
}

// VRAM share currently resident on each server.
std::vector<double> memory_view(const std::vector<std::optional<ActiveTask>>& tasks, int n_es) {
  std::vector<double> mem(n_es, 0.0);
  for (const auto& t : tasks) {
    if (!t || t->es == kLocal) continue;
    mem[t->es] += t->spec.memory_fraction;
  }
  return mem;
}

}  // namespace

Metrics collect_metrics(const EpisodeState& state) {
  Metrics m;
  double lat = 0.0, comm = 0.0, comp = 0.0;
  double local_energy = 0.0, edge_energy = 0.0;
  int n = 0, offloaded = 0;
  for (const TaskRecord& r : state.completed) {
    if (r.completed_step < state.warmup_steps) continue;
    ++n;
    lat += r.latency;
    comm += r.comm_time;
    comp += r.compute_time;
    if (r.offloaded) {
      ++offloaded;
      edge_energy += r.md_energy + r.es_energy;
    } else {
      local_energy += r.md_energy;
    }
  }
  m.tasks_completed = n;
  if (n > 0) {
    m.mean_latency = lat / n;
    m.comm_latency = comm / n;
    m.comp_latency = comp / n;
    m.local_energy_per_task = local_energy / n;
    m.edge_energy_per_task = edge_energy / n;
    m.offload_ratio = static_cast<double>(offloaded) / n;
  }
  m.memory_violation_steps = state.memory_violation_steps;
  m.idle_steps = state.idle_md_steps;
  if (state.has_dual) {
    m.final_gap = state.final_gap;
    m.g_max = state.g_max;
  }
  return m;
}

Metrics run_episode(const Network& net, const Catalog& catalog, PolicyKind policy,
                    std::vector<DualTraceRow>* trace) {
  const Scenario& cfg = net.config;
  const int n_md = cfg.n_md, n_es = cfg.n_es;

  EpisodeState st;
  st.dt = cfg.dt;
  st.tasks.resize(n_md);
  st.y.assign(n_md, 0.0);
  st.z.assign(n_md, 0.0);
  st.warmup_steps = static_cast<int>(std::floor(cfg.warmup_fraction * cfg.steps));
  st.batteries.reserve(n_md);
  for (const auto& md : net.mds) st.batteries.push_back(md.battery);

  OffloadInstance inst = OffloadInstance::from_network(net);

  // Independent streams: one task stream and one policy stream per device.
  // The scenario generator already consumed draw #1 of each task stream for
  // the initial task, so fast-forward by one.
  std::vector<Rng> task_rng, policy_rng;
  task_rng.reserve(n_md);
  policy_rng.reserve(n_md);
  for (int i = 0; i < n_md; ++i) {
    task_rng.push_back(Rng::substream(cfg.seed, streams::kTaskBase + static_cast<std::uint64_t>(i)));
    task_rng.back().next_u64();
    policy_rng.push_back(
        Rng::substream(cfg.seed, streams::kPolicyBase + static_cast<std::uint64_t>(i)));
  }

  const bool pricing = policy == PolicyKind::Pricing;
  if (pricing) {
    st.prices = PriceState::init_random(n_es, cfg.seed, cfg.eta1, cfg.eta2);
    if (cfg.price_warmup_iters > 0) {
      // Settle the dual ascent on the initial task set (from_network marks
      // every device active) so the prices the servers expose at t=0 already
      // price that load.  See Scenario::price_warmup_iters.
      DualRunResult warm = run_dual(inst, st.prices, cfg.price_warmup_iters, 1e-10);
      st.prices = warm.prices;
    }
  }
  inst.active.assign(n_md, 0);  // tasks activate on creation below
  st.has_dual = pricing;
  st.g_max = -std::numeric_limits<double>::infinity();

  for (int step = 0; step < cfg.steps; ++step) {
    st.step = step;
    st.time = step * cfg.dt;

    // --- task creation and association -----------------------------------
    // The compute-load view is live: decisions made earlier in this loop
    // already count, so simultaneous arrivals spread instead of piling onto
    // one server.
    std::vector<double> load = load_view(st.tasks, net.ess);
    std::vector<double> mem = memory_view(st.tasks, n_es);
    for (int i = 0; i < n_md; ++i) {
      if (is_dead(st.batteries[i])) {
        if (st.tasks[i]) st.tasks[i].reset();  // dead mid-task: work is lost
        inst.active[i] = 0;
        ++st.idle_md_steps;
        continue;
      }
      if (st.tasks[i]) continue;  // previous task still in flight

      ActiveTask t;
      t.spec = step == 0 ? net.initial_tasks[i]
                         : sample_task(cfg.task_mix, catalog, task_rng[i]);
      t.created_step = step;
      t.bits_remaining = t.spec.bits;
      t.serial_remaining = t.spec.flops * (1.0 - t.spec.parallel_fraction);
      t.parallel_remaining = t.spec.flops * t.spec.parallel_fraction;

      inst.task[i] = t.spec;
      inst.active[i] = 1;
      inst.battery[i] = st.batteries[i];

      int choice = kLocal;
      switch (policy) {
        case PolicyKind::Random:
          choice = random_choice(n_es, policy_rng[i], cfg.epsilon_local);
          break;
        case PolicyKind::MaxSinr:
          choice = max_sinr_choice(inst, i, policy_rng[i], cfg.epsilon_local);
          break;
        case PolicyKind::MaxCompute:
          choice = max_compute_choice(load, policy_rng[i], cfg.epsilon_local);
          break;
        case PolicyKind::Combined:
          choice = combined_choice(inst, i, load, policy_rng[i], cfg.epsilon_local);
          break;
        case PolicyKind::Pricing:
          choice = pricing_choice(inst, st.prices, i);
          break;
      }
      if (choice != kLocal && cfg.memory_strict) {
        const auto& es_cls = net.ess[choice].cls;
        if (mem[choice] + t.spec.memory_fraction >
            1.0 - es_cls.reserved_memory_fraction) {
          choice = kLocal;  // strict mode: overflowing offloads fall back
        }
      }
      t.es = choice;
      if (choice == kLocal) t.bits_remaining = 0.0;  // no uplink for local runs
      if (choice != kLocal) {
        load[choice] += t.parallel_remaining / net.ess[choice].cls.total_flops();
        mem[choice] += t.spec.memory_fraction;
      }
      st.tasks[i] = std::move(t);
    }

    // --- per-server resource split ---------------------------------------
    // Bandwidth goes to tasks still transferring; cores go to tasks whose
    // payload has fully arrived.  Weights use the task's total demand, so a
    // member's share is stable over its lifetime unless membership changes.
    std::fill(st.y.begin(), st.y.end(), 0.0);
    std::fill(st.z.begin(), st.z.end(), 0.0);
    bool violated = false;
    for (int j = 0; j < n_es; ++j) {
      std::vector<int> transferring, computing;
      double resident_mem = 0.0;
      for (int i = 0; i < n_md; ++i) {
        const auto& t = st.tasks[i];
        if (!t || t->es != j) continue;
        resident_mem += t->spec.memory_fraction;
        if (t->bits_remaining > 0.0)
          transferring.push_back(i);
        else
          computing.push_back(i);
      }
      if (resident_mem > 1.0 - net.ess[j].cls.reserved_memory_fraction + 1e-12)
        violated = true;
      if (!transferring.empty()) {
        std::vector<std::pair<double, double>> bw;
        bw.reserve(transferring.size());
        for (int i : transferring)
          bw.emplace_back(st.tasks[i]->spec.bits, net.rate_at(i, j));
        const auto y = allocate_bandwidth(bw);
        for (std::size_t k = 0; k < transferring.size(); ++k) st.y[transferring[k]] = y[k];
      }
      if (!computing.empty()) {
        std::vector<std::pair<double, double>> cores;
        cores.reserve(computing.size());
        for (int i : computing)
          cores.emplace_back(st.tasks[i]->spec.flops, st.tasks[i]->spec.parallel_fraction);
        const auto z = allocate_cores(cores);
        for (std::size_t k = 0; k < computing.size(); ++k) st.z[computing[k]] = z[k];
      }
    }
    if (violated) ++st.memory_violation_steps;

    // --- progress, with carry-over across phases inside the step ---------
    for (int i = 0; i < n_md; ++i) {
      if (!st.tasks[i]) continue;
      ActiveTask& t = *st.tasks[i];
      double step_energy = net.mds[i].cls.base_power * cfg.dt;  // always-on floor
      double time_left = cfg.dt;

      if (t.es == kLocal) {
        const DeviceClass& cls = net.mds[i].cls;
        // Serial phase: one core live; parallel phase: all cores live.  The
        // integrated energy over a full task is exactly coeff * flops, the
        // same quantity the offload-gain term uses.
        if (t.serial_remaining > 0.0 && time_left > 0.0) {
          const double rate = cls.flops_per_core;
          const double need = t.serial_remaining / rate;
          const double used = std::min(need, time_left);
          t.serial_remaining -= rate * used;
          if (need <= time_left) t.serial_remaining = 0.0;
          t.compute_time += used;
          const double p = cls.compute_energy_coeff * cls.flops_per_core;
          t.md_energy += p * used;
          step_energy += p * used;
          time_left -= used;
        }
        if (t.serial_remaining <= 0.0 && t.parallel_remaining > 0.0 && time_left > 0.0) {
          const double rate = cls.total_flops();
          const double need = t.parallel_remaining / rate;
          const double used = std::min(need, time_left);
          t.parallel_remaining -= rate * used;
          if (need <= time_left) t.parallel_remaining = 0.0;
          t.compute_time += used;
          const double p = cls.compute_energy_coeff * cls.total_flops();
          t.md_energy += p * used;
          step_energy += p * used;
          time_left -= used;
        }
      } else {
        const int j = t.es;
        const DeviceClass& es_cls = net.ess[j].cls;
        if (t.bits_remaining > 0.0 && time_left > 0.0) {
          const double rate = net.rate_at(i, j) * st.y[i];
          if (rate > 0.0) {
            const double need = t.bits_remaining / rate;
            const double used = std::min(need, time_left);
            t.bits_remaining -= rate * used;
            if (need <= time_left) t.bits_remaining = 0.0;
            t.comm_time += used;
            const double p = net.mds[i].cls.comm_energy_coeff * st.y[i] *
                             net.ess[j].bandwidth * net.mds[i].cls.tx_power;
            t.md_energy += p * used;
            step_energy += p * used;
            time_left -= used;
          } else {
            time_left = 0.0;  // no bandwidth this step
          }
        }
        // Serial part runs on one dedicated core as soon as the payload is
        // in; the parallel part needs a core share, granted from the next
        // split after the transfer finished.
        if (t.bits_remaining <= 0.0 && t.serial_remaining > 0.0 && time_left > 0.0) {
          const double rate = es_cls.flops_per_core;
          const double need = t.serial_remaining / rate;
          const double used = std::min(need, time_left);
          t.serial_remaining -= rate * used;
          if (need <= time_left) t.serial_remaining = 0.0;
          t.compute_time += used;
          t.es_energy += es_cls.compute_energy_coeff * es_cls.flops_per_core * used;
          time_left -= used;
        }
        if (t.bits_remaining <= 0.0 && t.serial_remaining <= 0.0 &&
            t.parallel_remaining > 0.0 && time_left > 0.0 && st.z[i] > 0.0) {
          const double rate = es_cls.total_flops() * st.z[i];
          const double need = t.parallel_remaining / rate;
          const double used = std::min(need, time_left);
          t.parallel_remaining -= rate * used;
          if (need <= time_left) t.parallel_remaining = 0.0;
          t.compute_time += used;
          t.es_energy += es_cls.compute_energy_coeff * rate * used;
          time_left -= used;
        }
      }

      st.batteries[i] = battery_update(st.batteries[i], step_energy / cfg.dt, cfg.dt);
      inst.battery[i] = st.batteries[i];

      if (t.bits_remaining <= 0.0 && t.serial_remaining <= 0.0 && t.parallel_remaining <= 0.0) {
        TaskRecord r;
        r.md = i;
        r.es = t.es;
        r.created_step = t.created_step;
        r.completed_step = step;
        r.latency = (step - t.created_step + 1) * cfg.dt;
        r.comm_time = t.comm_time;
        r.compute_time = t.compute_time;
        r.md_energy = t.md_energy;
        r.es_energy = t.es_energy;
        r.offloaded = t.es != kLocal;
        st.completed.push_back(r);
        st.tasks[i].reset();
        inst.active[i] = 0;
      }
    }

    // Idle devices still pay the base floor.
    for (int i = 0; i < n_md; ++i) {
      if (!st.tasks[i] && !is_dead(st.batteries[i])) {
        st.batteries[i] =
            battery_update(st.batteries[i], net.mds[i].cls.base_power, cfg.dt);
        inst.battery[i] = st.batteries[i];
      }
    }

    // --- one dual ascent step over the current task landscape ------------
    if (pricing) {
      const ScoreTerms terms = score_terms(inst);
      const std::vector<int> fresh = recover_assignment(terms, st.prices);
      const double g = dual_value(terms, st.prices);
      st.g_max = std::max(st.g_max, g);
      const double primal = direct_objective(inst, fresh).total;
      st.final_gap = primal - g;
      if (trace != nullptr) {
        DualTraceRow row;
        row.t = step;
        row.mu = st.prices.mu;
        row.nu = st.prices.nu;
        row.g = g;
        row.primal = primal;
        row.gap = primal - g;
        trace->push_back(std::move(row));
      }
      price_step(terms, st.prices, fresh);
    }
  }

  Metrics m = collect_metrics(st);
  m.policy = to_string(policy);
  m.seed = cfg.seed;
  return m;
}

nlohmann::json Metrics::to_json() const {
  nlohmann::json j;
  j["policy"] = policy;
  j["seed"] = seed;
  j["tasks_completed"] = tasks_completed;
  auto put = [&j](const char* key, const std::optional<double>& v) {
    if (v)
      j[key] = *v;
    else
      j[key] = nullptr;
  };
  put("mean_latency", mean_latency);
  put("comm_latency", comm_latency);
  put("comp_latency", comp_latency);
  put("local_energy_per_task", local_energy_per_task);
  put("edge_energy_per_task", edge_energy_per_task);
  put("offload_ratio", offload_ratio);
  j["memory_violation_steps"] = memory_violation_steps;
  j["idle_steps"] = idle_steps;
  put("final_gap", final_gap);
  put("g_max", g_max);
  return j;
}

}  // namespace mecsim
