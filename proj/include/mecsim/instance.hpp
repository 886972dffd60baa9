#ifndef MECSIM_INSTANCE_HPP
#define MECSIM_INSTANCE_HPP

#include <vector>

#include "mecsim/model.hpp"
#include "mecsim/perf.hpp"

namespace mecsim {

// Snapshot of one association decision problem: every device's current task
// plus the static world (rates, hardware, batteries).  Both the pricing
// optimizer and the exhaustive oracle consume this struct, and tests can
// build it directly without going through scenario generation.
//
// An association is a vector<int> with one entry per MD: the serving ES
// index, or kLocal for on-device execution.
inline constexpr int kLocal = -1;

struct OffloadInstance {
  int n_md = 0, n_es = 0;
  double alpha = 0.0;
  double reg_eps = 1e-12;

  std::vector<TaskSpec> task;     // current task per MD
  std::vector<char> active;       // 0 = no task right now (idle / dead battery)
  std::vector<double> battery;    // J remaining; < 0 means unlimited
  std::vector<DeviceClass> md_cls;  // per MD
  std::vector<DeviceClass> es_cls;  // per ES
  std::vector<double> rate;       // R_ij bits/s, row-major [i * n_es + j]
  std::vector<double> snr;        // linear SNR_ij (baseline policies only)

  double rate_at(int i, int j) const {
    return rate[static_cast<std::size_t>(i) * n_es + j];
  }
  double snr_at(int i, int j) const {
    return snr[static_cast<std::size_t>(i) * n_es + j];
  }

  // Weight of the energy-preservation term for MD i: alpha per Joule of
  // remaining battery.  Unlimited batteries weigh zero; an empty battery
  // degenerates to the maximal penalty via the regularizer.
  double gain_weight(int i) const {
    if (battery_unlimited(battery[i])) return 0.0;
    const double b = battery[i] > 0.0 ? battery[i] : reg_eps;
    return alpha / b;
  }

  // Energy saved if MD i offloads its current task over link (i, j).
  double gain(int i, int j) const {
    return offload_energy_gain(md_cls[i], task[i], rate_at(i, j), reg_eps);
  }

  // Reference server for the local-branch energy bookkeeping: the best
  // (max-rate) link, ties to the lowest index.
  int best_rate_es(int i) const {
    int best = 0;
    for (int j = 1; j < n_es; ++j)
      if (rate_at(i, j) > rate_at(i, best)) best = j;
    return best;
  }

  double local_dly(int i) const { return local_delay(task[i], md_cls[i]); }

  // Builds the decision problem for a generated world using its initial
  // tasks; the engine swaps `task`/`battery`/`active` in place as the
  // episode evolves.
  static OffloadInstance from_network(const Network& net);
};

}  // namespace mecsim

#endif  // MECSIM_INSTANCE_HPP
