#include "mecsim/objective.hpp"

#include "mecsim/allocator.hpp"
#include "mecsim/perf.hpp"

namespace mecsim {

ObjectiveValue direct_objective(const OffloadInstance& inst, const std::vector<int>& assoc) {
  ObjectiveValue out;

  // Gather each server's served set.
  std::vector<std::vector<int>> served(inst.n_es);
  for (int i = 0; i < inst.n_md; ++i) {
    if (!inst.active[i]) continue;
    const int j = assoc[i];
    if (j == kLocal) {
      out.delay += inst.local_dly(i);
    } else {
      served[j].push_back(i);
    }
    // Constant credit: the objective measures energy relative to everyone
    // offloading over their best link.
    out.energy -= inst.gain_weight(i) * inst.gain(i, inst.best_rate_es(i));
  }

  for (int j = 0; j < inst.n_es; ++j) {
    if (served[j].empty()) continue;
    std::vector<std::pair<double, double>> bw, cores;
    bw.reserve(served[j].size());
    cores.reserve(served[j].size());
    for (int i : served[j]) {
      bw.emplace_back(inst.task[i].bits, inst.rate_at(i, j));
      cores.emplace_back(inst.task[i].flops, inst.task[i].parallel_fraction);
    }
    const std::vector<double> y = allocate_bandwidth(bw);
    const std::vector<double> z = allocate_cores(cores);
    for (std::size_t k = 0; k < served[j].size(); ++k) {
      const int i = served[j][k];
      out.delay += comm_delay(inst.task[i], inst.rate_at(i, j), y[k], inst.reg_eps);
      const auto [serial, parallel] = es_delay(inst.task[i], inst.es_cls[j], z[k], inst.reg_eps);
      out.delay += serial + parallel;
      // An offloaded device pays back the best-link credit taken above: its
      // net energy contribution is zero, and only devices that stay local keep
      // the (negative-gain) penalty.  The reference stays per-device so the
      // energy term never depends on which server a device lands on.
      out.energy += inst.gain_weight(i) * inst.gain(i, inst.best_rate_es(i));
    }
  }

  out.total = out.delay + out.energy;
  return out;
}

}  // namespace mecsim
