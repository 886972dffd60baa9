#include "mecsim/perf.hpp"

namespace mecsim {

double amdahl_speedup(double rho, double s) {
  return 1.0 / ((1.0 - rho) + rho / s);
}

double comm_delay(const TaskSpec& task, double rate, double y, double reg_eps) {
  return task.bits / (rate * y + reg_eps);
}

double local_delay(const TaskSpec& task, const DeviceClass& cls) {
  const double f = cls.flops_per_core;
  return task.flops * (1.0 - task.parallel_fraction) / f +
         task.flops * task.parallel_fraction / (f * cls.cores);
}

std::pair<double, double> es_delay(const TaskSpec& task, const DeviceClass& es_cls,
                                   double z, double reg_eps) {
  const double f = es_cls.flops_per_core;
  const double serial = task.flops * (1.0 - task.parallel_fraction) / (f + reg_eps);
  const double parallel =
      task.flops * task.parallel_fraction / (f * es_cls.cores * z + reg_eps);
  return {serial, parallel};
}

EnergyBreakdown md_powers(const DeviceClass& cls, const TaskSpec& task, bool offloaded,
                          double y, double bandwidth_hz) {
  EnergyBreakdown e;
  e.md_base = cls.base_power;
  if (offloaded) {
    e.md_comm = cls.comm_energy_coeff * y * bandwidth_hz * cls.tx_power;
  } else {
    const double rho = task.parallel_fraction;
    // Serial phase keeps one core busy, parallel phase all of them; the
    // class coefficient converts the active flops/s into Watts.
    e.md_compute = cls.compute_energy_coeff *
                   (cls.flops_per_core * (1.0 - rho) + cls.total_flops() * rho);
  }
  return e;
}

double es_power(const DeviceClass& es_cls,
                const std::vector<std::pair<const TaskSpec*, double>>& served) {
  double active_flops = 0.0;
  for (const auto& [task, z] : served) {
    const double rho = task->parallel_fraction;
    active_flops += es_cls.flops_per_core * (1.0 - rho) + es_cls.total_flops() * z * rho;
  }
  return es_cls.compute_energy_coeff * active_flops;
}

double transformer_memory(double p, double s, double b, double h, double L,
                          double t, double a, double param_count) {
  const double activations = s * b * h * L * (10.0 + 24.0 / t + 5.0 * a * s / (h * t));
  return p * (activations + param_count);
}

std::pair<bool, double> memory_feasible(const DeviceClass& es_cls,
                                        const std::vector<double>& memory_fractions) {
  double used = 0.0;
  for (double m : memory_fractions) used += m;
  const double slack = (1.0 - es_cls.reserved_memory_fraction) - used;
  return {slack >= 0.0, slack};
}

double offload_energy_gain(const DeviceClass& cls, const TaskSpec& task, double rate,
                           double reg_eps) {
  const double r = rate > 0.0 ? rate : reg_eps;
  return cls.compute_energy_coeff * task.flops - cls.comm_energy_coeff * task.bits / r;
}

}  // namespace mecsim
