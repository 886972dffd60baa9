#ifndef MECSIM_PERF_HPP
#define MECSIM_PERF_HPP

#include <utility>
#include <vector>

#include "mecsim/model.hpp"

namespace mecsim {

// Delay and energy primitives.  Everything here is a pure function of its
// arguments; policies, the optimizer, and the episode engine all consume
// these same formulas so there is exactly one source of truth.

struct DelayBreakdown {
  double comm = 0.0;        // s, uplink transfer
  double es_serial = 0.0;   // s, non-parallelizable part on the server
  double es_parallel = 0.0; // s, parallelizable part on the shared cores
  double local = 0.0;       // s, on-device execution

  double total(bool offloaded) const {
    return offloaded ? comm + es_serial + es_parallel : local;
  }
};

struct EnergyBreakdown {
  double md_compute = 0.0;  // W while computing locally
  double md_comm = 0.0;     // W while transmitting
  double md_base = 0.0;     // W always-on floor
  double es_total = 0.0;    // W on the serving server

  double md_total() const { return md_compute + md_comm + md_base; }
};

// Speedup of a task with parallel fraction rho on s parallel units.
double amdahl_speedup(double rho, double s);

// Transfer time of task.bits over a rate*y channel share; reg_eps keeps the
// y = 0 case finite.
double comm_delay(const TaskSpec& task, double rate, double y, double reg_eps);

// On-device execution time: serial part on one core, parallel part across
// all cores of the class.
double local_delay(const TaskSpec& task, const DeviceClass& cls);

// Server-side execution time split (serial, parallel) when the task holds a
// z fraction of the server's cores.
std::pair<double, double> es_delay(const TaskSpec& task, const DeviceClass& es_cls,
                                   double z, double reg_eps);

// Device-side power draw for the current activity.  Offloaded tasks pay the
// radio (scaled by the bandwidth share actually granted), local tasks pay
// the compute silicon; the base floor is always present.
EnergyBreakdown md_powers(const DeviceClass& cls, const TaskSpec& task, bool offloaded,
                          double y, double bandwidth_hz);

// Server power for a served set with core fractions z.
double es_power(const DeviceClass& es_cls,
                const std::vector<std::pair<const TaskSpec*, double>>& served);

// Inference memory footprint of a transformer with p bytes per value,
// sequence length s, batch b, hidden width h, L layers, tensor-parallel
// degree t, a attention heads, and param_count weights.
double transformer_memory(double p, double s, double b, double h, double L,
                          double t, double a, double param_count);

// VRAM feasibility of a served set: sum of memory fractions must fit in the
// non-reserved share.  Returns {feasible, slack}.
std::pair<bool, double> memory_feasible(const DeviceClass& es_cls,
                                        const std::vector<double>& memory_fractions);

// Energy the device saves by offloading instead of computing locally:
// compute energy avoided minus radio energy spent at rate R.
double offload_energy_gain(const DeviceClass& cls, const TaskSpec& task, double rate,
                           double reg_eps);

}  // namespace mecsim

#endif  // MECSIM_PERF_HPP
