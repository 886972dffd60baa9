#ifndef MECSIM_TESTS_TEST_INSTANCES_HPP
#define MECSIM_TESTS_TEST_INSTANCES_HPP

// Hand-built association problems shared by the tests.  Building the
// OffloadInstance directly (instead of generating a whole scenario) keeps
// the problem sizes and number ranges under the test's control.

#include <cstdint>
#include <functional>
#include <vector>

#include "mecsim/instance.hpp"
#include "mecsim/rng.hpp"

namespace testinst {

// Randomized instance with a healthy mix of regimes: some devices prefer
// offloading at zero prices, some do not; batteries alternate between
// limited and unlimited so the energy term is exercised on both paths.
inline mecsim::OffloadInstance random_instance(mecsim::Rng& rng, int n_md, int n_es,
                                               double alpha = 1.0) {
  using namespace mecsim;
  OffloadInstance inst;
  inst.n_md = n_md;
  inst.n_es = n_es;
  inst.alpha = alpha;
  inst.reg_eps = 1e-12;

  DeviceClass md;
  md.name = "dev";
  md.cores = 4;
  md.flops_per_core = 1.0e9;
  md.compute_energy_coeff = 2.5e-10;
  md.tx_power = 0.2;
  md.comm_energy_coeff = 2.6e-7;
  md.base_power = 0.5;

  DeviceClass es;
  es.name = "srv";
  es.cores = 16;
  es.flops_per_core = 1.0e10;
  es.compute_energy_coeff = 1.2e-11;
  es.reserved_memory_fraction = 0.1;

  for (int j = 0; j < n_es; ++j) {
    DeviceClass e = es;
    e.flops_per_core = rng.uniform(5.0e9, 2.0e10);
    inst.es_cls.push_back(e);
  }
  for (int i = 0; i < n_md; ++i) {
    DeviceClass m = md;
    m.battery_capacity = (i % 2 == 0) ? 1.0e4 : kUnlimitedBattery;
    inst.md_cls.push_back(m);
    inst.battery.push_back(m.battery_capacity);

    TaskSpec t;
    t.name = "t";
    t.bits = rng.uniform(1.0e5, 5.0e6);
    t.flops = rng.uniform(5.0e7, 1.0e9);
    t.parallel_fraction = rng.uniform(0.5, 0.99);
    t.memory_fraction = 0.02;
    inst.task.push_back(t);

    for (int j = 0; j < n_es; ++j) {
      const double r = rng.uniform(1.0e6, 1.0e8);
      inst.rate.push_back(r);
      inst.snr.push_back(r / 1.0e6);
    }
  }
  inst.active.assign(n_md, 1);
  return inst;
}

// Visits every association of n_md devices over n_es servers plus the local
// option, in enumeration order.
inline void for_each_association(int n_md, int n_es,
                                 const std::function<void(const std::vector<int>&)>& fn) {
  const std::uint64_t base = static_cast<std::uint64_t>(n_es) + 1;
  std::uint64_t total = 1;
  for (int i = 0; i < n_md; ++i) total *= base;
  std::vector<int> assoc(n_md, mecsim::kLocal);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < n_md; ++i) {
      const std::uint64_t digit = c % base;
      assoc[i] = digit == 0 ? mecsim::kLocal : static_cast<int>(digit - 1);
      c /= base;
    }
    fn(assoc);
  }
}

}  // namespace testinst

#endif  // MECSIM_TESTS_TEST_INSTANCES_HPP
