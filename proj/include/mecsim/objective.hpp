#ifndef MECSIM_OBJECTIVE_HPP
#define MECSIM_OBJECTIVE_HPP

#include <vector>

#include "mecsim/instance.hpp"

namespace mecsim {

// System objective of one association under the closed-form resource split.
// This is the quantity every solver minimizes: total delay plus the
// alpha-weighted battery terms.
//
// Convention for the battery terms (one consistent choice applied
// everywhere): every active device receives the constant credit
// -w_i * G_i(best) and an offloaded device pays the same amount back, so the
// net energy term is 0 for offloaded devices and -w_i * G_i(best) for local
// ones.  Here w_i = alpha / battery and G_i(best) is the offload energy gain
// evaluated at the device's best-rate server; the reference is per device,
// never per serving link, so the energy term cannot steer devices between
// servers.  Unlimited batteries weigh zero.
struct ObjectiveValue {
  double total = 0.0;
  double delay = 0.0;   // s, via the perf formulas at the granted y*, z*
  double energy = 0.0;  // alpha-weighted battery terms (can be negative)
};

// Direct evaluation: per-server closed-form y*/z*, then the perf delay
// formulas term by term.  assoc[i] is a server index or kLocal; inactive
// devices contribute nothing.
ObjectiveValue direct_objective(const OffloadInstance& inst, const std::vector<int>& assoc);

}  // namespace mecsim

#endif  // MECSIM_OBJECTIVE_HPP
