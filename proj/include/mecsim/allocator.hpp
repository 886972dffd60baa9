#ifndef MECSIM_ALLOCATOR_HPP
#define MECSIM_ALLOCATOR_HPP

#include <utility>
#include <vector>

#include "mecsim/model.hpp"

namespace mecsim {

// Closed-form per-server resource split for a fixed served set.  Both splits
// come from the KKT conditions of the respective convex subproblem: the
// optimal share of each member is proportional to the square root of its
// demand-to-quality ratio, which equalizes the marginal delay across
// members.

// Bandwidth fractions for served members given (payload bits, link rate).
// Members with zero payload need no bandwidth: they get y = 0 and leave the
// normalizer; if every payload is zero the split is uniform so the fractions
// still sum to one.
std::vector<double> allocate_bandwidth(const std::vector<std::pair<double, double>>& served);

// Core fractions for served members given (flops, parallel_fraction).  The
// server's own speed cancels out of the ratio.  Members with rho = 0 have no
// parallel work: they share the leftover after the rho > 0 members take
// their proportional cut (any split is optimal for them; uniform is the
// documented tie rule).
std::vector<double> allocate_cores(const std::vector<std::pair<double, double>>& served);

}  // namespace mecsim

#endif  // MECSIM_ALLOCATOR_HPP
