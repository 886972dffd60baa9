#ifndef MECSIM_PRICING_REF_HPP
#define MECSIM_PRICING_REF_HPP

#include <vector>

#include "mecsim/pricing.hpp"

namespace mecsim::ref {

// Serial reference implementations of the parallel kernels.  These are the
// straightforward single-loop versions; the production kernels must agree
// with them exactly (assignments bit for bit, sums to tight tolerance) for
// every thread count.  Used by the tests and the kernel benchmark.

std::vector<int> recover_assignment(const ScoreTerms& terms, const PriceState& prices);
double dual_value(const ScoreTerms& terms, const PriceState& prices);

}  // namespace mecsim::ref

#endif  // MECSIM_PRICING_REF_HPP
