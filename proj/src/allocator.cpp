#include "mecsim/allocator.hpp"

#include <cmath>
#include <stdexcept>

namespace mecsim {

namespace {

// Shared √-proportional split.  `weight[k] = 0` members have no demand for
// this resource: they are excluded from the normalizer and get a 0 share
// (the positive members' shares already sum to 1, so there is no leftover).
// If every weight vanishes the split is uniform, the documented tie rule.
std::vector<double> sqrt_proportional(const std::vector<double>& weight) {
  std::vector<double> out(weight.size(), 0.0);
  double norm = 0.0;
  for (double w : weight)
    if (w > 0.0) norm += std::sqrt(w);
  if (norm > 0.0) {
    for (std::size_t k = 0; k < weight.size(); ++k)
      if (weight[k] > 0.0) out[k] = std::sqrt(weight[k]) / norm;
  } else if (!weight.empty()) {
    for (double& v : out) v = 1.0 / static_cast<double>(weight.size());
  }
  return out;
}

}  // namespace

std::vector<double> allocate_bandwidth(const std::vector<std::pair<double, double>>& served) {
  std::vector<double> weight;
  weight.reserve(served.size());
  for (const auto& [bits, rate] : served) {
    if (bits > 0.0 && !(rate > 0.0))
      throw std::invalid_argument("allocate_bandwidth: member with payload needs rate > 0");
    weight.push_back(rate > 0.0 ? bits / rate : 0.0);
  }
  return sqrt_proportional(weight);
}

std::vector<double> allocate_cores(const std::vector<std::pair<double, double>>& served) {
  std::vector<double> weight;
  weight.reserve(served.size());
  for (const auto& [flops, rho] : served) weight.push_back(flops * rho);
  return sqrt_proportional(weight);
}

}  // namespace mecsim
