#include "mecsim/pricing_ref.hpp"

#include <algorithm>

namespace mecsim::ref {

namespace {
inline double score(const ScoreTerms& t, const PriceState& p, int i, int j) {
  const std::size_t k = t.at(i, j);
  return p.mu[j] * t.sqrt_dcm[k] + p.nu[j] * t.sqrt_des[k] + t.c[k];
}
}  // namespace

std::vector<int> recover_assignment(const ScoreTerms& terms, const PriceState& prices) {
  std::vector<int> assoc(terms.n_md, kLocal);
  for (int i = 0; i < terms.n_md; ++i) {
    if (!terms.active[i]) continue;
    int best = 0;
    double w = score(terms, prices, i, 0);
    for (int j = 1; j < terms.n_es; ++j) {
      const double wj = score(terms, prices, i, j);
      if (wj < w) {
        w = wj;
        best = j;
      }
    }
    assoc[i] = w < 0.0 ? best : kLocal;
  }
  return assoc;
}

double dual_value(const ScoreTerms& terms, const PriceState& prices) {
  double slacks = 0.0;
  for (int j = 0; j < terms.n_es; ++j)
    slacks += ScoreTerms::slack_a(prices.mu[j]) + ScoreTerms::slack_b(prices.nu[j]);
  double device_part = 0.0;
  for (int i = 0; i < terms.n_md; ++i) {
    if (!terms.active[i]) continue;
    double w = score(terms, prices, i, 0);
    for (int j = 1; j < terms.n_es; ++j) w = std::min(w, score(terms, prices, i, j));
    device_part += std::min(0.0, w);
  }
  return -slacks + device_part + terms.constant;
}

}  // namespace mecsim::ref
