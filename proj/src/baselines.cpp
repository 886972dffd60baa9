#include "mecsim/baselines.hpp"

#include <algorithm>
#include <stdexcept>

#include "mecsim/rng.hpp"

namespace mecsim {

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Random: return "random";
    case PolicyKind::MaxSinr: return "max_sinr";
    case PolicyKind::MaxCompute: return "max_compute";
    case PolicyKind::Combined: return "combined";
    case PolicyKind::Pricing: return "pricing";
  }
  return "?";
}

std::optional<PolicyKind> policy_from_string(const std::string& name) {
  for (PolicyKind k : all_policies())
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::vector<PolicyKind> all_policies() {
  return {PolicyKind::Random, PolicyKind::MaxSinr, PolicyKind::MaxCompute,
          PolicyKind::Combined, PolicyKind::Pricing};
}

int random_choice(int n_es, Rng& rng, double eps_local) {
  if (rng.uniform() < eps_local) return kLocal;
  return static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(n_es)));
}

int max_sinr_choice(const OffloadInstance& inst, int i, Rng& rng, double eps_local) {
  if (rng.uniform() < eps_local) return kLocal;
  int best = 0;
  for (int j = 1; j < inst.n_es; ++j)
    if (inst.snr_at(i, j) > inst.snr_at(i, best)) best = j;
  return best;
}

int max_compute_choice(const std::vector<double>& load_view, Rng& rng, double eps_local) {
  if (rng.uniform() < eps_local) return kLocal;
  int best = 0;
  for (int j = 1; j < static_cast<int>(load_view.size()); ++j)
    if (load_view[j] < load_view[best]) best = j;
  return best;
}

int combined_choice(const OffloadInstance& inst, int i, const std::vector<double>& load_view,
                    Rng& rng, double eps_local) {
  if (rng.uniform() < eps_local) return kLocal;
  const int n = inst.n_es;

  // Rank servers twice: descending SNR and ascending load.  rank[j] counts
  // how many servers strictly beat j on that criterion, so ties share a
  // rank and the final tie-break is the lowest index.
  std::vector<int> rank(n, 0);
  for (int j = 0; j < n; ++j) {
    int snr_rank = 0, load_rank = 0;
    for (int k = 0; k < n; ++k) {
      if (inst.snr_at(i, k) > inst.snr_at(i, j)) ++snr_rank;
      if (load_view[k] < load_view[j]) ++load_rank;
    }
    rank[j] = snr_rank + load_rank;
  }
  int best = 0;
  for (int j = 1; j < n; ++j)
    if (rank[j] < rank[best]) best = j;
  return best;
}

std::optional<std::uint64_t> oracle_search_space(int n_md, int n_es) {
  std::uint64_t total = 1;
  const std::uint64_t base = static_cast<std::uint64_t>(n_es) + 1;
  for (int i = 0; i < n_md; ++i) {
    if (total > kOracleGuard / base + 1) return std::nullopt;
    total *= base;
    if (total > kOracleGuard) return std::nullopt;
  }
  return total;
}

}  // namespace mecsim
