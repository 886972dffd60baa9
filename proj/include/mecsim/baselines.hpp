#ifndef MECSIM_BASELINES_HPP
#define MECSIM_BASELINES_HPP

#include <optional>
#include <string>
#include <vector>

#include "mecsim/instance.hpp"

namespace mecsim {

class Rng;

// Reference association policies.  All of them first flip an epsilon-biased
// coin for the local option and otherwise pick a server by their respective
// criterion.  They are memoryless: decisions happen once per task at
// creation time.

enum class PolicyKind { Random, MaxSinr, MaxCompute, Combined, Pricing };

const char* to_string(PolicyKind kind);
std::optional<PolicyKind> policy_from_string(const std::string& name);
std::vector<PolicyKind> all_policies();

// Uniform choice over servers, local with probability eps_local.
int random_choice(int n_es, Rng& rng, double eps_local);

// Best uplink by SNR (ties to the lowest index), local with probability eps.
int max_sinr_choice(const OffloadInstance& inst, int i, Rng& rng, double eps_local);

// Least-loaded server: load = queued parallel flops normalized by the
// server's total speed.  The caller maintains the load view; decisions made
// earlier in the same step are already reflected in it.
int max_compute_choice(const std::vector<double>& load_view, Rng& rng, double eps_local);

// Rank-sum blend of the two criteria above: ranks by SNR (descending) and by
// load (ascending) are added, lowest sum wins, ties to the lowest index.
int combined_choice(const OffloadInstance& inst, int i, const std::vector<double>& load_view,
                    Rng& rng, double eps_local);

// Exhaustive search over all (n_es + 1)^n_md associations under the
// closed-form resource split.  Refuses instances beyond the enumeration
// guard.  Enumeration may shard across threads; the merge is by ascending
// enumeration index so the result is identical to the serial scan.
struct OracleResult {
  std::vector<int> assoc;
  double objective = 0.0;
  std::uint64_t evaluated = 0;
};

inline constexpr std::uint64_t kOracleGuard = 10'000'000;

// Number of associations for an instance; returns nullopt on overflow past
// the guard (so callers can print the bound in refusal messages).
std::optional<std::uint64_t> oracle_search_space(int n_md, int n_es);

OracleResult exhaustive_oracle(const OffloadInstance& inst);

namespace ref {
// Plain serial scan, no sharding; ground truth for the parallel version.
OracleResult exhaustive_oracle(const OffloadInstance& inst);
}  // namespace ref

}  // namespace mecsim

#endif  // MECSIM_BASELINES_HPP
