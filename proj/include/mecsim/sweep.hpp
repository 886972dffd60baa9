#ifndef MECSIM_SWEEP_HPP
#define MECSIM_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mecsim/engine.hpp"
#include "mecsim/model.hpp"
#include "mecsim/textio.hpp"

namespace mecsim {

// Study drivers shared by the CLI and the test harnesses.  Episodes inside a
// study are independent; they fan out across threads and the tables are
// assembled in a fixed order afterwards, so results do not depend on thread
// count or scheduling.

// Seed of the k-th episode of a study: every policy compared at the same k
// sees the same placement, channel, and task draws.
std::uint64_t episode_seed(std::uint64_t master_seed, std::uint64_t counter);

enum class SweepAxis { NMd, NEs, Alpha };

std::string to_string(SweepAxis axis);
SweepAxis axis_from_string(const std::string& name);

// Base scenario with the axis value applied; n_md / n_es require integral
// values.  Throws std::invalid_argument on unusable values.
Scenario apply_axis(const Scenario& base, SweepAxis axis, double value);

// One generated-scenario episode per (axis value, policy, seed index); cells
// are seed-averages.  Columns: axis, policy, mean_latency, comm_latency,
// comp_latency, local_energy_per_task, edge_energy_per_task, offload_ratio,
// gap.  Baselines carry no duality gap, so their gap cell is "nan".
CsvTable sweep_table(const Scenario& base, const Catalog& catalog, SweepAxis axis,
                     const std::vector<double>& values);

// Latency/energy trade-off study: the four heuristic policies are swept over
// their local-compute probability (eps grid) and the pricing policy over the
// energy weight (alpha grid).  Rows carry both the raw seed-averaged metrics
// and their reciprocals (guarded by reg_epsilon), plus a dominance flag: 1
// when no other row is at least as good on both reciprocal axes and strictly
// better on one.
CsvTable pareto_table(const Scenario& base, const Catalog& catalog,
                      const std::vector<double>& eps_grid,
                      const std::vector<double>& alpha_grid);

// Price trajectory of the dual ascent on the frozen initial task landscape
// of the scenario, one row per step: t, mu_0.., nu_0.., g, primal, gap.
// steps == 0 yields a header-only table.
CsvTable convergence_table(const Scenario& base, const Catalog& catalog, double eta);

// Pricing after `steps` ascent iterations vs. the exhaustive optimum, with
// the a-posteriori gap bound evaluated at the final prices.  Throws when the
// association space exceeds the enumeration guard.
nlohmann::json oracle_compare_json(const Scenario& base, const Catalog& catalog);

struct SimulateResult {
  nlohmann::json metrics;          // array, one object per configured policy
  std::optional<CsvTable> trace;   // pricing price/dual trajectory, if enabled
};

// One episode per policy listed in the scenario, all on the same generated
// network.  The trace is captured when `config.trace` is set and the policy
// list includes pricing.
SimulateResult simulate(const Scenario& config, const Catalog& catalog);

}  // namespace mecsim

#endif  // MECSIM_SWEEP_HPP
