#ifndef MECSIM_PRICING_HPP
#define MECSIM_PRICING_HPP

#include <cstdint>
#include <vector>

#include "mecsim/instance.hpp"

namespace mecsim {

// Distributed pricing optimizer for the association problem.
//
// Each server advertises two congestion prices: mu (bandwidth) and nu
// (cores).  Devices independently pick the server minimizing a price-
// weighted score, or stay local when every score is positive.  Servers then
// nudge their prices along the dual subgradient.  The per-step work is
// O(n_md * n_es) in total and each device's decision reads only the price
// vector, so the scheme runs distributed in spirit and embarrassingly
// parallel in practice.

struct PriceState {
  std::vector<double> mu;  // bandwidth price per server
  std::vector<double> nu;  // core price per server
  double eta1 = 0.01, eta2 = 0.01;
  int step = 0;

  // Uniform [0,1) initialization from the dedicated price stream of `seed`:
  // first all mu draws, then all nu draws.
  static PriceState init_random(int n_es, std::uint64_t seed, double eta1, double eta2);
  static PriceState zeros(int n_es, double eta1, double eta2);
};

// Per-pair score ingredients: the square roots that enter the congestion
// penalties and the price-free component c of the score.  `constant` is the
// association-independent part of the objective, so that
//   surrogate(assoc) = sum_j (S1_j^2 + S2_j^2) + sum_assoc c + constant
// equals the direct objective exactly.
struct ScoreTerms {
  int n_md = 0, n_es = 0;
  std::vector<double> sqrt_dcm;  // sqrt(d_i / R_ij), row-major
  std::vector<double> sqrt_des;  // sqrt(f_i rho_i / (F_j Z_j)), row-major
  std::vector<double> c;         // serial delay - local delay + battery term
  std::vector<char> active;      // inactive rows never offload
  double constant = 0.0;

  // Optimal slack variables induced by a price (their squared sums enter the
  // dual value): a_j* = mu_j^2 / 4, b_j* = nu_j^2 / 4.
  static double slack_a(double mu) { return mu * mu / 4.0; }
  static double slack_b(double nu) { return nu * nu / 4.0; }

  std::size_t at(int i, int j) const { return static_cast<std::size_t>(i) * n_es + j; }
};

ScoreTerms score_terms(const OffloadInstance& inst);

// Device-side recovery at the given prices: per device the score
//   w_ij = mu_j * sqrt_dcm_ij + nu_j * sqrt_des_ij + c_ij
// picks argmin_j (ties to the lowest index), offloading only when the
// minimum is strictly negative.  Runs the devices in parallel; the output is
// identical to the serial reference for every thread count.
std::vector<int> recover_assignment(const ScoreTerms& terms, const PriceState& prices);

// Single-device recovery: the choice device i makes at the current prices,
// computed straight from the instance (used by the episode engine at task
// creation, when the other rows of a ScoreTerms batch may be stale).
int pricing_choice(const OffloadInstance& inst, const PriceState& prices, int i);

// Lagrangian dual value at the prices:
//   g = -sum_j (mu_j^2/4 + nu_j^2/4) + sum_i min(0, min_j w_ij) + constant.
// The min with 0 realizes the local option of the recovery rule.  The
// constant makes g directly comparable with the objective of any
// association (weak duality: g <= objective for every feasible assoc).
double dual_value(const ScoreTerms& terms, const PriceState& prices);

// One subgradient ascent step from the loads of the given association:
//   mu_j += eta1 * (sum_{i->j} sqrt_dcm_ij - mu_j/2)   (nu analogous).
void price_step(const ScoreTerms& terms, PriceState& prices, const std::vector<int>& assoc);

// Surrogate (congestion-form) objective of an association; equals
// direct_objective(...).total up to regularizer-level rounding.
double surrogate_objective(const ScoreTerms& terms, const std::vector<int>& assoc);

// Optimality-gap instrumentation at the current iterate.
struct DualReport {
  double g = 0.0;       // dual value
  double primal = 0.0;  // direct objective of the recovered association
  double gap = 0.0;     // primal - g (>= 0 up to roundoff)
  double bound = 0.0;   // load-mismatch bound on (primal - optimum)
  std::vector<double> delta1, delta2;  // per-server |price/2 - load| mismatches
};
DualReport duality_report(const ScoreTerms& terms, const PriceState& prices,
                          const std::vector<int>& assoc, const OffloadInstance& inst);

// Constant step size and accuracy for a horizon of T steps, given a bound
// delta1 on the squared subgradient norm and delta2 on the squared distance
// from the initial prices to the optimum:
//   eta = sqrt(delta2 / ((T+1) delta1)),  eps = sqrt(delta1 delta2 / (T+1)).
struct StepSizeRule {
  double eta1 = 0.0, eta2 = 0.0, epsilon = 0.0;
};
StepSizeRule recommended_step_size(double delta1, double delta2, int T);

// Batch driver: iterates recover -> price_step for up to max_steps, or until
// the largest per-step price change drops below stop_tol (if positive).
struct DualTraceRow {
  int t = 0;
  std::vector<double> mu, nu;
  double g = 0.0, primal = 0.0, gap = 0.0;
};

struct DualRunResult {
  PriceState prices;
  std::vector<int> assignment;  // recovery at the final prices
  double g_final = 0.0, g_max = 0.0;
  double primal_final = 0.0, gap_final = 0.0;
  double final_step_change = 0.0;  // max |price delta| of the last step
  double max_grad_sq = 0.0;        // max over iterates of ||subgradient||^2
  bool stabilized = false;
  int steps_run = 0;
};

DualRunResult run_dual(const OffloadInstance& inst, PriceState prices, int max_steps,
                       double stop_tol = 0.0, std::vector<DualTraceRow>* trace = nullptr,
                       bool trace_primal = true);

}  // namespace mecsim

#endif  // MECSIM_PRICING_HPP
