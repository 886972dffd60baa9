#include "mecsim/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mecsim/objective.hpp"
#include "mecsim/parallel.hpp"
#include "mecsim/rng.hpp"

namespace mecsim {

PriceState PriceState::init_random(int n_es, std::uint64_t seed, double eta1, double eta2) {
  PriceState p;
  p.eta1 = eta1;
  p.eta2 = eta2;
  p.mu.resize(n_es);
  p.nu.resize(n_es);
  Rng rng = Rng::substream(seed, streams::kPrices);
  for (double& v : p.mu) v = rng.uniform();
  for (double& v : p.nu) v = rng.uniform();
  return p;
}

PriceState PriceState::zeros(int n_es, double eta1, double eta2) {
  PriceState p;
  p.eta1 = eta1;
  p.eta2 = eta2;
  p.mu.assign(n_es, 0.0);
  p.nu.assign(n_es, 0.0);
  return p;
}

ScoreTerms score_terms(const OffloadInstance& inst) {
  ScoreTerms t;
  t.n_md = inst.n_md;
  t.n_es = inst.n_es;
  const std::size_t n = static_cast<std::size_t>(inst.n_md) * inst.n_es;
  t.sqrt_dcm.assign(n, 0.0);
  t.sqrt_des.assign(n, 0.0);
  t.c.assign(n, 0.0);
  t.active.assign(inst.active.begin(), inst.active.end());

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < inst.n_md; ++i) {
    if (!inst.active[i]) continue;
    const TaskSpec& task = inst.task[i];
    const double local = inst.local_dly(i);
    // The energy side of the objective is a per-device quantity: a device that
    // offloads stops paying its local-compute energy term, and that term is
    // referenced against the device's best link no matter which server ends up
    // serving it.  Folding a per-link gain into c instead would pay devices
    // *more* for picking worse links (the gain magnitude grows linearly with
    // the link's bit-time while the congestion price only grows with its
    // square root), which drives them toward their slowest servers.
    const double energy = inst.gain_weight(i) * inst.gain(i, inst.best_rate_es(i));
    for (int j = 0; j < inst.n_es; ++j) {
      const std::size_t k = t.at(i, j);
      const double r = inst.rate_at(i, j);
      // sqrt of the per-link share of the bandwidth congestion term; a dead
      // link (rate 0) makes offloading there prohibitively expensive via c.
      t.sqrt_dcm[k] = r > 0.0 ? std::sqrt(task.bits / r) : 0.0;
      const DeviceClass& es = inst.es_cls[j];
      t.sqrt_des[k] = std::sqrt(task.flops * task.parallel_fraction / es.total_flops());
      const double serial = task.flops * (1.0 - task.parallel_fraction) / es.flops_per_core;
      double c = serial - local + energy;
      if (!(r > 0.0) && task.bits > 0.0) c = std::numeric_limits<double>::infinity();
      t.c[k] = c;
    }
  }

  // Association-independent part of the objective: every active device's
  // local delay minus its best-link energy credit.
  double constant = 0.0;
  for (int i = 0; i < inst.n_md; ++i) {
    if (!inst.active[i]) continue;
    constant += inst.local_dly(i) - inst.gain_weight(i) * inst.gain(i, inst.best_rate_es(i));
  }
  t.constant = constant;
  return t;
}

namespace {

// Score of device i at server j under the given prices.
inline double score(const ScoreTerms& t, const PriceState& p, int i, int j) {
  const std::size_t k = t.at(i, j);
  return p.mu[j] * t.sqrt_dcm[k] + p.nu[j] * t.sqrt_des[k] + t.c[k];
}

inline int best_server(const ScoreTerms& t, const PriceState& p, int i, double* best_score) {
  int best = 0;
  double w = score(t, p, i, 0);
  for (int j = 1; j < t.n_es; ++j) {
    const double wj = score(t, p, i, j);
    if (wj < w) {  // strict: ties stay at the lowest index
      w = wj;
      best = j;
    }
  }
  *best_score = w;
  return best;
}

// Per-server loads of an association: S1_j = sum sqrt_dcm, S2_j = sum
// sqrt_des over the devices it serves.
void accumulate_loads(const ScoreTerms& t, const std::vector<int>& assoc,
                      std::vector<double>& s1, std::vector<double>& s2) {
  s1.assign(t.n_es, 0.0);
  s2.assign(t.n_es, 0.0);
  for (int i = 0; i < t.n_md; ++i) {
    const int j = assoc[i];
    if (j == kLocal || !t.active[i]) continue;
    s1[j] += t.sqrt_dcm[t.at(i, j)];
    s2[j] += t.sqrt_des[t.at(i, j)];
  }
}

}  // namespace

int pricing_choice(const OffloadInstance& inst, const PriceState& prices, int i) {
  if (!inst.active[i]) return kLocal;
  const TaskSpec& task = inst.task[i];
  const double local = inst.local_dly(i);
  // Best-link energy reference; see score_terms for why this is per-device.
  const double energy = inst.gain_weight(i) * inst.gain(i, inst.best_rate_es(i));
  int best = kLocal;
  double best_w = 0.0;  // the local option scores zero
  for (int j = 0; j < inst.n_es; ++j) {
    const double r = inst.rate_at(i, j);
    if (!(r > 0.0) && task.bits > 0.0) continue;  // dead link
    const double sqrt_dcm = r > 0.0 ? std::sqrt(task.bits / r) : 0.0;
    const double sqrt_des =
        std::sqrt(task.flops * task.parallel_fraction / inst.es_cls[j].total_flops());
    const double serial =
        task.flops * (1.0 - task.parallel_fraction) / inst.es_cls[j].flops_per_core;
    const double c = serial - local + energy;
    const double w = prices.mu[j] * sqrt_dcm + prices.nu[j] * sqrt_des + c;
    if (w < best_w) {  // strict: offload needs w < 0, ties stay at lower j
      best_w = w;
      best = j;
    }
  }
  return best;
}

std::vector<int> recover_assignment(const ScoreTerms& terms, const PriceState& prices) {
  if (static_cast<int>(prices.mu.size()) != terms.n_es)
    throw std::invalid_argument("recover_assignment: price/term shape mismatch");
  std::vector<int> assoc(terms.n_md, kLocal);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int i = 0; i < terms.n_md; ++i) {
    if (!terms.active[i]) continue;
    double w = 0.0;
    const int j = best_server(terms, prices, i, &w);
    // Offload only on a strictly negative score; at zero the device stays
    // local, saving the transmit energy at an equal objective.
    assoc[i] = w < 0.0 ? j : kLocal;
  }
  return assoc;
}

double dual_value(const ScoreTerms& terms, const PriceState& prices) {
  double slacks = 0.0;
  for (int j = 0; j < terms.n_es; ++j)
    slacks += ScoreTerms::slack_a(prices.mu[j]) + ScoreTerms::slack_b(prices.nu[j]);

  const double device_part = blocked_sum(static_cast<std::size_t>(terms.n_md), [&](std::size_t i) {
    if (!terms.active[i]) return 0.0;
    double w = 0.0;
    best_server(terms, prices, static_cast<int>(i), &w);
    return w < 0.0 ? w : 0.0;
  });

  // The association-independent constant keeps g on the same scale as the
  // objective, so gap = primal - g goes to zero at the optimum.
  return -slacks + device_part + terms.constant;
}

void price_step(const ScoreTerms& terms, PriceState& prices, const std::vector<int>& assoc) {
  if (!std::isfinite(prices.eta1) || !std::isfinite(prices.eta2))
    throw std::invalid_argument("price_step: non-finite step size");
  std::vector<double> s1, s2;
  accumulate_loads(terms, assoc, s1, s2);
  for (int j = 0; j < terms.n_es; ++j) {
    prices.mu[j] += prices.eta1 * (s1[j] - prices.mu[j] / 2.0);
    prices.nu[j] += prices.eta2 * (s2[j] - prices.nu[j] / 2.0);
  }
  ++prices.step;
}

double surrogate_objective(const ScoreTerms& terms, const std::vector<int>& assoc) {
  std::vector<double> s1, s2;
  accumulate_loads(terms, assoc, s1, s2);
  double value = terms.constant;
  for (int j = 0; j < terms.n_es; ++j) value += s1[j] * s1[j] + s2[j] * s2[j];
  for (int i = 0; i < terms.n_md; ++i) {
    const int j = assoc[i];
    if (j != kLocal && terms.active[i]) value += terms.c[terms.at(i, j)];
  }
  return value;
}

DualReport duality_report(const ScoreTerms& terms, const PriceState& prices,
                          const std::vector<int>& assoc, const OffloadInstance& inst) {
  DualReport rep;
  rep.g = dual_value(terms, prices);
  rep.primal = direct_objective(inst, assoc).total;
  rep.gap = rep.primal - rep.g;

  std::vector<double> s1, s2;
  accumulate_loads(terms, assoc, s1, s2);
  rep.delta1.resize(terms.n_es);
  rep.delta2.resize(terms.n_es);
  rep.bound = 0.0;
  for (int j = 0; j < terms.n_es; ++j) {
    // Mismatch magnitudes: the sign must not enter, or an overshooting price
    // (mu/2 > S1) would subtract from the bound and push it below the true
    // gap.  With absolute deltas each term dominates (S1 - mu/2)^2, whose
    // sum over servers is exactly primal - g for a recovered association.
    const double d1 = std::abs(prices.mu[j] / 2.0 - s1[j]);
    const double d2 = std::abs(prices.nu[j] / 2.0 - s2[j]);
    rep.delta1[j] = d1;
    rep.delta2[j] = d2;
    const double sqrt_a = std::sqrt(ScoreTerms::slack_a(prices.mu[j]));
    const double sqrt_b = std::sqrt(ScoreTerms::slack_b(prices.nu[j]));
    rep.bound += d1 * d1 + d2 * d2 + 2.0 * sqrt_a * d1 + 2.0 * sqrt_b * d2;
  }
  return rep;
}

StepSizeRule recommended_step_size(double delta1, double delta2, int T) {
  if (!(delta1 > 0.0) || !(delta2 > 0.0))
    throw std::invalid_argument("recommended_step_size: bounds must be positive");
  if (T < 0) throw std::invalid_argument("recommended_step_size: T must be >= 0");
  StepSizeRule rule;
  rule.eta1 = rule.eta2 = std::sqrt(delta2 / ((T + 1.0) * delta1));
  rule.epsilon = std::sqrt(delta1 * delta2 / (T + 1.0));
  return rule;
}

DualRunResult run_dual(const OffloadInstance& inst, PriceState prices, int max_steps,
                       double stop_tol, std::vector<DualTraceRow>* trace, bool trace_primal) {
  const ScoreTerms terms = score_terms(inst);
  DualRunResult res;
  res.g_max = -std::numeric_limits<double>::infinity();

  std::vector<double> s1, s2;
  for (int t = 0; t < max_steps; ++t) {
    const std::vector<int> assoc = recover_assignment(terms, prices);
    const double g = dual_value(terms, prices);
    res.g_max = std::max(res.g_max, g);

    if (trace != nullptr) {
      DualTraceRow row;
      row.t = t;
      row.mu = prices.mu;
      row.nu = prices.nu;
      row.g = g;
      if (trace_primal) {
        row.primal = direct_objective(inst, assoc).total;
        row.gap = row.primal - g;
      }
      trace->push_back(std::move(row));
    }

    accumulate_loads(terms, assoc, s1, s2);
    double grad_sq = 0.0;
    for (int j = 0; j < terms.n_es; ++j) {
      const double g1 = s1[j] - prices.mu[j] / 2.0;
      const double g2 = s2[j] - prices.nu[j] / 2.0;
      grad_sq += g1 * g1 + g2 * g2;
    }
    res.max_grad_sq = std::max(res.max_grad_sq, grad_sq);

    double change = 0.0;
    for (int j = 0; j < terms.n_es; ++j) {
      change = std::max(change, std::abs(prices.eta1 * (s1[j] - prices.mu[j] / 2.0)));
      change = std::max(change, std::abs(prices.eta2 * (s2[j] - prices.nu[j] / 2.0)));
    }
    price_step(terms, prices, assoc);
    res.final_step_change = change;
    res.steps_run = t + 1;
    if (stop_tol > 0.0 && change < stop_tol) {
      res.stabilized = true;
      break;
    }
  }

  res.assignment = recover_assignment(terms, prices);
  res.g_final = dual_value(terms, prices);
  res.g_max = std::max(res.g_max, res.g_final);
  res.primal_final = direct_objective(inst, res.assignment).total;
  res.gap_final = res.primal_final - res.g_final;
  res.prices = std::move(prices);
  return res;
}

}  // namespace mecsim
