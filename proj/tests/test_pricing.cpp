#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mecsim/baselines.hpp"
#include "mecsim/objective.hpp"
#include "mecsim/pricing.hpp"
#include "mecsim/rng.hpp"
#include "test_instances.hpp"

using namespace mecsim;

namespace {

// One device, one server, round numbers throughout: bits 4e6 over a 1e7
// link, 8e8 flops at 75% parallel, device 4x1e9 flops/s with a 1e4 J
// battery at alpha 2, server 16x1e10 flops/s.
OffloadInstance single_pair_instance() {
  OffloadInstance inst;
  inst.n_md = 1;
  inst.n_es = 1;
  inst.alpha = 2.0;
  inst.reg_eps = 1e-12;
  DeviceClass md;
  md.name = "dev";
  md.cores = 4;
  md.flops_per_core = 1.0e9;
  md.compute_energy_coeff = 2.5e-10;
  md.comm_energy_coeff = 2.6e-7;
  md.battery_capacity = 1.0e4;
  DeviceClass es;
  es.name = "srv";
  es.cores = 16;
  es.flops_per_core = 1.0e10;
  inst.md_cls = {md};
  inst.es_cls = {es};
  inst.battery = {1.0e4};
  TaskSpec t;
  t.bits = 4.0e6;
  t.flops = 8.0e8;
  t.parallel_fraction = 0.75;
  inst.task = {t};
  inst.rate = {1.0e7};
  inst.snr = {10.0};
  inst.active = {1};
  return inst;
}

}  // namespace

TEST_CASE("score ingredients of a single pair match hand arithmetic") {
  const OffloadInstance inst = single_pair_instance();
  const ScoreTerms t = score_terms(inst);
  REQUIRE(t.n_md == 1);
  REQUIRE(t.n_es == 1);
  // sqrt(bits / rate) and sqrt(flops * rho / total server speed).
  CHECK(t.sqrt_dcm[0] == doctest::Approx(0.6324555320336759).epsilon(1e-14));
  CHECK(t.sqrt_des[0] == doctest::Approx(0.06123724356957945).epsilon(1e-14));
  // server serial 0.02 s - local 0.35 s + (alpha/battery) * gain(best link),
  // with gain = 0.2 - 2.6e-7 * 0.4 s of bit time.
  CHECK(t.c[0] == doctest::Approx(-0.3299600000208).epsilon(1e-12));
  CHECK(t.constant == doctest::Approx(0.3499600000208).epsilon(1e-12));
}

TEST_CASE("a dead link is priced out of reach") {
  OffloadInstance inst = single_pair_instance();
  inst.n_es = 2;
  inst.es_cls.push_back(inst.es_cls[0]);
  inst.rate = {1.0e7, 0.0};
  inst.snr = {10.0, 0.0};
  const ScoreTerms t = score_terms(inst);
  CHECK(t.sqrt_dcm[1] == 0.0);
  CHECK(std::isinf(t.c[1]));
  CHECK(t.c[1] > 0.0);
  // Recovery still lands on the live link.
  const auto assoc = recover_assignment(t, PriceState::zeros(2, 0.01, 0.01));
  CHECK(assoc[0] == 0);
}

TEST_CASE("price initialization is reproducible and in range") {
  const PriceState a = PriceState::init_random(4, 31337, 0.01, 0.02);
  const PriceState b = PriceState::init_random(4, 31337, 0.01, 0.02);
  REQUIRE(a.mu.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(a.mu[j] == b.mu[j]);
    CHECK(a.nu[j] == b.nu[j]);
    CHECK(a.mu[j] >= 0.0);
    CHECK(a.mu[j] < 1.0);
    CHECK(a.nu[j] >= 0.0);
    CHECK(a.nu[j] < 1.0);
  }
  CHECK(a.eta1 == 0.01);
  CHECK(a.eta2 == 0.02);
  const PriceState z = PriceState::zeros(3, 0.1, 0.1);
  for (double v : z.mu) CHECK(v == 0.0);
  for (double v : z.nu) CHECK(v == 0.0);
}

TEST_CASE("devices offload only on a strictly negative score") {
  // Same serial speed on both sides and no parallel part or battery term
  // makes the price-free score exactly zero: the device must stay local.
  OffloadInstance inst = single_pair_instance();
  inst.task[0].parallel_fraction = 0.0;
  inst.md_cls[0].cores = 1;
  inst.md_cls[0].flops_per_core = 1.0e10;
  inst.md_cls[0].battery_capacity = kUnlimitedBattery;
  inst.battery[0] = kUnlimitedBattery;
  const ScoreTerms t = score_terms(inst);
  CHECK(t.c[0] == 0.0);
  const PriceState zero = PriceState::zeros(1, 0.01, 0.01);
  CHECK(recover_assignment(t, zero)[0] == kLocal);
  CHECK(pricing_choice(inst, zero, 0) == kLocal);

  // A faster server tips the balance below zero.
  inst.es_cls[0].flops_per_core = 2.0e10;
  const ScoreTerms t2 = score_terms(inst);
  CHECK(t2.c[0] < 0.0);
  CHECK(recover_assignment(t2, zero)[0] == 0);
  CHECK(pricing_choice(inst, zero, 0) == 0);
}

TEST_CASE("equal scores resolve to the lowest server index") {
  OffloadInstance inst = single_pair_instance();
  inst.n_es = 2;
  inst.es_cls.push_back(inst.es_cls[0]);
  inst.rate = {1.0e7, 1.0e7};
  inst.snr = {10.0, 10.0};
  const ScoreTerms t = score_terms(inst);
  const PriceState zero = PriceState::zeros(2, 0.01, 0.01);
  CHECK(recover_assignment(t, zero)[0] == 0);
  CHECK(pricing_choice(inst, zero, 0) == 0);
}

TEST_CASE("single-device choice agrees with batch recovery") {
  Rng r(41);
  for (int trial = 0; trial < 10; ++trial) {
    const OffloadInstance inst = testinst::random_instance(r, 7, 3);
    const ScoreTerms t = score_terms(inst);
    PriceState p = PriceState::zeros(3, 0.01, 0.01);
    for (double& v : p.mu) v = r.uniform(0.0, 2.0);
    for (double& v : p.nu) v = r.uniform(0.0, 2.0);
    const auto assoc = recover_assignment(t, p);
    for (int i = 0; i < inst.n_md; ++i) CHECK(pricing_choice(inst, p, i) == assoc[i]);
  }
}

TEST_CASE("inactive devices never offload") {
  Rng r(42);
  OffloadInstance inst = testinst::random_instance(r, 4, 2);
  inst.active[2] = 0;
  const ScoreTerms t = score_terms(inst);
  PriceState p = PriceState::zeros(2, 0.01, 0.01);
  CHECK(recover_assignment(t, p)[2] == kLocal);
  CHECK(pricing_choice(inst, p, 2) == kLocal);
}

TEST_CASE("one ascent step follows the load mismatch") {
  ScoreTerms t;
  t.n_md = 1;
  t.n_es = 1;
  t.sqrt_dcm = {0.9};
  t.sqrt_des = {0.3};
  t.c = {-1.0};
  t.active = {1};
  PriceState p = PriceState::zeros(1, 0.1, 0.1);
  p.mu = {0.4};
  p.nu = {0.2};
  price_step(t, p, {0});
  CHECK(p.mu[0] == doctest::Approx(0.4 + 0.1 * (0.9 - 0.2)).epsilon(1e-14));
  CHECK(p.nu[0] == doctest::Approx(0.2 + 0.1 * (0.3 - 0.1)).epsilon(1e-14));
  CHECK(p.step == 1);

  // Half the advertised load is the fixed point of the update.
  PriceState q = PriceState::zeros(1, 0.1, 0.1);
  q.mu = {1.8};
  q.nu = {0.6};
  price_step(t, q, {0});
  CHECK(q.mu[0] == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(q.nu[0] == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("the dual value never exceeds any feasible objective") {
  Rng r(43);
  for (int trial = 0; trial < 6; ++trial) {
    const OffloadInstance inst = testinst::random_instance(r, 4, 2);
    const ScoreTerms t = score_terms(inst);
    for (int probe = 0; probe < 20; ++probe) {
      PriceState p = PriceState::zeros(2, 0.01, 0.01);
      for (double& v : p.mu) v = r.uniform(0.0, 3.0);
      for (double& v : p.nu) v = r.uniform(0.0, 3.0);
      const double g = dual_value(t, p);
      std::vector<int> assoc(inst.n_md);
      for (int i = 0; i < inst.n_md; ++i)
        assoc[i] = static_cast<int>(r.uniform_int(3)) - 1;  // -1, 0, 1
      CHECK(g <= surrogate_objective(t, assoc) + 1e-9);
      CHECK(g <= direct_objective(inst, assoc).total + 1e-9);
    }
  }
}

TEST_CASE("the ascent closes the gap on a small instance") {
  Rng r(44);
  const OffloadInstance inst = testinst::random_instance(r, 6, 2);
  PriceState p0 = PriceState::init_random(2, 4242, 0.01, 0.01);
  std::vector<DualTraceRow> trace;
  const DualRunResult res = run_dual(inst, p0, 2000, 0.0, &trace);

  CHECK(res.steps_run == 2000);
  CHECK(trace.size() == 2000);
  CHECK(res.gap_final >= -1e-9);            // weak duality at the last iterate
  CHECK(res.g_max >= res.g_final - 1e-12);  // the running max dominates
  const ScoreTerms t = score_terms(inst);
  CHECK(res.assignment == recover_assignment(t, res.prices));
  CHECK(res.primal_final ==
        doctest::Approx(direct_objective(inst, res.assignment).total).epsilon(1e-12));

  // The recovered association is near the exhaustive optimum, certified by
  // the a-posteriori load-mismatch bound.
  const OracleResult oracle = exhaustive_oracle(inst);
  const DualReport rep = duality_report(t, res.prices, res.assignment, inst);
  CHECK(res.primal_final - oracle.objective <= rep.bound + 1e-6);
  CHECK(rep.gap == doctest::Approx(rep.primal - rep.g).epsilon(1e-12));
  CHECK(rep.bound >= rep.gap - 1e-9);  // it dominates the exact gap
  for (double d : rep.delta1) CHECK(d >= 0.0);
}

TEST_CASE("a stop tolerance halts a stabilized run early") {
  Rng r(45);
  const OffloadInstance inst = testinst::random_instance(r, 5, 2);
  PriceState p0 = PriceState::init_random(2, 777, 0.05, 0.05);
  const DualRunResult res = run_dual(inst, p0, 100000, 1e-10);
  CHECK(res.stabilized);
  CHECK(res.steps_run < 100000);
  CHECK(res.final_step_change < 1e-10);
}

TEST_CASE("the horizon step-size rule matches its formula") {
  const StepSizeRule rule = recommended_step_size(2.5, 0.9, 999);
  CHECK(rule.eta1 == doctest::Approx(0.018973665961010275).epsilon(1e-14));
  CHECK(rule.eta2 == rule.eta1);
  CHECK(rule.epsilon == doctest::Approx(0.04743416490252569).epsilon(1e-14));
  CHECK_THROWS_AS(recommended_step_size(0.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(recommended_step_size(1.0, 1.0, -1), std::invalid_argument);
}
