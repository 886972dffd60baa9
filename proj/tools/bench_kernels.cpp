// Micro-benchmark of the OpenMP kernels against their serial counterparts.
//
// Each kernel is timed with one worker thread and with all available ones,
// and its output is checked against the plain serial reference (bit-exact
// for assignments and the oracle; tight relative tolerance for the blocked
// sums).  Exit code 0 iff every check passes, so the --quick variant doubles
// as a smoke test.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "mecsim/baselines.hpp"
#include "mecsim/instance.hpp"
#include "mecsim/model.hpp"
#include "mecsim/parallel.hpp"
#include "mecsim/pricing.hpp"
#include "mecsim/pricing_ref.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double best_ms(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    const auto t1 = Clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

mecsim::Catalog bench_catalog() {
  mecsim::Catalog cat;
  mecsim::DeviceClass md;
  md.name = "md";
  md.cores = 4;
  md.flops_per_core = 1.0e9;
  md.compute_energy_coeff = 2.5e-10;
  md.tx_power = 0.2;
  md.comm_energy_coeff = 2.6;
  md.base_power = 0.5;
  mecsim::DeviceClass es;
  es.name = "es";
  es.cores = 32;
  es.flops_per_core = 2.5e11;
  es.compute_energy_coeff = 1.2e-11;
  es.reserved_memory_fraction = 0.1;
  cat.classes = {md, es};
  mecsim::TaskSpec job;
  job.name = "job";
  job.bits = 3.2e7;
  job.flops = 5.2e12;
  job.parallel_fraction = 0.95;
  job.memory_fraction = 0.05;
  job.kind = "vision";
  cat.tasks = {job};
  return cat;
}

mecsim::OffloadInstance make_instance(int n_md, int n_es, const mecsim::Catalog& cat) {
  mecsim::Scenario s;
  s.n_md = n_md;
  s.n_es = n_es;
  s.area_side = 2000.0;
  s.task_mix = {{"job", 1.0}};
  s.md_class = "md";
  s.es_class = "es";
  s.total_bandwidth = 1.0e8;
  s.alpha = 1.0;
  s.seed = 7;
  const mecsim::Network net = mecsim::generate_scenario(s, cat);
  return mecsim::OffloadInstance::from_network(net);
}

struct Row {
  std::string kernel, size;
  double serial_ms = 0.0, parallel_ms = 0.0;
  bool match = false;
};

void print_row(const Row& r) {
  std::printf("%-14s %-12s %10.2f %12.2f %8.2f   %s\n", r.kernel.c_str(), r.size.c_str(),
              r.serial_ms, r.parallel_ms,
              r.parallel_ms > 0 ? r.serial_ms / r.parallel_ms : 0.0,
              r.match ? "yes" : "NO");
}

bool terms_equal(const mecsim::ScoreTerms& a, const mecsim::ScoreTerms& b) {
  return a.sqrt_dcm == b.sqrt_dcm && a.sqrt_des == b.sqrt_des && a.c == b.c &&
         a.constant == b.constant && a.active == b.active;
}

}  // namespace

int main(int argc, char** argv) {
  bool quick = false;
  for (int i = 1; i < argc; ++i)
    if (std::strcmp(argv[i], "--quick") == 0) quick = true;

  const int hw = mecsim::max_threads();
  const int n_md = quick ? 2000 : 20000;
  const int n_es = quick ? 8 : 24;
  const int oracle_md = quick ? 7 : 10;
  const int reps = quick ? 3 : 7;

  const mecsim::Catalog cat = bench_catalog();
  const mecsim::OffloadInstance inst = make_instance(n_md, n_es, cat);
  const mecsim::PriceState prices = mecsim::PriceState::init_random(n_es, 7, 0.01, 0.01);
  const mecsim::OffloadInstance small = make_instance(oracle_md, 3, cat);

  std::printf("threads: 1 vs %d\n", hw);
  std::printf("%-14s %-12s %10s %12s %8s   %s\n", "kernel", "size", "serial_ms",
              "parallel_ms", "speedup", "match");

  std::vector<Row> rows;
  const std::string big = std::to_string(n_md) + "x" + std::to_string(n_es);

  {
    Row r{"score_terms", big};
    mecsim::ScoreTerms serial_out, parallel_out;
    mecsim::set_threads(1);
    r.serial_ms = best_ms(reps, [&] { serial_out = mecsim::score_terms(inst); });
    mecsim::set_threads(hw);
    r.parallel_ms = best_ms(reps, [&] { parallel_out = mecsim::score_terms(inst); });
    r.match = terms_equal(serial_out, parallel_out);
    print_row(r);
    rows.push_back(r);
  }

  const mecsim::ScoreTerms terms = mecsim::score_terms(inst);

  {
    Row r{"recover", big};
    std::vector<int> parallel_out;
    mecsim::set_threads(1);
    r.serial_ms = best_ms(reps, [&] { parallel_out = mecsim::recover_assignment(terms, prices); });
    mecsim::set_threads(hw);
    r.parallel_ms = best_ms(reps, [&] { parallel_out = mecsim::recover_assignment(terms, prices); });
    r.match = parallel_out == mecsim::ref::recover_assignment(terms, prices);
    print_row(r);
    rows.push_back(r);
  }

  {
    Row r{"dual_value", big};
    double out = 0.0;
    mecsim::set_threads(1);
    r.serial_ms = best_ms(reps, [&] { out = mecsim::dual_value(terms, prices); });
    mecsim::set_threads(hw);
    r.parallel_ms = best_ms(reps, [&] { out = mecsim::dual_value(terms, prices); });
    const double ref = mecsim::ref::dual_value(terms, prices);
    const double scale = std::max({std::abs(ref), std::abs(out), 1.0});
    r.match = std::abs(out - ref) <= 1e-12 * scale;
    print_row(r);
    rows.push_back(r);
  }

  {
    Row r{"oracle", std::to_string(oracle_md) + "x3"};
    mecsim::OracleResult out;
    mecsim::set_threads(1);
    r.serial_ms = best_ms(quick ? 1 : 3, [&] { out = mecsim::exhaustive_oracle(small); });
    mecsim::set_threads(hw);
    r.parallel_ms = best_ms(quick ? 1 : 3, [&] { out = mecsim::exhaustive_oracle(small); });
    const mecsim::OracleResult ref = mecsim::ref::exhaustive_oracle(small);
    r.match = out.assoc == ref.assoc && out.objective == ref.objective &&
              out.evaluated == ref.evaluated;
    print_row(r);
    rows.push_back(r);
  }

  mecsim::set_threads(hw);
  for (const Row& r : rows)
    if (!r.match) {
      std::printf("FAIL: %s disagrees with its reference\n", r.kernel.c_str());
      return 1;
    }
  std::printf("all kernels agree with their references\n");
  return 0;
}
