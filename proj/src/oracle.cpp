#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mecsim/baselines.hpp"
#include "mecsim/objective.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mecsim {

namespace {

// Decodes enumeration index -> association: digit i of `code` in base
// (n_es + 1), where digit 0 is the local option and digit j+1 is server j.
void decode(std::uint64_t code, int n_md, int n_es, std::vector<int>& assoc) {
  const std::uint64_t base = static_cast<std::uint64_t>(n_es) + 1;
  for (int i = 0; i < n_md; ++i) {
    const std::uint64_t digit = code % base;
    assoc[i] = digit == 0 ? kLocal : static_cast<int>(digit - 1);
    code /= base;
  }
}

struct Best {
  double objective;
  std::uint64_t code;
};

// Scans [lo, hi) and returns the best candidate; ties resolve to the lowest
// enumeration index, so any partition of the range merges deterministically.
Best scan_range(const OffloadInstance& inst, std::uint64_t lo, std::uint64_t hi) {
  Best best{std::numeric_limits<double>::infinity(), lo};
  std::vector<int> assoc(inst.n_md, kLocal);
  for (std::uint64_t code = lo; code < hi; ++code) {
    decode(code, inst.n_md, inst.n_es, assoc);
    const double obj = direct_objective(inst, assoc).total;
    if (obj < best.objective || (obj == best.objective && code < best.code)) {
      best.objective = obj;
      best.code = code;
    }
  }
  return best;
}

OracleResult finish(const OffloadInstance& inst, const Best& best, std::uint64_t total) {
  OracleResult res;
  res.assoc.assign(inst.n_md, kLocal);
  decode(best.code, inst.n_md, inst.n_es, res.assoc);
  res.objective = best.objective;
  res.evaluated = total;
  return res;
}

std::uint64_t guarded_total(const OffloadInstance& inst) {
  const auto total = oracle_search_space(inst.n_md, inst.n_es);
  if (!total) {
    throw std::invalid_argument(
        "exhaustive_oracle: search space (n_es+1)^n_md exceeds the guard of " +
        std::to_string(kOracleGuard) + " associations; shrink the instance");
  }
  return *total;
}

}  // namespace

namespace ref {
OracleResult exhaustive_oracle(const OffloadInstance& inst) {
  const std::uint64_t total = guarded_total(inst);
  return finish(inst, scan_range(inst, 0, total), total);
}
}  // namespace ref

OracleResult exhaustive_oracle(const OffloadInstance& inst) {
  const std::uint64_t total = guarded_total(inst);

#ifdef _OPENMP
  // Shard the range into fixed chunks; each chunk's winner is independent of
  // the schedule and the in-order merge keeps the lowest-index tie rule.
  constexpr std::uint64_t kChunk = 4096;
  const std::uint64_t n_chunks = (total + kChunk - 1) / kChunk;
  std::vector<Best> winners(n_chunks);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(n_chunks); ++c) {
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * kChunk;
    const std::uint64_t hi = lo + kChunk < total ? lo + kChunk : total;
    winners[static_cast<std::size_t>(c)] = scan_range(inst, lo, hi);
  }
  Best best = winners[0];
  for (std::size_t c = 1; c < winners.size(); ++c) {
    const Best& w = winners[c];
    if (w.objective < best.objective ||
        (w.objective == best.objective && w.code < best.code)) {
      best = w;
    }
  }
  return finish(inst, best, total);
#else
  return finish(inst, scan_range(inst, 0, total), total);
#endif
}

}  // namespace mecsim
