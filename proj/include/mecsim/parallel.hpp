#ifndef MECSIM_PARALLEL_HPP
#define MECSIM_PARALLEL_HPP

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mecsim {

// Floating-point sum over term(0..n-1) that is bit-identical for every
// thread count: terms are accumulated into fixed 1024-element blocks in
// index order, the blocks are summed in index order, and only the
// per-block work is parallelized.  The result therefore depends on the
// block size (a compile-time constant) but never on the schedule.
template <class F>
double blocked_sum(std::size_t n, F&& term) {
  constexpr std::size_t kBlock = 1024;
  const std::size_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(n_blocks, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t b = 0; b < static_cast<std::ptrdiff_t>(n_blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    double acc = 0.0;
    for (std::size_t k = lo; k < hi; ++k) acc += term(k);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace mecsim

#endif  // MECSIM_PARALLEL_HPP
