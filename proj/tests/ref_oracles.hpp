#ifndef MECSIM_TESTS_REF_ORACLES_HPP
#define MECSIM_TESTS_REF_ORACLES_HPP

// Independent reference solvers used only by the tests.  Each attacks the
// same problem as a production component with a *different* algorithm, so
// agreement between the two is evidence of correctness rather than a copy
// of the implementation agreeing with itself.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace testref {

// Euclidean projection of v onto the probability simplex
// {x : x_k >= 0, sum x = 1} via the sorted-threshold rule.
inline std::vector<double> project_simplex(std::vector<double> v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cum = 0.0, theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cum += u[k];
    const double t = (cum - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  for (double& x : v) x = std::max(0.0, x - theta);
  return v;
}

// Minimizes f(x) = sum_k w_k / x_k over the probability simplex by projected
// gradient descent with Armijo backtracking.  Members with w_k = 0 cost
// nothing at any share, so they are pinned to zero and the active members
// split the whole budget (matching the production tie rule).  Returns the
// share vector; callers usually compare objective values.
inline std::vector<double> simplex_inverse_argmin(const std::vector<double>& w,
                                                  int iters = 2000) {
  const std::size_t n = w.size();
  std::vector<std::size_t> act;
  for (std::size_t k = 0; k < n; ++k)
    if (w[k] > 0.0) act.push_back(k);
  std::vector<double> out(n, 0.0);
  if (act.empty()) {
    // No member wants the resource; mirror the uniform tie split.
    for (double& x : out) x = n > 0 ? 1.0 / static_cast<double>(n) : 0.0;
    return out;
  }
  const std::size_t m = act.size();
  std::vector<double> x(m, 1.0 / static_cast<double>(m));
  auto value = [&](const std::vector<double>& p) {
    double f = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      if (!(p[k] > 0.0)) return std::numeric_limits<double>::infinity();
      f += w[act[k]] / p[k];
    }
    return f;
  };
  double f = value(x);
  double step = 1.0;
  std::vector<double> grad(m), trial(m);
  for (int it = 0; it < iters; ++it) {
    for (std::size_t k = 0; k < m; ++k) grad[k] = -w[act[k]] / (x[k] * x[k]);
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      for (std::size_t k = 0; k < m; ++k) trial[k] = x[k] - step * grad[k];
      trial = project_simplex(trial);
      const double ft = value(trial);
      if (ft < f) {
        x = trial;
        f = ft;
        step *= 1.3;  // cautiously regrow after a success
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved && step < 1e-18) break;
  }
  for (std::size_t k = 0; k < m; ++k) out[act[k]] = x[k];
  return out;
}

// Objective of a share vector for the bandwidth subproblem: total transfer
// time sum bits / (rate * y).
inline double bandwidth_objective(const std::vector<std::pair<double, double>>& served,
                                  const std::vector<double>& y) {
  double f = 0.0;
  for (std::size_t k = 0; k < served.size(); ++k) {
    const auto& [bits, rate] = served[k];
    if (bits <= 0.0) continue;
    f += bits / (rate * std::max(y[k], 1e-300));
  }
  return f;
}

// Objective of a share vector for the core subproblem: total parallel-phase
// time sum (flops * rho) / (speed * z); the server speed scales every term
// equally, so it cancels out of comparisons and is fixed to 1 here.
inline double cores_objective(const std::vector<std::pair<double, double>>& served,
                              const std::vector<double>& z) {
  double f = 0.0;
  for (std::size_t k = 0; k < served.size(); ++k) {
    const auto& [flops, rho] = served[k];
    const double w = flops * rho;
    if (w <= 0.0) continue;
    f += w / std::max(z[k], 1e-300);
  }
  return f;
}

}  // namespace testref

#endif  // MECSIM_TESTS_REF_ORACLES_HPP
