#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "isocone/preorder.hpp"
#include "isocone/rng.hpp"
#include "isocone/solver.hpp"

namespace isocone::testutil {

// Random pre-order on up to max_s elements: a sprinkling of forward edges,
// occasionally a 2-cycle so the SCC path gets exercised.
inline PreOrder random_preorder(RngStream& rng, int max_s = 8) {
  int s = 1 + static_cast<int>(rng.uniform() * max_s);
  if (s > max_s) s = max_s;
  std::vector<std::string> labels;
  labels.reserve(s);
  for (int i = 0; i < s; ++i) labels.push_back("e" + std::to_string(i));
  std::vector<std::pair<int, int>> edges;
  double density = 0.15 + 0.5 * rng.uniform();
  for (int i = 0; i < s; ++i) {
    for (int j = i + 1; j < s; ++j) {
      if (rng.uniform() < density) edges.emplace_back(i, j);
    }
  }
  if (s >= 2 && rng.uniform() < 0.2) {
    int a = static_cast<int>(rng.uniform() * s) % s;
    int b = static_cast<int>(rng.uniform() * s) % s;
    if (a != b) {
      edges.emplace_back(a, b);
      edges.emplace_back(b, a);
    }
  }
  return PreOrder(std::move(labels), std::move(edges));
}

inline std::vector<double> random_values(RngStream& rng, int s, double lo = -2.0,
                                         double hi = 2.0) {
  std::vector<double> v(s);
  for (double& x : v) x = lo + (hi - lo) * rng.uniform();
  return v;
}

inline std::vector<double> random_weights(RngStream& rng, int s, double lo = 0.2,
                                          double hi = 5.0) {
  return random_values(rng, s, lo, hi);
}

// Random isotonic vector: project a random vector, then quantize to exact
// multiples of 1/8 (rounding is monotone, so isotonicity survives and level
// values separate cleanly).
inline std::vector<double> random_isotonic(const PreOrder& p, RngStream& rng) {
  WeightedFunction f;
  f.values = random_values(rng, p.size());
  f.weights.assign(p.size(), 1.0);
  std::vector<double> g0 = isotonic_regression(p, f).fitted;
  for (double& x : g0) x = std::round(x * 8.0) / 8.0;
  return g0;
}

inline double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace isocone::testutil
