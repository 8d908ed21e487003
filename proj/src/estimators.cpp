#include "isocone/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isocone {

EstimatorOutput empirical_pmf(const PreOrder& p, const Sample& sample) {
  if (sample.kind != Sample::Kind::PmfDraws) {
    throw std::invalid_argument("empirical_pmf expects pmf draws");
  }
  if (sample.draws.empty()) throw std::invalid_argument("empty sample");
  const int s = p.size();
  std::vector<double> counts(s, 0.0);
  for (int i : sample.draws) {
    if (i < 0 || i >= s) throw std::invalid_argument("draw index out of range");
    counts[i] += 1.0;
  }
  const double n = static_cast<double>(sample.draws.size());

  EstimatorOutput out;
  out.basic.values.resize(s);
  out.basic.weights.assign(s, 1.0);
  for (int i = 0; i < s; ++i) out.basic.values[i] = counts[i] / n;
  out.isotonized = antitonic_regression(p, out.basic);
  return out;
}

EstimatorOutput regression_means(const PreOrder& p, const Sample& sample) {
  if (sample.kind != Sample::Kind::RegressionPairs) {
    throw std::invalid_argument("regression_means expects regression pairs");
  }
  if (sample.pairs.empty()) throw std::invalid_argument("empty sample");
  const int s = p.size();
  std::vector<double> counts(s, 0.0), sums(s, 0.0);
  for (const auto& [i, y] : sample.pairs) {
    if (i < 0 || i >= s) throw std::invalid_argument("design index out of range");
    counts[i] += 1.0;
    sums[i] += y;
  }
  const double n = static_cast<double>(sample.pairs.size());

  EstimatorOutput out;
  out.basic.values.resize(s);
  out.basic.weights.resize(s);
  out.empirical_weights.resize(s);
  for (int i = 0; i < s; ++i) {
    if (counts[i] == 0.0) {
      throw std::invalid_argument("unobserved cell: " + p.elements()[i]);
    }
    out.basic.values[i] = sums[i] / counts[i];
    out.basic.weights[i] = counts[i] / n;
    out.empirical_weights[i] = counts[i] / n;
  }
  out.isotonized = isotonic_regression(p, out.basic);
  return out;
}

std::vector<double> mixture_uniform_pmf(const std::vector<double>& q) {
  const int r = static_cast<int>(q.size());
  if (r < 1) throw std::invalid_argument("mixture weights must be nonempty");
  double total = 0.0;
  for (double v : q) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw std::invalid_argument("mixture weights must be nonnegative");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
  std::vector<double> p(static_cast<size_t>(r) * r, 0.0);
  for (int i = 1; i <= r; ++i) {
    for (int j = 1; j <= r; ++j) {
      double mass = 0.0;
      for (int t = std::max(i, j); t <= r; ++t) {
        mass += q[t - 1] / (static_cast<double>(t) * t);
      }
      p[static_cast<size_t>(i - 1) * r + (j - 1)] = mass;
    }
  }
  return p;
}

Sample sample_pmf_draws(const std::vector<double>& pmf, int n, RngStream& rng) {
  if (n < 1) throw std::invalid_argument("sample size must be positive");
  std::vector<double> cdf(pmf.size());
  double acc = 0.0;
  for (size_t i = 0; i < pmf.size(); ++i) {
    acc += pmf[i];
    cdf[i] = acc;
  }
  Sample s;
  s.kind = Sample::Kind::PmfDraws;
  s.draws.resize(n);
  for (int k = 0; k < n; ++k) {
    double u = rng.uniform() * acc;
    s.draws[k] = static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    if (s.draws[k] >= static_cast<int>(pmf.size())) s.draws[k] = static_cast<int>(pmf.size()) - 1;
  }
  return s;
}

}  // namespace isocone
