#include "isocone/limit_law.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "isocone/estimators.hpp"
#include "isocone/parallel.hpp"
#include "isocone/rng.hpp"

namespace isocone {

namespace {

std::vector<double> effective_rates(const std::vector<double>& rates, int s) {
  if (rates.empty()) return std::vector<double>(s, 0.5);
  if (static_cast<int>(rates.size()) != s) {
    throw std::invalid_argument("rates length does not match ground set size");
  }
  return rates;
}

std::vector<int> even_design(int n, int s) {
  std::vector<int> counts(s, n / s);
  for (int i = 0; i < n % s; ++i) ++counts[i];
  return counts;
}

}  // namespace

std::vector<std::vector<double>> covariance_matrix(const LimitSpec& spec, int s) {
  std::vector<std::vector<double>> c(s, std::vector<double>(s, 0.0));
  switch (spec.kind) {
    case LimitSpec::CovKind::RegressionDiagonal: {
      if (static_cast<int>(spec.design_weights.size()) != s) {
        throw std::invalid_argument("design_weights length does not match ground set size");
      }
      for (int i = 0; i < s; ++i) {
        if (!(spec.design_weights[i] > 0.0)) {
          throw std::invalid_argument("design weights must be positive");
        }
        // Variance of a cell mean over an occupancy-fraction-w cell.
        c[i][i] = spec.sigma * spec.sigma / spec.design_weights[i];
      }
      break;
    }
    case LimitSpec::CovKind::Multinomial: {
      if (static_cast<int>(spec.pmf.size()) != s) {
        throw std::invalid_argument("pmf length does not match ground set size");
      }
      for (int i = 0; i < s; ++i) {
        for (int j = 0; j < s; ++j) {
          c[i][j] = (i == j ? spec.pmf[i] : 0.0) - spec.pmf[i] * spec.pmf[j];
        }
      }
      break;
    }
    case LimitSpec::CovKind::CustomDense: {
      if (static_cast<int>(spec.custom.size()) != s) {
        throw std::invalid_argument("custom covariance size mismatch");
      }
      c = spec.custom;
      break;
    }
  }
  return c;
}

std::vector<std::vector<double>> pivoted_cholesky(const std::vector<std::vector<double>>& c) {
  const int s = static_cast<int>(c.size());
  std::vector<std::vector<double>> a = c;
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 0);

  double max_diag = 0.0;
  for (int i = 0; i < s; ++i) max_diag = std::max(max_diag, std::abs(a[i][i]));
  const double floor = 1e-12 * std::max(1.0, max_diag);

  // Lower-triangular factor in permuted space.
  std::vector<std::vector<double>> lp(s, std::vector<double>(s, 0.0));
  int rank = 0;
  for (int k = 0; k < s; ++k) {
    int piv = k;
    for (int i = k + 1; i < s; ++i) {
      if (a[perm[i]][perm[i]] > a[perm[piv]][perm[piv]]) piv = i;
    }
    std::swap(perm[k], perm[piv]);
    std::swap(lp[k], lp[piv]);
    double d = a[perm[k]][perm[k]];
    if (d < -floor) throw std::invalid_argument("covariance not positive semidefinite");
    if (d <= floor) break;
    double root = std::sqrt(d);
    lp[k][k] = root;
    for (int i = k + 1; i < s; ++i) {
      double v = a[perm[i]][perm[k]];
      for (int j = 0; j < k; ++j) v -= lp[i][j] * lp[k][j];
      lp[i][k] = v / root;
      a[perm[i]][perm[i]] -= lp[i][k] * lp[i][k];
    }
    ++rank;
  }

  std::vector<std::vector<double>> cols(rank, std::vector<double>(s, 0.0));
  for (int k = 0; k < rank; ++k) {
    for (int i = 0; i < s; ++i) cols[k][perm[i]] = lp[i][k];
  }
  return cols;
}

std::vector<std::vector<double>> sample_limit(const LimitSpec& spec, const PreOrder& p,
                                              const LevelPartition& lp,
                                              const std::vector<double>& weights,
                                              int replicates, std::uint64_t seed) {
  const int s = p.size();
  auto cols = pivoted_cholesky(covariance_matrix(spec, s));
  const int rank = static_cast<int>(cols.size());

  std::vector<std::vector<double>> draws(replicates);
  parallel_for(replicates, [&](int r) {
    RngStream rng = replicate_stream(seed, static_cast<std::uint64_t>(r));
    std::vector<double> lambda(s, 0.0);
    for (int k = 0; k < rank; ++k) {
      double z = rng.normal();
      for (int i = 0; i < s; ++i) lambda[i] += cols[k][i] * z;
    }
    draws[r] = phi(p, lp, lambda, weights, spec.antitonic);
  });
  return draws;
}

std::vector<std::vector<double>> finite_sample_law(const FiniteSampleScenario& scenario,
                                                   const PreOrder& p, int n, int replicates,
                                                   std::uint64_t seed) {
  const int s = p.size();
  if (static_cast<int>(scenario.g0.size()) != s) {
    throw std::invalid_argument("g0 length does not match ground set size");
  }
  std::vector<double> rates = effective_rates(scenario.rates, s);
  std::vector<double> scale(s);
  for (int i = 0; i < s; ++i) scale[i] = std::pow(static_cast<double>(n), rates[i]);

  std::vector<int> design = scenario.design_counts;
  if (scenario.kind == FiniteSampleScenario::Kind::Regression) {
    if (design.empty()) design = even_design(n, s);
    if (static_cast<int>(design.size()) != s ||
        std::accumulate(design.begin(), design.end(), 0) != n) {
      throw std::invalid_argument("design counts must cover the ground set and sum to n");
    }
    for (int k : design) {
      if (k < 1) throw std::invalid_argument("unobserved design cell");
    }
  }

  std::vector<std::vector<double>> draws(replicates);
  parallel_for(replicates, [&](int r) {
    RngStream rng = replicate_stream(seed, static_cast<std::uint64_t>(r));
    std::vector<double> est(s);
    if (scenario.kind == FiniteSampleScenario::Kind::Pmf) {
      Sample sample = sample_pmf_draws(scenario.g0, n, rng);
      if (scenario.isotonize) {
        est = empirical_pmf(p, sample).isotonized.fitted;
      } else {
        std::vector<double> counts(s, 0.0);
        for (int i : sample.draws) counts[i] += 1.0;
        for (int i = 0; i < s; ++i) est[i] = counts[i] / n;
      }
    } else {
      Sample sample;
      sample.kind = Sample::Kind::RegressionPairs;
      sample.pairs.reserve(n);
      for (int i = 0; i < s; ++i) {
        for (int k = 0; k < design[i]; ++k) {
          sample.pairs.emplace_back(i, scenario.g0[i] + scenario.sigma * rng.normal());
        }
      }
      EstimatorOutput out = regression_means(p, sample);
      est = scenario.isotonize ? out.isotonized.fitted : out.basic.values;
    }
    std::vector<double> row(s);
    for (int i = 0; i < s; ++i) row[i] = scale[i] * (est[i] - scenario.g0[i]);
    draws[r] = std::move(row);
  });
  return draws;
}

TruncatedPmf truncate_infinite_pmf(const std::function<double(int, int)>& mass,
                                   double mass_tol) {
  if (!(mass_tol > 0.0) || mass_tol >= 1.0) {
    throw std::invalid_argument("mass_tol must be in (0, 1)");
  }
  constexpr int kMaxDim = 4096;
  int k1 = 1, k2 = 1;
  double retained = mass(1, 1);
  while (retained < 1.0 - mass_tol) {
    double row_gain = 0.0, col_gain = 0.0;
    for (int j = 1; j <= k2; ++j) row_gain += mass(k1 + 1, j);
    for (int i = 1; i <= k1; ++i) col_gain += mass(i, k2 + 1);
    // Growing one edge also exposes the corner cell on the next step; taking
    // the larger gain greedily yields the smallest rectangle for recipes that
    // decay along both axes.
    if (row_gain >= col_gain) {
      ++k1;
      retained += row_gain;
    } else {
      ++k2;
      retained += col_gain;
    }
    if (k1 > kMaxDim || k2 > kMaxDim) {
      throw std::invalid_argument("pmf recipe not summable at the requested tolerance");
    }
  }
  TruncatedPmf out;
  out.dims = {k1, k2};
  out.masses.resize(static_cast<size_t>(k1) * k2);
  for (int i = 1; i <= k1; ++i) {
    for (int j = 1; j <= k2; ++j) {
      out.masses[static_cast<size_t>(i - 1) * k2 + (j - 1)] = mass(i, j);
    }
  }
  out.retained_mass = retained;
  return out;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("empty sample in KS test");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

MCReport compare_draws(const std::vector<std::vector<double>>& finite_draws,
                       const std::vector<std::vector<double>>& limit_draws) {
  if (finite_draws.empty() || limit_draws.empty()) {
    throw std::invalid_argument("empty draw matrix");
  }
  const int s = static_cast<int>(finite_draws.front().size());
  MCReport report;
  report.replicates = static_cast<int>(finite_draws.size());

  auto functional = [&](const std::string& name, auto&& eval) {
    MCReport::Functional f;
    f.name = name;
    f.finite_samples.reserve(finite_draws.size());
    f.limit_samples.reserve(limit_draws.size());
    for (const auto& row : finite_draws) f.finite_samples.push_back(eval(row));
    for (const auto& row : limit_draws) f.limit_samples.push_back(eval(row));
    f.ks = ks_two_sample(f.finite_samples, f.limit_samples);
    report.functionals.push_back(std::move(f));
  };

  for (int i = 0; i < s; ++i) {
    functional("coord_" + std::to_string(i),
               [i](const std::vector<double>& row) { return row[i]; });
  }
  functional("l2_norm", [](const std::vector<double>& row) {
    double acc = 0.0;
    for (double v : row) acc += v * v;
    return std::sqrt(acc);
  });
  return report;
}

}  // namespace isocone
