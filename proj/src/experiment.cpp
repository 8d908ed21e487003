#include "isocone/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "isocone/estimators.hpp"
#include "isocone/parallel.hpp"
#include "isocone/rng.hpp"

namespace isocone {

namespace {

std::vector<double> default_q() { return {0.1, 0.2, 0.3, 0.2, 0.2}; }

// Level sets of an antitonic pmf are the level sets of its negation, which is
// what the partition machinery expects as reference.
LevelPartition antitonic_level_partition(const PreOrder& p, const std::vector<double>& pmf) {
  std::vector<double> neg(pmf.size());
  for (size_t i = 0; i < pmf.size(); ++i) neg[i] = -pmf[i];
  LevelPartition lp = level_partition(p, neg);
  for (auto& s : lp.sets) s.value = -s.value;
  return lp;
}

}  // namespace

Distances distances(const std::vector<double>& p_hat, const std::vector<double>& p_true) {
  if (p_hat.size() != p_true.size()) throw std::invalid_argument("length mismatch");
  Distances d;
  double l2sq = 0.0, hsq = 0.0;
  for (size_t i = 0; i < p_hat.size(); ++i) {
    if (p_hat[i] < 0.0) throw std::invalid_argument("negative entry in estimate");
    double diff = p_hat[i] - p_true[i];
    d.l1 += std::abs(diff);
    l2sq += diff * diff;
    double sd = std::sqrt(p_hat[i]) - std::sqrt(p_true[i]);
    hsq += sd * sd;
  }
  d.l2 = std::sqrt(l2sq);
  d.hellinger = std::sqrt(hsq);
  return d;
}

QuartileSummary quartiles(std::vector<double> v) {
  if (v.empty()) throw std::invalid_argument("empty sample");
  std::sort(v.begin(), v.end());
  auto at = [&](double q) {
    double pos = q * (static_cast<double>(v.size()) - 1.0);
    size_t lo = static_cast<size_t>(pos);
    size_t hi = std::min(lo + 1, v.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return v[lo] * (1.0 - frac) + v[hi] * frac;
  };
  return {v.front(), at(0.25), at(0.5), at(0.75), v.back()};
}

std::vector<DistanceSummary> run_figure1(const ExperimentConfig& cfg) {
  std::vector<double> q = cfg.q.empty() ? default_q() : cfg.q;
  if (cfg.dims.size() != 2 || cfg.dims[0] != cfg.dims[1] ||
      cfg.dims[0] != static_cast<int>(q.size())) {
    throw std::invalid_argument("figure1 needs a square grid matching the mixture size");
  }
  if (cfg.replicates < 1) throw std::invalid_argument("replicates must be positive");
  PreOrder grid = grid_preorder(cfg.dims);
  std::vector<double> p_true = mixture_uniform_pmf(q);

  std::vector<DistanceSummary> out;
  for (size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    if (n < 1) throw std::invalid_argument("sample size must be positive");
    DistanceSummary sum;
    sum.n = n;
    sum.l1_basic.resize(cfg.replicates);
    sum.l2_basic.resize(cfg.replicates);
    sum.hellinger_basic.resize(cfg.replicates);
    sum.l1_isotonized.resize(cfg.replicates);
    sum.l2_isotonized.resize(cfg.replicates);
    sum.hellinger_isotonized.resize(cfg.replicates);

    parallel_for(cfg.replicates, [&](int r) {
      RngStream rng = replicate_stream(
          cfg.seed, static_cast<std::uint64_t>(ni) * cfg.replicates + r);
      Sample sample = sample_pmf_draws(p_true, n, rng);
      EstimatorOutput est = empirical_pmf(grid, sample);
      Distances db = distances(est.basic.values, p_true);
      Distances di = distances(est.isotonized.fitted, p_true);
      sum.l1_basic[r] = db.l1;
      sum.l2_basic[r] = db.l2;
      sum.hellinger_basic[r] = db.hellinger;
      sum.l1_isotonized[r] = di.l1;
      sum.l2_isotonized[r] = di.l2;
      sum.hellinger_isotonized[r] = di.hellinger;
    });

    sum.quartiles["l1_basic"] = quartiles(sum.l1_basic);
    sum.quartiles["l2_basic"] = quartiles(sum.l2_basic);
    sum.quartiles["hellinger_basic"] = quartiles(sum.hellinger_basic);
    sum.quartiles["l1_isotonized"] = quartiles(sum.l1_isotonized);
    sum.quartiles["l2_isotonized"] = quartiles(sum.l2_isotonized);
    sum.quartiles["hellinger_isotonized"] = quartiles(sum.hellinger_isotonized);
    out.push_back(std::move(sum));
  }
  return out;
}

MCReport run_limit_check(const ExperimentConfig& cfg) {
  if (cfg.n_list.empty()) throw std::invalid_argument("limit check needs a sample size");
  const int n = cfg.n_list.front();
  PreOrder p = grid_preorder(cfg.dims);
  const int s = p.size();
  if (static_cast<int>(cfg.g0.size()) != s) {
    throw std::invalid_argument("g0 length does not match the grid");
  }

  std::vector<std::vector<double>> finite, limit;
  if (cfg.scenario == "limit-check-pmf") {
    LevelPartition lp = antitonic_level_partition(p, cfg.g0);
    std::vector<double> unit(s, 1.0);

    LimitSpec spec;
    spec.kind = LimitSpec::CovKind::Multinomial;
    spec.pmf = cfg.g0;
    spec.antitonic = true;
    limit = sample_limit(spec, p, lp, unit, cfg.replicates, cfg.seed + 1);

    FiniteSampleScenario fin;
    fin.kind = FiniteSampleScenario::Kind::Pmf;
    fin.g0 = cfg.g0;
    finite = finite_sample_law(fin, p, n, cfg.replicates, cfg.seed);
  } else if (cfg.scenario == "limit-check-reg") {
    LevelPartition lp = level_partition(p, cfg.g0);
    std::vector<double> w(s, 1.0 / s);

    LimitSpec spec;
    spec.kind = LimitSpec::CovKind::RegressionDiagonal;
    spec.sigma = cfg.sigma;
    spec.design_weights = w;
    limit = sample_limit(spec, p, lp, w, cfg.replicates, cfg.seed + 1);

    FiniteSampleScenario fin;
    fin.kind = FiniteSampleScenario::Kind::Regression;
    fin.g0 = cfg.g0;
    fin.sigma = cfg.sigma;
    finite = finite_sample_law(fin, p, n, cfg.replicates, cfg.seed);
  } else {
    throw std::invalid_argument("unknown limit-check scenario: " + cfg.scenario);
  }

  MCReport report = compare_draws(finite, limit);
  report.n_used = n;
  report.seed = cfg.seed;
  return report;
}

}  // namespace isocone
