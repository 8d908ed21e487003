#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "isocone/limit_law.hpp"
#include "isocone/preorder.hpp"

namespace isocone {

struct ExperimentConfig {
  std::string name;
  std::string scenario;  // "figure1" | "limit-check-pmf" | "limit-check-reg"
  std::vector<int> dims{5, 5};
  std::vector<double> q;   // mixture weights (figure1); default Figure 1 mix
  std::vector<double> g0;  // explicit reference for limit checks
  std::vector<int> n_list{50, 300};
  int replicates = 1000;
  std::uint64_t seed = 1;
  double sigma = 1.0;  // regression limit checks
  std::string out_dir;
};

struct QuartileSummary {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct DistanceSummary {
  int n = 0;
  // Per-replicate distances to the true pmf.
  std::vector<double> l1_basic, l2_basic, hellinger_basic;
  std::vector<double> l1_isotonized, l2_isotonized, hellinger_isotonized;
  std::map<std::string, QuartileSummary> quartiles;  // "<metric>_<estimator>"
};

// l1, l2 and Hellinger (unsquared convention) distances of a nonnegative
// estimate to a pmf.
struct Distances {
  double l1 = 0.0, l2 = 0.0, hellinger = 0.0;
};
Distances distances(const std::vector<double>& p_hat, const std::vector<double>& p_true);

QuartileSummary quartiles(std::vector<double> v);

// Mixture-of-uniforms pmf experiment: for each n, `replicates` multinomial
// samples; per replicate the empirical and isotonized estimators and their
// three distances to the true pmf. Replicate streams are indexed by
// (position of n in n_list) * replicates + replicate.
std::vector<DistanceSummary> run_figure1(const ExperimentConfig& cfg);

// Wires the estimators to the limit machinery: finite-sample draws vs draws
// from the limiting law, with KS diagnostics.
MCReport run_limit_check(const ExperimentConfig& cfg);

}  // namespace isocone
