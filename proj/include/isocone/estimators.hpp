#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "isocone/preorder.hpp"
#include "isocone/rng.hpp"
#include "isocone/solver.hpp"

namespace isocone {

struct Sample {
  enum class Kind { PmfDraws, RegressionPairs };
  Kind kind = Kind::PmfDraws;
  std::vector<int> draws;                        // element indices, pmf case
  std::vector<std::pair<int, double>> pairs;     // (element index, response)
  int n() const {
    return static_cast<int>(kind == Kind::PmfDraws ? draws.size() : pairs.size());
  }
};

struct EstimatorOutput {
  WeightedFunction basic;                 // values plus the projection weights used
  IsotonicFit isotonized;
  std::vector<double> empirical_weights;  // cell occupancy fractions (regression)
};

// Empirical pmf counts/n with unit projection weights; the isotonized
// estimator is the antitonic (monotone decreasing) projection, which is also
// the order-restricted mle.
EstimatorOutput empirical_pmf(const PreOrder& p, const Sample& sample);

// Cell means with occupancy-fraction projection weights; errors on any
// unobserved cell since the cell mean is undefined there.
EstimatorOutput regression_means(const PreOrder& p, const Sample& sample);

// Mixture of uniform square distributions: q_r weights the uniform pmf on the
// r x r corner block; result is an antitonic pmf on the q.size() x q.size()
// grid, row-major.
std::vector<double> mixture_uniform_pmf(const std::vector<double>& q);

// n i.i.d. draws from pmf (row-major over the ground set) via inverse CDF.
Sample sample_pmf_draws(const std::vector<double>& pmf, int n, RngStream& rng);

}  // namespace isocone
