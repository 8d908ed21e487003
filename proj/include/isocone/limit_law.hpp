#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "isocone/levels.hpp"
#include "isocone/preorder.hpp"

namespace isocone {

// Description of the Gaussian limit of the scaled basic estimator plus the
// per-index rate exponents of the diagonal scaling B_n.
struct LimitSpec {
  enum class CovKind { RegressionDiagonal, Multinomial, CustomDense };
  CovKind kind = CovKind::Multinomial;

  double sigma = 1.0;                   // regression noise sd
  std::vector<double> design_weights;   // limiting occupancy fractions w
  std::vector<double> pmf;              // true pmf for the multinomial case
  std::vector<std::vector<double>> custom;

  std::vector<double> rates;  // q_i exponents; empty means 1/2 everywhere
  // The pmf estimator is projected onto the antitonic cone, so its limit
  // applies per-level antitonic regressions.
  bool antitonic = false;
};

std::vector<std::vector<double>> covariance_matrix(const LimitSpec& spec, int s);

// Rank-revealing pivoted Cholesky; returns columns of L (each length s) with
// permutation applied, so a draw is sum_k L_k * z_k with i.i.d. standard
// normal z. Eigenvalue floor 1e-12 (relative) truncates the singular
// directions of the multinomial covariance. Throws if the matrix is
// indefinite beyond the floor.
std::vector<std::vector<double>> pivoted_cholesky(const std::vector<std::vector<double>>& c);

// Independent draws of the limiting law: lambda ~ N(0, C) pushed through the
// per-level-set concatenation operator with the given projection weights.
// Row r is derived from replicate_stream(seed, r).
std::vector<std::vector<double>> sample_limit(const LimitSpec& spec, const PreOrder& p,
                                              const LevelPartition& lp,
                                              const std::vector<double>& weights,
                                              int replicates, std::uint64_t seed);

struct FiniteSampleScenario {
  enum class Kind { Pmf, Regression };
  Kind kind = Kind::Pmf;
  std::vector<double> g0;  // true pmf / regression function on the ground set
  double sigma = 1.0;
  // Fixed design: observations per cell; must sum to n. Empty means an even
  // round-robin split of n over the cells.
  std::vector<int> design_counts;
  std::vector<double> rates;  // empty means 1/2 everywhere
  bool isotonize = true;      // false: scale the raw basic estimator instead
};

// Rows of B_n(g*_n - g0) (or B_n(g_n - g0) when isotonize is false) from
// simulated samples of size n; replicate r uses replicate_stream(seed, r).
std::vector<std::vector<double>> finite_sample_law(const FiniteSampleScenario& scenario,
                                                   const PreOrder& p, int n, int replicates,
                                                   std::uint64_t seed);

// Smallest down-closed grid retaining at least 1 - mass_tol of the mass of a
// summable 2-d pmf recipe (1-based cell coordinates). The remaining mass is
// reported, not renormalized.
struct TruncatedPmf {
  std::vector<int> dims;
  std::vector<double> masses;  // row-major, not renormalized
  double retained_mass = 0.0;
};
TruncatedPmf truncate_infinite_pmf(const std::function<double(int, int)>& mass,
                                   double mass_tol);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

struct MCReport {
  struct Functional {
    std::string name;
    std::vector<double> finite_samples;
    std::vector<double> limit_samples;
    double ks = 0.0;
  };
  std::vector<Functional> functionals;  // per coordinate plus the l2 norm
  int n_used = 0;
  int replicates = 0;
  std::uint64_t seed = 0;
};

// Per-coordinate marginals plus the l2-norm functional, with two-sample KS
// distances between the finite-sample and limit draws.
MCReport compare_draws(const std::vector<std::vector<double>>& finite_draws,
                       const std::vector<std::vector<double>>& limit_draws);

}  // namespace isocone
