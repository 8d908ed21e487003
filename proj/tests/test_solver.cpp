#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "isocone/preorder.hpp"
#include "isocone/rng.hpp"
#include "isocone/solver.hpp"
#include "test_util.hpp"

using namespace isocone;
using testutil::linf;

namespace {

WeightedFunction wf(std::vector<double> v) {
  WeightedFunction f;
  f.weights.assign(v.size(), 1.0);
  f.values = std::move(v);
  return f;
}

}  // namespace

TEST_CASE("violating pair pools to its mean") {
  PreOrder p = grid_preorder({2});
  IsotonicFit fit = isotonic_regression(p, wf({2.0, 1.0}));
  CHECK(fit.fitted[0] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(fit.fitted[1] == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(fit.blocks.size() == 1);
}

TEST_CASE("isotonic input is a fixed point") {
  PreOrder p = grid_preorder({2, 2});
  std::vector<double> v{0.0, 1.0, 1.0, 2.0};
  IsotonicFit fit = isotonic_regression(p, wf(v));
  CHECK(linf(fit.fitted, v) < 1e-14);
  CHECK(fit.objective == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("2x2 grid frozen example") {
  PreOrder p = grid_preorder({2, 2});
  IsotonicFit fit = isotonic_regression(p, wf({3.0, 1.0, 2.0, 4.0}));
  CHECK(linf(fit.fitted, {2.0, 2.0, 2.0, 4.0}) < 1e-10);
}

TEST_CASE("3-chain frozen example") {
  PreOrder p = grid_preorder({3});
  IsotonicFit fit = isotonic_regression(p, wf({3.0, 1.0, 2.0}));
  CHECK(linf(fit.fitted, {2.0, 2.0, 2.0}) < 1e-12);
}

TEST_CASE("antitonic basics") {
  PreOrder p = grid_preorder({2});
  IsotonicFit fit = antitonic_regression(p, wf({1.0, 2.0}));
  CHECK(fit.fitted[0] == doctest::Approx(1.5).epsilon(1e-14));
  std::vector<double> anti{3.0, 1.0};
  CHECK(linf(antitonic_regression(p, wf(anti)).fitted, anti) < 1e-14);
}

TEST_CASE("antitonic equals negated isotonic of negated values") {
  PreOrder p = grid_preorder({2, 2});
  std::vector<double> v{0.1, 0.3, 0.2, 0.05};
  WeightedFunction f = wf(v);
  IsotonicFit anti = antitonic_regression(p, f);
  WeightedFunction neg = f;
  for (double& x : neg.values) x = -x;
  IsotonicFit iso = isotonic_regression(p, neg);
  for (int i = 0; i < 4; ++i) {
    CHECK(anti.fitted[i] == doctest::Approx(-iso.fitted[i]).epsilon(1e-12));
  }
}

TEST_CASE("input validation") {
  PreOrder p = grid_preorder({2});
  WeightedFunction bad = wf({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(isotonic_regression(p, bad), std::invalid_argument);
  WeightedFunction zero = wf({1.0, 2.0});
  zero.weights[0] = 0.0;
  CHECK_THROWS_AS(isotonic_regression(p, zero), std::invalid_argument);
}

TEST_CASE("oracle on simple instances") {
  PreOrder chain = grid_preorder({2});
  std::vector<double> fitted = oracle_projection(chain, wf({2.0, 1.0}), 1e-10, 100000);
  CHECK(linf(fitted, {1.5, 1.5}) < 1e-8);

  PreOrder antichain({"a", "b", "c"}, std::vector<std::pair<int, int>>{});
  std::vector<double> v{3.0, -1.0, 0.5};
  CHECK(linf(oracle_projection(antichain, wf(v), 1e-10, 10), v) == 0.0);
}

TEST_CASE("solver agrees with oracle on random DAGs") {
  RngStream rng(7);
  for (int t = 0; t < 25; ++t) {
    PreOrder p = testutil::random_preorder(rng, 6);
    WeightedFunction f;
    f.values = testutil::random_values(rng, p.size());
    f.weights = testutil::random_weights(rng, p.size());
    IsotonicFit fit = isotonic_regression(p, f);
    std::vector<double> oracle = oracle_projection(p, f, 1e-10, 500000);
    CHECK(linf(fit.fitted, oracle) < 1e-6);
    CHECK(p.is_isotonic(fit.fitted, 1e-9));
  }
}

TEST_CASE("weighted sum and bounds are preserved") {
  RngStream rng(11);
  for (int t = 0; t < 50; ++t) {
    PreOrder p = testutil::random_preorder(rng);
    WeightedFunction f;
    f.values = testutil::random_values(rng, p.size());
    f.weights = testutil::random_weights(rng, p.size());
    IsotonicFit fit = isotonic_regression(p, f);
    double sw = 0.0, sf = 0.0, scale = 0.0;
    double lo = f.values[0], hi = f.values[0];
    for (int i = 0; i < p.size(); ++i) {
      sw += f.values[i] * f.weights[i];
      sf += fit.fitted[i] * f.weights[i];
      scale += std::abs(f.values[i]) * f.weights[i];
      lo = std::min(lo, f.values[i]);
      hi = std::max(hi, f.values[i]);
    }
    CHECK(std::abs(sw - sf) < 1e-9 * std::max(1.0, scale));
    for (double x : fit.fitted) {
      CHECK(x >= lo - 1e-12);
      CHECK(x <= hi + 1e-12);
    }
  }
}
