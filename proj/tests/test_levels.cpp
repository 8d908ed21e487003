#include "doctest.h"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "isocone/estimators.hpp"
#include "isocone/levels.hpp"
#include "isocone/preorder.hpp"
#include "isocone/rng.hpp"
#include "isocone/solver.hpp"
#include "test_util.hpp"

using namespace isocone;
using testutil::linf;

TEST_CASE("4-chain two-level partition") {
  PreOrder p = grid_preorder({4});
  LevelPartition lp = level_partition(p, {0.0, 0.0, 1.0, 1.0});
  REQUIRE(lp.sets.size() == 2);
  CHECK(lp.sets[0].members == std::vector<int>{0, 1});
  CHECK(lp.sets[0].value == 0.0);
  CHECK(lp.sets[1].members == std::vector<int>{2, 3});
  CHECK(lp.epsilon_tilde == doctest::Approx(1.0));
}

TEST_CASE("antichain level sets split into singletons") {
  PreOrder p({"a", "b", "c", "d"}, std::vector<std::pair<int, int>>{});
  LevelPartition lp = level_partition(p, {0.0, 0.0, 0.0, 0.0});
  CHECK(lp.sets.size() == 4);
  CHECK(std::isinf(lp.epsilon_tilde));
}

TEST_CASE("non-isotonic reference rejected") {
  PreOrder p = grid_preorder({2});
  CHECK_THROWS_AS(level_partition(p, {1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("figure-1 mixture pmf has five connected bands") {
  PreOrder p = grid_preorder({5, 5});
  std::vector<double> pmf = mixture_uniform_pmf({0.1, 0.2, 0.3, 0.2, 0.2});
  // pmf is antitonic; the partition machinery wants an isotonic reference.
  std::vector<double> neg(pmf.size());
  for (size_t i = 0; i < pmf.size(); ++i) neg[i] = -pmf[i];
  LevelPartition lp = level_partition(p, neg);
  CHECK(lp.sets.size() == 5);
  for (const auto& s : lp.sets) {
    // each band is the L-shape {max(i,j) = r}, size 2r-1
    int r = 0;
    for (int m : s.members) {
      int i = m / 5 + 1, j = m % 5 + 1;
      r = std::max(r, std::max(i, j));
    }
    CHECK(static_cast<int>(s.members.size()) == 2 * r - 1);
  }
  CHECK(lp.epsilon_tilde > 0.0);
  CHECK(std::isfinite(lp.epsilon_tilde));
}

TEST_CASE("truncated partition on the 4-chain") {
  PreOrder p = grid_preorder({4});
  LevelPartition lp = truncated_level_partition(p, {0.0, 0.5, 0.5, 1.0}, 1);
  REQUIRE(lp.sets.size() == 1);
  CHECK(lp.sets[0].members == std::vector<int>{3});
  CHECK(lp.sets[0].value == 1.0);
  CHECK(lp.tail_set == std::vector<int>{0, 1, 2});
  CHECK(lp.epsilon_tilde == doctest::Approx(0.5));
}

TEST_CASE("truncated partition keeps largest levels on a 20-chain") {
  PreOrder p = grid_preorder({20});
  std::vector<double> g0(20);
  for (int i = 0; i < 20; ++i) g0[i] = -std::pow(2.0, -i);  // isotonic, 20 levels
  LevelPartition lp = truncated_level_partition(p, g0, 5);
  REQUIRE(lp.sets.size() == 5);
  // largest |value| levels are the earliest chain positions
  for (const auto& s : lp.sets) CHECK(s.members.front() < 5);
  CHECK(lp.tail_set.size() == 15);
  CHECK_THROWS_AS(truncated_level_partition(p, g0, 0), std::invalid_argument);
  CHECK_THROWS_AS(truncated_level_partition(p, g0, 20), std::invalid_argument);
}

TEST_CASE("truncating all but one set leaves the smallest level as tail") {
  PreOrder p = grid_preorder({3});
  LevelPartition lp = truncated_level_partition(p, {0.25, 1.0, 2.0}, 2);
  CHECK(lp.tail_set == std::vector<int>{0});
}

TEST_CASE("phi pools inside each level set") {
  PreOrder p = grid_preorder({4});
  LevelPartition lp = level_partition(p, {0.0, 0.0, 1.0, 1.0});
  std::vector<double> theta{0.2, -0.1, 1.3, 0.9};
  std::vector<double> w(4, 1.0);
  CHECK(linf(phi(p, lp, theta, w), {0.05, 0.05, 1.1, 1.1}) < 1e-14);

  std::vector<double> iso_theta{-0.1, 0.2, 0.9, 1.3};
  CHECK(linf(phi(p, lp, iso_theta, w), iso_theta) < 1e-14);
}

TEST_CASE("phi matches the rescaled full projection for small perturbations") {
  PreOrder p = grid_preorder({5, 5});
  std::vector<double> pmf = mixture_uniform_pmf({0.1, 0.2, 0.3, 0.2, 0.2});
  std::vector<double> g0(pmf.size());
  for (size_t i = 0; i < pmf.size(); ++i) g0[i] = -pmf[i];
  LevelPartition lp = level_partition(p, g0);

  RngStream rng(5);
  std::vector<double> theta(25);
  double max_abs = 0.0;
  for (double& x : theta) {
    x = rng.normal();
    max_abs = std::max(max_abs, std::abs(x));
  }
  double eps = 0.5 * lp.epsilon_tilde / (2.0 * max_abs);
  std::vector<double> w(25, 1.0);

  WeightedFunction f;
  f.weights = w;
  f.values.resize(25);
  for (int i = 0; i < 25; ++i) f.values[i] = g0[i] + eps * theta[i];
  IsotonicFit full = isotonic_regression(p, f);

  std::vector<double> via_phi = phi(p, lp, theta, w);
  std::vector<double> rescaled(25);
  for (int i = 0; i < 25; ++i) rescaled[i] = (full.fitted[i] - g0[i]) / eps;
  CHECK(linf(via_phi, rescaled) < 1e-8);
}

TEST_CASE("check_localization") {
  PreOrder p = grid_preorder({4});
  std::vector<double> g0{0.0, 0.0, 1.0, 1.0};
  LevelPartition lp = level_partition(p, g0);
  CHECK(check_localization(p, lp, g0, g0));
  std::vector<double> far = g0;
  far[0] += lp.epsilon_tilde;
  CHECK(!check_localization(p, lp, far, g0));

  PreOrder anti({"a", "b"}, std::vector<std::pair<int, int>>{});
  LevelPartition lpa = level_partition(anti, {0.0, 0.0});
  CHECK(check_localization(anti, lpa, {100.0, -100.0}, {0.0, 0.0}));
}

TEST_CASE("localization on random instances") {
  RngStream rng(31);
  int done = 0;
  while (done < 40) {
    PreOrder p = testutil::random_preorder(rng);
    std::vector<double> g0 = testutil::random_isotonic(p, rng);
    LevelPartition lp = level_partition(p, g0);
    double radius = std::isinf(lp.epsilon_tilde) ? 0.25 : 0.49 * lp.epsilon_tilde;
    std::vector<double> w = testutil::random_weights(rng, p.size());
    WeightedFunction f;
    f.weights = w;
    f.values.resize(p.size());
    std::vector<double> delta(p.size());
    for (int i = 0; i < p.size(); ++i) {
      delta[i] = radius * (2.0 * rng.uniform() - 1.0);
      f.values[i] = g0[i] + delta[i];
    }
    REQUIRE(check_localization(p, lp, f.values, g0));
    IsotonicFit full = isotonic_regression(p, f);
    std::vector<double> concat = phi(p, lp, f.values, w);
    CHECK(linf(full.fitted, concat) < 1e-9);
    ++done;
  }
}
