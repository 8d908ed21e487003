#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "isocone/experiment.hpp"
#include "isocone/parallel.hpp"

using namespace isocone;

TEST_CASE("distance formulas") {
  Distances zero = distances({0.5, 0.5}, {0.5, 0.5});
  CHECK(zero.l1 == 0.0);
  CHECK(zero.l2 == 0.0);
  CHECK(zero.hellinger == 0.0);

  Distances disjoint = distances({1.0, 0.0}, {0.0, 1.0});
  CHECK(disjoint.l1 == doctest::Approx(2.0));
  CHECK(disjoint.l2 == doctest::Approx(std::sqrt(2.0)));
  CHECK(disjoint.hellinger == doctest::Approx(std::sqrt(2.0)));

  Distances hand = distances({0.25, 0.75}, {0.5, 0.5});
  CHECK(hand.l1 == doctest::Approx(0.5));
  CHECK(hand.l2 == doctest::Approx(std::sqrt(0.125)));
  double h = std::sqrt(std::pow(std::sqrt(0.25) - std::sqrt(0.5), 2) +
                       std::pow(std::sqrt(0.75) - std::sqrt(0.5), 2));
  CHECK(hand.hellinger == doctest::Approx(h));

  CHECK_THROWS_AS(distances({-0.1, 1.1}, {0.5, 0.5}), std::invalid_argument);
}

TEST_CASE("quartiles") {
  QuartileSummary q = quartiles({4.0, 1.0, 3.0, 2.0, 5.0});
  CHECK(q.min == 1.0);
  CHECK(q.q1 == doctest::Approx(2.0));
  CHECK(q.median == doctest::Approx(3.0));
  CHECK(q.q3 == doctest::Approx(4.0));
  CHECK(q.max == 5.0);
  CHECK_THROWS_AS(quartiles({}), std::invalid_argument);
}

TEST_CASE("small figure1 run: samplewise error reduction and determinism") {
  ExperimentConfig cfg;
  cfg.scenario = "figure1";
  cfg.n_list = {50};
  cfg.replicates = 40;
  cfg.seed = 3;
  auto out = run_figure1(cfg);
  REQUIRE(out.size() == 1);
  const DistanceSummary& s = out[0];
  REQUIRE(s.l1_basic.size() == 40);
  for (int r = 0; r < 40; ++r) {
    CHECK(s.l1_isotonized[r] <= s.l1_basic[r] + 1e-12);
    CHECK(s.l2_isotonized[r] <= s.l2_basic[r] + 1e-12);
  }

  auto again = run_figure1(cfg);
  for (int r = 0; r < 40; ++r) {
    CHECK(again[0].l1_basic[r] == s.l1_basic[r]);
    CHECK(again[0].hellinger_isotonized[r] == s.hellinger_isotonized[r]);
  }

  // thread count must not change the numbers
  set_default_threads(1);
  auto serial = run_figure1(cfg);
  set_default_threads(0);
  for (int r = 0; r < 40; ++r) CHECK(serial[0].l2_isotonized[r] == s.l2_isotonized[r]);
}

TEST_CASE("point-mass mixture makes isotonization a samplewise win") {
  ExperimentConfig cfg;
  cfg.scenario = "figure1";
  cfg.q = {1.0, 0.0, 0.0, 0.0, 0.0};
  cfg.n_list = {30};
  cfg.replicates = 25;
  cfg.seed = 8;
  auto out = run_figure1(cfg);
  for (int r = 0; r < 25; ++r) {
    CHECK(out[0].l1_isotonized[r] <= out[0].l1_basic[r] + 1e-12);
    CHECK(out[0].l2_isotonized[r] <= out[0].l2_basic[r] + 1e-12);
  }
}

TEST_CASE("limit check smoke run on the 4-chain") {
  ExperimentConfig cfg;
  cfg.scenario = "limit-check-pmf";
  cfg.dims = {4};
  cfg.g0 = {0.3, 0.3, 0.2, 0.2};
  cfg.n_list = {2000};
  cfg.replicates = 300;
  cfg.seed = 12;
  MCReport r = run_limit_check(cfg);
  REQUIRE(r.functionals.size() == 5);
  CHECK(r.replicates == 300);
  for (const auto& f : r.functionals) CHECK(f.ks < 0.2);  // loose smoke threshold
}

TEST_CASE("config validation") {
  ExperimentConfig cfg;
  cfg.scenario = "figure1";
  cfg.dims = {4, 5};
  CHECK_THROWS_AS(run_figure1(cfg), std::invalid_argument);
  cfg.dims = {5, 5};
  cfg.replicates = 0;
  CHECK_THROWS_AS(run_figure1(cfg), std::invalid_argument);

  ExperimentConfig bad;
  bad.scenario = "limit-check-pmf";
  bad.dims = {4};
  bad.g0 = {0.5, 0.5};
  CHECK_THROWS_AS(run_limit_check(bad), std::invalid_argument);
}
