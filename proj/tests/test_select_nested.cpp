#include <algorithm>
#include <random>

#include "doctest.h"

#include "bms/select_nested.hpp"

using namespace bms;

TEST_CASE("score_nested") {
  CHECK(score_nested(0.3, 0.1, 2.0, 1.0, 1, 4) == doctest::Approx(0.9));
  CHECK(score_nested(0.0, 0.0, 0.0, 1.0, 4, 7) == 0.0);
  const double expect = 0.5 + 0.2 + 0.5 * std::sqrt(4.0 / 16.0) +
                        0.5 * std::sqrt(std::log(8.0) / 16.0);
  CHECK(score_nested(0.5, 0.2, 1.0, 4.0, 8, 16) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(1.1302).epsilon(1e-3));
  CHECK_THROWS(score_nested(0.1, 0.1, 1.0, 1.0, 1, 0));
}

namespace {

DataGenSpec dims_spec(std::uint64_t seed) {
  DataGenSpec spec;
  spec.kind = DataGenKind::nested_dims;
  spec.ambient_dim = 4;
  spec.true_support = 2;
  spec.label_noise = 0.1;
  spec.seed = seed;
  return spec;
}

}  // namespace

TEST_CASE("single-class hierarchy is selected vacuously") {
  const auto h = make_dim_hierarchy({2}, 1.0, 4.0);
  const DataSource data(dims_spec(1), 5);
  const auto out = select_nested(h, LossKind::logistic, data, 64.0, {});
  CHECK(out.chosen_index == 1);
  CHECK(out.per_class.size() == out.grid.indices.size());
}

TEST_CASE("selection invariants: argmin, membership, score recomputation") {
  const auto h = make_dim_hierarchy({1, 2, 4}, 1.0, 2.0);
  ConcentrationConstants consts;
  consts.m = 1.0;
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    const DataSource data(dims_spec(42), 1000 + trial, trial);
    const auto out = select_nested(h, LossKind::logistic, data, 512.0, consts);
    CHECK(std::count(out.grid.indices.begin(), out.grid.indices.end(),
                     out.chosen_index) == 1);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pc : out.per_class) {
      best = std::min(best, pc.score);
      CHECK(pc.score == doctest::Approx(score_nested(pc.empirical_risk,
                                                     pc.penalty, consts.c2,
                                                     consts.m, out.grid.s,
                                                     pc.n_samples))
                            .epsilon(1e-12));
    }
    CHECK(out.score == doctest::Approx(best).epsilon(1e-12));
    CHECK(out.budget_used <= 512.0 + 1e-9);
  }
}

TEST_CASE("select_nested is deterministic in (config, seed)") {
  const auto h = make_dim_hierarchy({1, 2, 4}, 1.0, 2.0);
  const DataSource data(dims_spec(7), 99, 3);
  const auto a = select_nested(h, LossKind::logistic, data, 256.0, {});
  const auto b = select_nested(h, LossKind::logistic, data, 256.0, {});
  CHECK(a.chosen_index == b.chosen_index);
  CHECK(a.score == b.score);
  CHECK(a.model == b.model);
}

TEST_CASE("budget too small for the grid is an error") {
  const auto h = make_dim_hierarchy({1, 2, 4}, 1.0, 1.0);
  const DataSource data(dims_spec(7), 2);
  CHECK_THROWS(select_nested(h, LossKind::logistic, data, 3.0, {}));
}

TEST_CASE("doubling_plan accounting") {
  CHECK(doubling_plan(13.0) == std::vector<double>{1.0, 2.0, 4.0});
  CHECK(doubling_plan(1.0) == std::vector<double>{1.0});
  for (int k = 1; k <= 12; ++k) {
    const double T0 = std::pow(2.0, k) - 1.0;
    const auto plan = doubling_plan(T0);
    CHECK(plan.back() == std::pow(2.0, k - 1));
  }
  CHECK_THROWS(doubling_plan(0.5));

  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unif(1.0, 1e4);
  for (int rep = 0; rep < 100; ++rep) {
    const double T0 = unif(rng);
    const auto plan = doubling_plan(T0);
    double spent = 0.0;
    for (double b : plan) spent += b;
    CHECK(spent <= T0);
    CHECK(plan.back() >= T0 / 4.0);
  }
}

TEST_CASE("doubling_select returns the last completed round's outcome") {
  const auto h = make_dim_hierarchy({1, 2}, 1.0, 4.0);
  ConcentrationConstants consts;
  const DataSource data(dims_spec(11), 77);
  const auto out = doubling_select(h, LossKind::logistic, data, 700.0, consts);
  // plan for 700: 1..256 (sum 511); the outcome is from the T = 256 round
  const auto plan = doubling_plan(700.0);
  CHECK(plan.back() == 256.0);
  CHECK(out.budget_used <= 700.0);
  CHECK(std::count(out.grid.indices.begin(), out.grid.indices.end(),
                   out.chosen_index) == 1);
}
