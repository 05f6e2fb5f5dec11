#include <algorithm>

#include "doctest.h"

#include "bms/bandit.hpp"

using namespace bms;

TEST_CASE("obj_criterion") {
  CHECK(obj_criterion(0.3, 0.05, 0.01, 2, 100) ==
        doctest::Approx(0.3 - 0.05 - std::sqrt(std::log(2.0) / 100.0) + 0.01)
            .epsilon(1e-12));
  CHECK(obj_criterion(0.3, 0.05, 0.01, 2, 100) ==
        doctest::Approx(0.1767).epsilon(1e-3));
  CHECK(obj_criterion(0.3, 0.05, 0.01, 1, 100) == doctest::Approx(0.26));
  CHECK(obj_criterion(0.0, 0.05, 0.05, 1, 100) == doctest::Approx(0.0));
  CHECK_THROWS(obj_criterion(0.3, 0.05, 0.01, 2, 0));
}

namespace {

PenaltySpec vc_pen(std::size_t d) {
  PenaltySpec pen;
  pen.kind = PenaltyKind::vc_dim;
  pen.dim = d;
  return pen;
}

std::vector<std::unique_ptr<BanditArm>> synthetic_arms(
    const std::vector<double>& means, std::size_t n_rate, std::uint64_t seed,
    double halfwidth = 0.2) {
  std::vector<std::unique_ptr<BanditArm>> arms;
  for (std::size_t i = 0; i < means.size(); ++i)
    arms.push_back(std::make_unique<SyntheticBanditArm>(
        means[i], halfwidth, n_rate, vc_pen(i + 1), seed + i));
  return arms;
}

}  // namespace

TEST_CASE("T = K runs initialization only") {
  auto arms = synthetic_arms({0.3, 0.3, 0.3}, 10, 5);
  const auto res = bandit_run(arms, 3, {});
  CHECK(res.trace.final_counts == std::vector<std::size_t>{1, 1, 1});
  CHECK(res.trace.final_samples == std::vector<std::size_t>{10, 10, 10});
  CHECK(res.trace.most_frequent == 1);
  CHECK_THROWS(bandit_run(arms, 2, {}));
}

TEST_CASE("count conservation at every round") {
  auto arms = synthetic_arms({0.2, 0.35, 0.5}, 5, 9);
  const auto res = bandit_run(arms, 200, {});
  REQUIRE(res.trace.log.size() == 200);
  for (const auto& round : res.trace.log) {
    std::size_t total = 0;
    for (std::size_t c : round.counts) total += c;
    CHECK(total == round.t);
  }
  std::size_t total = 0;
  for (std::size_t c : res.trace.final_counts) total += c;
  CHECK(total == 200);
}

TEST_CASE("identical arms split pulls via smallest-index ties") {
  // same seed => identical loss streams; criteria tie every round
  auto arms = synthetic_arms({0.3, 0.3, 0.3, 0.3}, 8, 21);
  for (auto& a : arms)
    a = std::make_unique<SyntheticBanditArm>(0.3, 0.0, 8, vc_pen(1), 77);
  const auto res = bandit_run(arms, 40, {});
  const auto& counts = res.trace.final_counts;
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  CHECK(*hi - *lo <= 1);
  CHECK(res.trace.most_frequent == 1);
}

TEST_CASE("clear gap concentrates pulls on the best arm") {
  int correct = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto arms = synthetic_arms({0.2, 0.7}, 20, 1000 + 13 * trial);
    const auto res = bandit_run(arms, 500, {});
    if (res.trace.most_frequent == 1) ++correct;
    CHECK(res.trace.final_counts[1] <= 60);  // ~ C log(500), generous C
  }
  CHECK(correct >= 19);
}

TEST_CASE("excess_gaps and regret") {
  std::vector<ModelClassSpec> classes(2);
  classes[0].index = 1;
  classes[0].samples_per_quantum = 1.0;
  classes[0].penalty.kappa = 0.0;
  classes[0].penalty.kind = PenaltyKind::power_law;  // gamma identically 0
  classes[1] = classes[0];
  classes[1].index = 2;

  const auto gaps = excess_gaps(classes, {0.1, 0.3}, 100);
  CHECK(gaps.delta[0] == 0.0);
  CHECK(gaps.delta[1] == doctest::Approx(0.2));

  BanditTrace trace;
  trace.final_counts = {90, 10};
  CHECK(regret(trace, gaps) == doctest::Approx(2.0));
  CHECK(regret(trace, ExcessGap{{0.0, 0.0}}) == 0.0);
  CHECK_THROWS(regret(trace, ExcessGap{{0.0}}));
}

TEST_CASE("excess_gaps with unequal penalties") {
  // penalized risks (0.15, 0.17) from R* = (0.1, 0.16), gamma = (0.05, 0.01)
  std::vector<ModelClassSpec> classes(2);
  for (std::size_t i = 0; i < 2; ++i) {
    classes[i].index = i + 1;
    classes[i].penalty.kind = PenaltyKind::power_law;
    classes[i].penalty.alpha = 0.0;
    classes[i].samples_per_quantum = 1.0;
  }
  classes[0].penalty.kappa = 0.05;
  classes[1].penalty.kappa = 0.01;
  const auto gaps = excess_gaps(classes, {0.1, 0.16}, 50);
  CHECK(gaps.delta[0] == 0.0);
  CHECK(gaps.delta[1] == doctest::Approx(0.02));
}

TEST_CASE("regret matches replay from the per-round log") {
  auto arms = synthetic_arms({0.2, 0.4, 0.55}, 6, 31);
  const auto res = bandit_run(arms, 300, {});
  std::vector<std::size_t> counts(3, 0);
  for (const auto& round : res.trace.log) counts[round.chosen - 1]++;
  CHECK(counts == res.trace.final_counts);

  ExcessGap gaps{{0.0, 0.2, 0.35}};
  double expect = 0.0;
  for (std::size_t i = 0; i < 3; ++i) expect += gaps.delta[i] * counts[i];
  CHECK(regret(res.trace, gaps) == doctest::Approx(expect));
}

TEST_CASE("sgd arms: averaged model obeys Jensen on held-out data") {
  DataGenSpec spec;
  spec.kind = DataGenKind::nested_dims;
  spec.ambient_dim = 4;
  spec.true_support = 2;
  spec.label_noise = 0.1;
  spec.seed = 8;
  const DataSource data(spec, 303);

  std::vector<ModelClassSpec> classes(2);
  for (std::size_t i = 0; i < 2; ++i) {
    classes[i].index = i + 1;
    classes[i].ball_radius = 1.0;
    classes[i].active_dims = (i + 1) * 2;
    classes[i].samples_per_quantum = 8.0;
    classes[i].penalty.kind = PenaltyKind::vc_dim;
    classes[i].penalty.dim = (i + 1) * 2;
  }

  BanditOptions opts;
  opts.collect_all_snapshots = true;
  const auto res = bandit_select(classes, LossKind::logistic, data, 60, {}, opts);
  REQUIRE(!res.averaged.empty());
  REQUIRE(res.snapshots.size() == 60);

  const auto held = data.draw(seed_phase::heldout, 0, 2000);
  const double avg_risk =
      empirical_risk(res.averaged, held, LossKind::logistic).value;
  double mean_of_risks = 0.0;
  for (const auto& f : res.snapshots)
    mean_of_risks += empirical_risk(f, held, LossKind::logistic).value;
  mean_of_risks /= res.snapshots.size();
  CHECK(avg_risk <= mean_of_risks + 1e-9);
}

TEST_CASE("bandit_run is deterministic") {
  auto a1 = synthetic_arms({0.25, 0.45}, 7, 61);
  auto a2 = synthetic_arms({0.25, 0.45}, 7, 61);
  const auto r1 = bandit_run(a1, 150, {});
  const auto r2 = bandit_run(a2, 150, {});
  CHECK(r1.trace.final_counts == r2.trace.final_counts);
  for (std::size_t t = 0; t < 150; ++t)
    CHECK(r1.trace.log[t].chosen == r2.trace.log[t].chosen);
}
