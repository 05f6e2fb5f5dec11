#include <set>

#include "doctest.h"

#include "bms/datagen.hpp"
#include "bms/hierarchy.hpp"

using namespace bms;

TEST_CASE("generate is deterministic in (spec, seed, n)") {
  DataGenSpec spec;
  spec.kind = DataGenKind::nested_dims;
  spec.ambient_dim = 5;
  spec.true_support = 3;
  spec.label_noise = 0.1;
  spec.seed = 71;
  const auto a = generate(spec, 200);
  const auto b = generate(spec, 200);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].y == b[i].y);
  }
}

TEST_CASE("generate validates its spec") {
  DataGenSpec spec;
  spec.ambient_dim = 2;
  spec.true_support = 3;  // d* > d
  CHECK_THROWS(generate(spec, 10));
  spec.true_support = 2;
  spec.label_noise = 0.6;
  CHECK_THROWS(generate(spec, 10));
}

TEST_CASE("covariates sit exactly on the sphere of radius xbound") {
  DataGenSpec spec;
  spec.kind = DataGenKind::nested_ball_margin;
  spec.ambient_dim = 8;
  spec.true_support = 4;
  spec.xbound = 2.5;
  spec.seed = 9;
  double mean_norm2 = 0.0;
  const auto samples = generate(spec, 5000);
  for (const auto& s : samples) {
    double norm2 = 0.0;
    for (double v : s.x) norm2 += v * v;
    CHECK(std::sqrt(norm2) == doctest::Approx(2.5).epsilon(1e-9));
    mean_norm2 += norm2;
  }
  CHECK(mean_norm2 / samples.size() <= 2.5 * 2.5 * (1.0 + 1e-9));
}

TEST_CASE("labels are noiseless sign of the true margin at eta = 0") {
  DataGenSpec spec;
  spec.kind = DataGenKind::nested_dims;
  spec.ambient_dim = 4;
  spec.true_support = 2;
  spec.label_noise = 0.0;
  spec.seed = 13;
  const auto truth = spec.true_weights();
  for (const auto& s : generate(spec, 1000))
    CHECK(s.y * dot(truth, s.x) >= 0.0);
}

TEST_CASE("regression labels carry bounded noise around the linear signal") {
  DataGenSpec spec;
  spec.kind = DataGenKind::fast_rate_regression;
  spec.ambient_dim = 6;
  spec.true_support = 4;
  spec.noise_halfwidth = 0.25;
  spec.seed = 21;
  const auto truth = spec.true_weights();
  for (const auto& s : generate(spec, 2000))
    CHECK(std::abs(s.y - dot(truth, s.x)) <= 0.25 + 1e-12);
  CHECK(spec.bayes_risk() == doctest::Approx(0.25 * 0.25 / 3.0));
}

TEST_CASE("oracle risks are nonincreasing across nested classes") {
  DataGenSpec spec;
  spec.kind = DataGenKind::nested_dims;
  spec.ambient_dim = 8;
  spec.true_support = 4;
  spec.label_noise = 0.1;
  spec.seed = 33;
  const auto h = make_dim_hierarchy({1, 2, 4, 8}, 1.5, 1.0);
  const auto risks =
      oracle_class_risks(spec, h.classes, LossKind::logistic, 4000, 100000);
  REQUIRE(risks.size() == 4);
  for (std::size_t i = 1; i < risks.size(); ++i)
    CHECK(risks[i].risk <=
          risks[i - 1].risk + 2.0 * (risks[i].mc_stderr + risks[i - 1].mc_stderr));
  // the class containing the true support has near-optimal surrogate risk
  CHECK(risks[2].risk < risks[0].risk);
}

TEST_CASE("oracle_class_risks is deterministic") {
  DataGenSpec spec;
  spec.kind = DataGenKind::nested_dims;
  spec.ambient_dim = 4;
  spec.true_support = 2;
  spec.label_noise = 0.05;
  spec.seed = 44;
  const auto h = make_dim_hierarchy({1, 2, 4}, 1.0, 1.0);
  const auto a = oracle_class_risks(spec, h.classes, LossKind::logistic, 1000, 20000);
  const auto b = oracle_class_risks(spec, h.classes, LossKind::logistic, 1000, 20000);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].risk == b[i].risk);
}

TEST_CASE("seed streams are disjoint across phases, classes and trials") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t phase = 1; phase <= 5; ++phase)
    for (std::uint64_t cls = 0; cls <= 20; ++cls)
      for (std::uint64_t trial = 0; trial <= 20; ++trial)
        CHECK(seen.insert(derive_seed(123, phase, cls, trial)).second);
}
