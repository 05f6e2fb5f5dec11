#include <cmath>
#include <random>

#include "doctest.h"

#include "bms/hierarchy.hpp"
#include "bms/penalties.hpp"

using namespace bms;

TEST_CASE("rademacher_ball_penalty") {
  CHECK(rademacher_ball_penalty(1.0, 2.0, 16) == doctest::Approx(1.0));
  CHECK(rademacher_ball_penalty(0.0, 5.0, 7) == 0.0);
  CHECK(rademacher_ball_penalty(3.0, 1.0, 36) == doctest::Approx(1.0));
  CHECK_THROWS(rademacher_ball_penalty(1.0, 1.0, 0));
}

TEST_CASE("vc_penalty") {
  CHECK(vc_penalty(4, 100) == doctest::Approx(0.2));
  CHECK(vc_penalty(1, 1) == doctest::Approx(1.0));
  CHECK(vc_penalty(9, 144) == doctest::Approx(0.25));
  CHECK_THROWS(vc_penalty(1, 0));
}

TEST_CASE("fast_penalty") {
  // c=1, d=2, n = 2e^2: c d log(n/d)/n = 2 * 2 / (2 e^2) = 2/e^2
  const auto n = static_cast<std::size_t>(std::llround(2.0 * std::exp(2.0)));
  CHECK(fast_penalty(1.0, 2, n) ==
        doctest::Approx(2.0 * std::log(n / 2.0) / n).epsilon(1e-12));
  CHECK(fast_penalty(2.0, 1, 10) == doctest::Approx(2.0 * std::log(10.0) / 10.0));
  CHECK(fast_penalty(2.0, 1, 10) == doctest::Approx(0.4605).epsilon(1e-3));
  CHECK_THROWS(fast_penalty(1.0, 5, 5));
}

namespace {

BudgetSchedule unit_schedule(double n_scale = 1.0) {
  BudgetSchedule s;
  s.n_scale = n_scale;
  s.unit_cost = {1.0};
  return s;
}

}  // namespace

TEST_CASE("penbar matches the composite formula") {
  // gamma = power law tuned so gamma(n) has a known value
  PenaltySpec pen;
  pen.kind = PenaltyKind::power_law;
  ConcentrationConstants consts;

  // gamma = 0.1 at n = 8, c2 = 1, m = 1, s = 1 -> 0.2 + sqrt(2/8) = 0.7
  pen.kappa = 0.1;
  pen.alpha = 0.0;
  consts.c2 = 1.0;
  consts.m = 1.0;
  CHECK(penbar(pen, unit_schedule(), 1, 8.0, 1, consts) == doctest::Approx(0.7));

  // degenerate zero case
  pen.kappa = 0.0;
  consts.c2 = 0.0;
  CHECK(penbar(pen, unit_schedule(), 1, 8.0, 1, consts) == 0.0);

  // gamma = 0.05, c2 = 1, m = 0, s = 8, n = 32
  pen.kappa = 0.05;
  consts.c2 = 1.0;
  consts.m = 0.0;
  const double expect = 0.1 + std::sqrt(2.0 * std::log(8.0) / 32.0);
  CHECK(penbar(pen, unit_schedule(), 1, 8.0 * 32.0, 8, consts) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(0.4605).epsilon(1e-3));

  CHECK_THROWS(penbar(pen, unit_schedule(), 1, 0.5, 1, consts));  // zero samples
}

TEST_CASE("penbar_fast matches the composite formula") {
  PenaltySpec pen;
  pen.kind = PenaltyKind::power_law;
  pen.alpha = 0.0;
  ConcentrationConstants consts;

  // gamma = 0.01, c2 = 1, m = 1, s = 1, n = 100 -> 0.2 + 10/100 = 0.3
  pen.kappa = 0.01;
  consts.c2 = 1.0;
  consts.m = 1.0;
  CHECK(penbar_fast(pen, unit_schedule(), 1, 100.0, 1, consts) ==
        doctest::Approx(0.3));

  pen.kappa = 0.0;
  consts.m = 0.0;
  CHECK(penbar_fast(pen, unit_schedule(), 1, 100.0, 1, consts) == 0.0);

  // gamma = 0.02, c2 = 2, m = 2, s = 8, n = 64 -> 0.4 + 10 (4 + 2 log 8)/64
  pen.kappa = 0.02;
  consts.c2 = 2.0;
  consts.m = 2.0;
  const double expect = 0.4 + 10.0 * (4.0 + 2.0 * std::log(8.0)) / 64.0;
  CHECK(penbar_fast(pen, unit_schedule(), 1, 8.0 * 64.0, 8, consts) ==
        doctest::Approx(expect).epsilon(1e-12));
  CHECK(expect == doctest::Approx(1.675).epsilon(1e-2));
}

TEST_CASE("penbar strictly increasing in class index over random hierarchies") {
  std::mt19937_64 rng(31);
  ConcentrationConstants consts;
  consts.m = 1.0;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<std::size_t> dims;
    std::size_t d = 1 + rng() % 3;
    for (int i = 0; i < 6; ++i) {
      dims.push_back(d);
      d += 1 + rng() % 4;
    }
    const auto h = make_dim_hierarchy(dims, 1.0, 50.0);
    const double T = 200.0 + double(rng() % 2000);
    const std::size_t s = 1 + rng() % 6;
    double prev = -1.0;
    for (std::size_t i = 1; i <= h.size(); ++i) {
      const double v = penbar(h.at(i).penalty, h.schedule, i, T, s, consts);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("penalty values nonincreasing in n and penbar nonincreasing in T") {
  const auto h = make_dim_hierarchy({1, 2, 4}, 1.0, 10.0);
  ConcentrationConstants consts;
  consts.m = 2.0;
  for (std::size_t i = 1; i <= h.size(); ++i) {
    double prev_gamma = std::numeric_limits<double>::infinity();
    for (std::size_t n = h.at(i).penalty.dim + 1; n < 4000; n += 13) {
      const double g = penalty_value(h.at(i).penalty, n);
      CHECK(g <= prev_gamma);
      prev_gamma = g;
    }
    double prev_pb = std::numeric_limits<double>::infinity();
    for (double T = 50.0; T < 5000.0; T *= 1.5) {
      const double pb = penbar(h.at(i).penalty, h.schedule, i, T, 4, consts);
      CHECK(pb <= prev_pb);
      prev_pb = pb;
    }
  }
}

TEST_CASE("power-law envelope holds across the catalog") {
  // rademacher / vc: alpha = 1/2 with the documented kappa
  for (std::size_t n = 1; n <= 10000000; n = n * 3 + 1) {
    CHECK(rademacher_ball_penalty(2.0, 1.5, n) <=
          2.0 * 2.0 * 1.5 * std::pow(double(n), -0.5) + 1e-12);
    CHECK(vc_penalty(7, n) <= std::sqrt(7.0) * std::pow(double(n), -0.5) + 1e-12);
  }
  // fast: alpha = 0.9, kappa = c d sup_n log(n/d) / n^{0.1} found numerically
  const double c = 1.5;
  const std::size_t d = 3;
  double kappa = 0.0;
  for (std::size_t n = d + 1; n <= 10000000; n = n + 1 + n / 7) {
    kappa = std::max(kappa, c * double(d) * std::log(double(n) / d) *
                                std::pow(double(n), -0.1));
  }
  for (std::size_t n = d + 1; n <= 10000000; n = n + 1 + n / 7) {
    CHECK(fast_penalty(c, d, n) <= kappa * std::pow(double(n), -0.9) + 1e-12);
  }
}
