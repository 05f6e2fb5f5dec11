#pragma once

#include "bms/core.hpp"

namespace bms {

// gamma_i(n) catalog. All penalties are positive for n >= 1 and nonincreasing
// in n; the power-law envelope gamma_i(n) <= kappa_i n^-alpha_i holds for the
// documented (kappa, alpha) of each kind.

double rademacher_ball_penalty(double r, double xbound, std::size_t n);
double vc_penalty(std::size_t d, std::size_t n);
// c * d * log(n/d) / n; requires n > d so the log is positive.
double fast_penalty(double c, std::size_t d, std::size_t n);
double power_law_penalty(double kappa, double alpha, std::size_t n);

// Dispatch on PenaltySpec::kind.
double penalty_value(const PenaltySpec& pen, std::size_t n);

// Composite grid penalty for the slow-rate selector:
//   2 gamma_i(n_i(T/s)) + c2 sqrt(2 (m + log s) / n_i(T/s)).
double penbar(const PenaltySpec& pen, const BudgetSchedule& schedule,
              std::size_t class_index, double T, std::size_t s,
              const ConcentrationConstants& consts);

// Composite grid penalty for the fast-rate selector:
//   a gamma_i(n_i(T/s)) + b (c2 m + 2 log s) / n_i(T/s).
// The coefficients are the smallest values compatible with the selection-rule
// constraints zeta1 >= 17/2, zeta2 >= 7/2; both are configurable.
double penbar_fast(const PenaltySpec& pen, const BudgetSchedule& schedule,
                   std::size_t class_index, double T, std::size_t s,
                   const ConcentrationConstants& consts, double a = 20.0,
                   double b = 10.0);

}  // namespace bms
