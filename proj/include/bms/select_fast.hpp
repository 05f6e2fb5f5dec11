#pragma once

#include "bms/select_nested.hpp"

namespace bms {

// Acceptance test of one candidate against a smaller grid class, using the
// candidate's own sample set for both empirical risks:
//   emp_i(f_i) + zeta1 pen_i + zeta2 c2 (m + log s)/n_i
//     <= emp_i(f_j) + zeta1 pen_j.
bool fast_condition(double emp_risk_of_fi_on_i, double emp_risk_of_fj_on_i,
                    double pen_i, double pen_j, double c2, double m,
                    std::size_t s, std::size_t n_i, double zeta1 = 17.0 / 2.0,
                    double zeta2 = 7.0 / 2.0);

// Fast-rate selection: grid from penbar_fast, one independent draw per grid
// class (retained for cross-evaluation), then the largest grid class whose
// condition holds against every smaller grid class. The smallest grid class
// always qualifies vacuously.
SelectionOutcome select_fast(const Hierarchy& hierarchy, LossKind loss,
                             const DataSource& data, double T,
                             const ConcentrationConstants& consts,
                             const SelectOptions& opts = {});

}  // namespace bms
