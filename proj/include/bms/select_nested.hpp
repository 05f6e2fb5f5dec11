#pragma once

#include "bms/datagen.hpp"
#include "bms/grid.hpp"
#include "bms/hierarchy.hpp"
#include "bms/learners.hpp"

namespace bms {

struct PerClassDiagnostics {
  std::size_t index = 0;
  std::size_t n_samples = 0;
  double empirical_risk = 0.0;
  double penalty = 0.0;
  double score = 0.0;
};

struct SelectionOutcome {
  std::size_t chosen_index = 0;
  Weights model;
  double empirical_risk = 0.0;
  double score = 0.0;
  std::vector<PerClassDiagnostics> per_class;
  double budget_used = 0.0;
  CoarseGrid grid;
};

struct SelectOptions {
  double lambda = 1.0;
  SgdOptions sgd;
  // fast-rate selection-rule constants; see penbar_fast for the composite ones
  double zeta1 = 17.0 / 2.0;
  double zeta2 = 7.0 / 2.0;
  double fast_a = 20.0;
  double fast_b = 10.0;
};

// Penalized score of one grid class:
//   emp + pen + (c2/2) sqrt(m/n) + (c2/2) sqrt(log s / n).
double score_nested(double emp_risk, double pen_value, double c2, double m,
                    std::size_t s, std::size_t n);

// Budget-split selection over the coarse grid: build the grid from composite
// penalties at budget T/s, train each grid class on its own independent draw
// of n_i(T/s) samples, pick the argmin of score_nested (ties to the smallest
// index).
SelectionOutcome select_nested(const Hierarchy& hierarchy, LossKind loss,
                               const DataSource& data, double T,
                               const ConcentrationConstants& consts,
                               const SelectOptions& opts = {});

// Doubling wrapper for unknown budgets: run with guesses 1, 2, 4, ... while
// the cumulative spend plus the next guess fits within T0; returns the last
// completed round's outcome (its budget is always >= T0/4).
SelectionOutcome doubling_select(const Hierarchy& hierarchy, LossKind loss,
                                 const DataSource& data, double T0,
                                 const ConcentrationConstants& consts,
                                 const SelectOptions& opts = {});

// Budget plan of the doubling wrapper (round budgets, in order). Exposed so
// the accounting can be tested without any training.
std::vector<double> doubling_plan(double T0);

}  // namespace bms
