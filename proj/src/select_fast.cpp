#include "bms/select_fast.hpp"

#include <cmath>

#include "bms/penalties.hpp"

namespace bms {

bool fast_condition(double emp_risk_of_fi_on_i, double emp_risk_of_fj_on_i,
                    double pen_i, double pen_j, double c2, double m,
                    std::size_t s, std::size_t n_i, double zeta1, double zeta2) {
  if (n_i == 0) throw std::invalid_argument("fast_condition: n_i = 0");
  const double ls = std::log(static_cast<double>(s));
  const double lhs = emp_risk_of_fi_on_i + zeta1 * pen_i +
                     zeta2 * c2 * (m + ls) / static_cast<double>(n_i);
  const double rhs = emp_risk_of_fj_on_i + zeta1 * pen_j;
  return lhs <= rhs;
}

SelectionOutcome select_fast(const Hierarchy& hierarchy, LossKind loss,
                             const DataSource& data, double T,
                             const ConcentrationConstants& consts,
                             const SelectOptions& opts) {
  hierarchy.validate_nested();
  const std::size_t n1 = hierarchy.samples(1, T);
  if (n1 == 0)
    throw std::invalid_argument("select_fast: budget too small for class 1");
  const std::size_t s = grid_size(consts.B, static_cast<double>(n1), opts.lambda);

  auto penbars = [&](std::size_t i) {
    const auto& cls = hierarchy.at(i);
    return penbar_fast(cls.penalty, hierarchy.schedule, i, T, s, consts,
                       opts.fast_a, opts.fast_b);
  };
  const CoarseGrid grid =
      build_coarse_grid(penbars, hierarchy.size(), opts.lambda, s, true);

  // Training phase: every grid class keeps its sample set for
  // cross-evaluation.
  struct Trained {
    std::size_t index;
    std::size_t n;
    std::vector<Sample> samples;
    Weights model;
    double emp_own;  // empirical risk of own model on own samples
    double pen;
  };
  std::vector<Trained> trained;
  SelectionOutcome out;
  out.grid = grid;
  for (std::size_t i : grid.indices) {
    const std::size_t n = hierarchy.samples(i, T / s);
    if (n == 0)
      throw std::invalid_argument("select_fast: budget too small for grid");
    Trained t;
    t.index = i;
    t.n = n;
    t.samples = data.draw(seed_phase::train, i, n);
    t.model = sgd_train(hierarchy.at(i), t.samples, loss, nullptr, opts.sgd).weights;
    t.emp_own = empirical_risk(t.model, t.samples, loss).value;
    t.pen = penalty_value(hierarchy.at(i).penalty, n);
    out.budget_used += T / static_cast<double>(s);
    trained.push_back(std::move(t));
  }

  for (const auto& t : trained)
    out.per_class.push_back({t.index, t.n, t.emp_own, t.pen, 0.0});

  // Candidate scan, largest to smallest; the smallest grid class passes
  // vacuously.
  for (std::size_t ci = trained.size(); ci-- > 0;) {
    const Trained& cand = trained[ci];
    bool ok = true;
    for (std::size_t jj = 0; jj < ci && ok; ++jj) {
      const Trained& smaller = trained[jj];
      const double emp_j_on_i =
          empirical_risk(smaller.model, cand.samples, loss).value;
      ok = fast_condition(cand.emp_own, emp_j_on_i, cand.pen, smaller.pen,
                          consts.c2, consts.m, s, cand.n, opts.zeta1,
                          opts.zeta2);
    }
    if (ok) {
      out.chosen_index = cand.index;
      out.model = cand.model;
      out.empirical_risk = cand.emp_own;
      out.score = cand.emp_own + opts.zeta1 * cand.pen;
      break;
    }
  }
  return out;
}

}  // namespace bms
