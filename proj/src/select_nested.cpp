#include "bms/select_nested.hpp"

#include <cmath>

#include "bms/penalties.hpp"

namespace bms {

double score_nested(double emp_risk, double pen_value, double c2, double m,
                    std::size_t s, std::size_t n) {
  if (n == 0) throw std::invalid_argument("score_nested: n = 0");
  const double dn = static_cast<double>(n);
  const double ls = std::log(static_cast<double>(s));
  return emp_risk + pen_value + 0.5 * c2 * std::sqrt(m / dn) +
         0.5 * c2 * std::sqrt(ls / dn);
}

SelectionOutcome select_nested(const Hierarchy& hierarchy, LossKind loss,
                               const DataSource& data, double T,
                               const ConcentrationConstants& consts,
                               const SelectOptions& opts) {
  hierarchy.validate_nested();
  const std::size_t n1 = hierarchy.samples(1, T);
  if (n1 == 0)
    throw std::invalid_argument("select_nested: budget too small for class 1");
  const std::size_t s = grid_size(consts.B, static_cast<double>(n1), opts.lambda);

  auto penbars = [&](std::size_t i) {
    const auto& cls = hierarchy.at(i);
    return penbar(cls.penalty, hierarchy.schedule, i, T, s, consts);
  };
  const CoarseGrid grid =
      build_coarse_grid(penbars, hierarchy.size(), opts.lambda, s, true);

  SelectionOutcome out;
  out.grid = grid;
  double best_score = 0.0;
  Weights best_model;
  double best_emp = 0.0;
  for (std::size_t i : grid.indices) {
    const std::size_t n = hierarchy.samples(i, T / s);
    if (n == 0)
      throw std::invalid_argument("select_nested: budget too small for grid");
    const auto samples = data.draw(seed_phase::train, i, n);
    const auto trained =
        sgd_train(hierarchy.at(i), samples, loss, nullptr, opts.sgd);
    const double emp = empirical_risk(trained.weights, samples, loss).value;
    const double pen = penalty_value(hierarchy.at(i).penalty, n);
    const double score = score_nested(emp, pen, consts.c2, consts.m, s, n);

    out.per_class.push_back({i, n, emp, pen, score});
    out.budget_used += T / static_cast<double>(s);
    if (out.chosen_index == 0 || score < best_score - 1e-12) {
      out.chosen_index = i;
      best_score = score;
      best_model = trained.weights;
      best_emp = emp;
    }
  }
  out.score = best_score;
  out.model = std::move(best_model);
  out.empirical_risk = best_emp;
  return out;
}

std::vector<double> doubling_plan(double T0) {
  if (T0 < 1.0)
    throw std::invalid_argument("doubling_plan: budget below first round");
  std::vector<double> rounds;
  double spent = 0.0;
  double next = 1.0;
  while (spent + next <= T0) {
    rounds.push_back(next);
    spent += next;
    next *= 2.0;
  }
  return rounds;
}

namespace {

// True when every class can draw at least one sample at budget T/s, so
// select_nested cannot fail for budget reasons.
bool round_feasible(const Hierarchy& hierarchy, double T,
                    const ConcentrationConstants& consts,
                    const SelectOptions& opts) {
  const std::size_t n1 = hierarchy.samples(1, T);
  if (n1 == 0) return false;
  const std::size_t s = grid_size(consts.B, static_cast<double>(n1), opts.lambda);
  for (std::size_t i = 1; i <= hierarchy.size(); ++i)
    if (hierarchy.samples(i, T / s) == 0) return false;
  return true;
}

}  // namespace

SelectionOutcome doubling_select(const Hierarchy& hierarchy, LossKind loss,
                                 const DataSource& data, double T0,
                                 const ConcentrationConstants& consts,
                                 const SelectOptions& opts) {
  const auto plan = doubling_plan(T0);
  SelectionOutcome out;
  bool completed = false;
  double spent = 0.0;
  for (std::size_t round = 0; round < plan.size(); ++round) {
    spent += plan[round];
    // early guesses can be too small to train anything; their budget is
    // spent regardless, exactly as the doubling argument accounts for it
    if (!round_feasible(hierarchy, plan[round], consts, opts)) continue;
    // distinct data streams per round via the trial tag
    DataSource round_data(data.spec(),
                          mix_seed(data.master_seed() ^ (round + 1)),
                          data.trial());
    out = select_nested(hierarchy, loss, round_data, plan[round], consts, opts);
    completed = true;
  }
  if (!completed)
    throw std::invalid_argument(
        "doubling_select: budget too small to finish any round");
  out.budget_used = spent;
  return out;
}

}  // namespace bms
