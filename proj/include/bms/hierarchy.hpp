#pragma once

#include "bms/core.hpp"
#include "bms/penalties.hpp"

namespace bms {

// A nested hierarchy: classes ordered by inclusion plus the budget-to-samples
// schedule they share.
struct Hierarchy {
  std::vector<ModelClassSpec> classes;
  BudgetSchedule schedule;

  std::size_t size() const { return classes.size(); }
  const ModelClassSpec& at(std::size_t index) const {
    if (index == 0 || index > classes.size())
      throw std::out_of_range("Hierarchy: class index out of range");
    return classes[index - 1];
  }
  std::size_t samples(std::size_t index, double budget) const {
    return samples_for_budget(schedule, index, budget);
  }

  // Structure parameters strictly increase and (for per-dimension schedules)
  // sample counts strictly decrease with the index.
  void validate_nested() const;
};

// Norm-ball hierarchy with a shared ambient dimension and Rademacher
// penalties; n_i(T) = n_scale * T / d for every class.
Hierarchy make_ball_hierarchy(const std::vector<double>& radii,
                              std::size_t ambient_dim, double xbound,
                              double n_scale);

// Increasing-dimension hierarchy with VC penalties; n_i(T) = n_scale * T / d_i.
Hierarchy make_dim_hierarchy(const std::vector<std::size_t>& dims, double radius,
                             double n_scale);

// Increasing-dimension hierarchy with fast-rate penalties
// gamma_i(n) = c d_i log(n / d_i) / n.
Hierarchy make_fast_hierarchy(const std::vector<std::size_t>& dims, double radius,
                              double n_scale, double c);

}  // namespace bms
