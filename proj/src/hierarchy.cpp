#include "bms/hierarchy.hpp"

namespace bms {

void Hierarchy::validate_nested() const {
  if (classes.empty()) throw std::invalid_argument("Hierarchy: empty");
  if (classes.size() != schedule.unit_cost.size())
    throw std::invalid_argument("Hierarchy: schedule/class count mismatch");
  for (std::size_t i = 1; i < classes.size(); ++i) {
    const auto& prev = classes[i - 1];
    const auto& cur = classes[i];
    const bool radius_grows = cur.ball_radius > prev.ball_radius;
    const bool dims_grow = cur.active_dims > prev.active_dims;
    if (!radius_grows && !dims_grow)
      throw std::invalid_argument(
          "Hierarchy: structure parameters must strictly increase");
    if (schedule.unit_cost[i] < schedule.unit_cost[i - 1])
      throw std::invalid_argument(
          "Hierarchy: per-class unit costs must be nondecreasing");
  }
}

Hierarchy make_ball_hierarchy(const std::vector<double>& radii,
                              std::size_t ambient_dim, double xbound,
                              double n_scale) {
  Hierarchy h;
  h.schedule.n_scale = n_scale;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    ModelClassSpec cls;
    cls.index = i + 1;
    cls.ball_radius = radii[i];
    cls.active_dims = ambient_dim;
    cls.samples_per_quantum = n_scale / static_cast<double>(ambient_dim);
    cls.penalty.kind = PenaltyKind::rademacher_ball;
    cls.penalty.radius = radii[i];
    cls.penalty.xbound = xbound;
    cls.penalty.kappa = 2.0 * radii[i] * xbound;
    cls.penalty.alpha = 0.5;
    h.classes.push_back(cls);
    h.schedule.unit_cost.push_back(static_cast<double>(ambient_dim));
  }
  h.validate_nested();
  return h;
}

Hierarchy make_dim_hierarchy(const std::vector<std::size_t>& dims, double radius,
                             double n_scale) {
  Hierarchy h;
  h.schedule.n_scale = n_scale;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    ModelClassSpec cls;
    cls.index = i + 1;
    cls.ball_radius = radius;
    cls.active_dims = dims[i];
    cls.samples_per_quantum = n_scale / static_cast<double>(dims[i]);
    cls.penalty.kind = PenaltyKind::vc_dim;
    cls.penalty.dim = dims[i];
    cls.penalty.kappa = std::sqrt(static_cast<double>(dims[i]));
    cls.penalty.alpha = 0.5;
    h.classes.push_back(cls);
    h.schedule.unit_cost.push_back(static_cast<double>(dims[i]));
  }
  h.validate_nested();
  return h;
}

Hierarchy make_fast_hierarchy(const std::vector<std::size_t>& dims, double radius,
                              double n_scale, double c) {
  Hierarchy h = make_dim_hierarchy(dims, radius, n_scale);
  for (auto& cls : h.classes) {
    cls.penalty.kind = PenaltyKind::fast_dim;
    cls.penalty.c = c;
    cls.penalty.alpha = 0.9;  // envelope exponent; kappa set generously
    cls.penalty.kappa = 10.0 * c * static_cast<double>(cls.penalty.dim);
  }
  return h;
}

}  // namespace bms
