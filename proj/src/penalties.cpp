#include "bms/penalties.hpp"

#include <cmath>

namespace bms {

double rademacher_ball_penalty(double r, double xbound, std::size_t n) {
  if (n == 0) throw std::invalid_argument("rademacher_ball_penalty: n = 0");
  if (r < 0 || xbound < 0)
    throw std::invalid_argument("rademacher_ball_penalty: negative parameter");
  return 2.0 * r * xbound / std::sqrt(static_cast<double>(n));
}

double vc_penalty(std::size_t d, std::size_t n) {
  if (n == 0) throw std::invalid_argument("vc_penalty: n = 0");
  if (d == 0) throw std::invalid_argument("vc_penalty: d = 0");
  return std::sqrt(static_cast<double>(d) / static_cast<double>(n));
}

double fast_penalty(double c, std::size_t d, std::size_t n) {
  if (c <= 0) throw std::invalid_argument("fast_penalty: c <= 0");
  if (d == 0) throw std::invalid_argument("fast_penalty: d = 0");
  if (n <= d)
    throw std::invalid_argument("fast_penalty: undefined below d samples");
  const double dn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  return c * dd * std::log(dn / dd) / dn;
}

double power_law_penalty(double kappa, double alpha, std::size_t n) {
  if (n == 0) throw std::invalid_argument("power_law_penalty: n = 0");
  return kappa * std::pow(static_cast<double>(n), -alpha);
}

double penalty_value(const PenaltySpec& pen, std::size_t n) {
  switch (pen.kind) {
    case PenaltyKind::rademacher_ball:
      return rademacher_ball_penalty(pen.radius, pen.xbound, n);
    case PenaltyKind::vc_dim:
      return vc_penalty(pen.dim, n);
    case PenaltyKind::fast_dim:
      return fast_penalty(pen.c, pen.dim, n);
    case PenaltyKind::power_law:
      return power_law_penalty(pen.kappa, pen.alpha, n);
  }
  throw std::logic_error("penalty_value: bad kind");
}

double penbar(const PenaltySpec& pen, const BudgetSchedule& schedule,
              std::size_t class_index, double T, std::size_t s,
              const ConcentrationConstants& consts) {
  if (s < 1) throw std::invalid_argument("penbar: s < 1");
  const std::size_t n = samples_for_budget(schedule, class_index, T / s);
  if (n == 0)
    throw std::invalid_argument("penbar: zero samples at budget T/s for class " +
                                std::to_string(class_index));
  const double ls = std::log(static_cast<double>(s));
  return 2.0 * penalty_value(pen, n) +
         consts.c2 * std::sqrt(2.0 * (consts.m + ls) / n);
}

double penbar_fast(const PenaltySpec& pen, const BudgetSchedule& schedule,
                   std::size_t class_index, double T, std::size_t s,
                   const ConcentrationConstants& consts, double a, double b) {
  if (s < 1) throw std::invalid_argument("penbar_fast: s < 1");
  const std::size_t n = samples_for_budget(schedule, class_index, T / s);
  if (n == 0)
    throw std::invalid_argument(
        "penbar_fast: zero samples at budget T/s for class " +
        std::to_string(class_index));
  const double ls = std::log(static_cast<double>(s));
  return a * penalty_value(pen, n) + b * (consts.c2 * consts.m + 2.0 * ls) / n;
}

}  // namespace bms
