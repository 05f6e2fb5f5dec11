#include "bms/core.hpp"

#include <cmath>

namespace bms {

LossKind loss_from_name(const std::string& name) {
  if (name == "hinge") return LossKind::hinge;
  if (name == "logistic") return LossKind::logistic;
  if (name == "squared") return LossKind::squared;
  if (name == "exponential") return LossKind::exponential;
  if (name == "zero_one") return LossKind::zero_one;
  throw std::invalid_argument("unknown loss: " + name);
}

double loss_value(LossKind k, double y, double pred) {
  switch (k) {
    case LossKind::hinge:
      return std::max(0.0, 1.0 - y * pred);
    case LossKind::logistic: {
      const double margin = y * pred;
      // stable log(1 + exp(-margin))
      if (margin > 0) return std::log1p(std::exp(-margin));
      return -margin + std::log1p(std::exp(margin));
    }
    case LossKind::squared: {
      const double r = y - pred;
      return r * r;
    }
    case LossKind::exponential:
      return std::exp(-y * pred);
    case LossKind::zero_one:
      return y * pred <= 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

double loss_grad(LossKind k, double y, double pred) {
  switch (k) {
    case LossKind::hinge:
      return (y * pred < 1.0) ? -y : 0.0;
    case LossKind::logistic: {
      const double margin = y * pred;
      if (margin > 0) {
        const double e = std::exp(-margin);
        return -y * e / (1.0 + e);
      }
      return -y / (1.0 + std::exp(margin));
    }
    case LossKind::squared:
      return -2.0 * (y - pred);
    case LossKind::exponential:
      return -y * std::exp(-y * pred);
    case LossKind::zero_one:
      throw std::invalid_argument("zero_one loss has no gradient");
  }
  return 0.0;
}

std::size_t samples_for_budget(const BudgetSchedule& schedule,
                               std::size_t class_index, double budget) {
  if (budget < 0.0) throw std::invalid_argument("negative budget");
  const double raw = schedule.raw_samples(class_index, budget);
  return static_cast<std::size_t>(std::floor(raw));
}

RiskEstimate empirical_risk(const Weights& model,
                            const std::vector<Sample>& samples, LossKind loss) {
  if (samples.empty()) throw std::invalid_argument("empirical_risk: no samples");
  double sum = 0.0;
  for (const auto& s : samples) {
    if (s.x.size() < model.size())
      throw std::invalid_argument("empirical_risk: dimension mismatch");
    sum += loss_value(loss, s.y, dot(model, s.x));
  }
  RiskEstimate est;
  est.value = sum / static_cast<double>(samples.size());
  est.n_samples = samples.size();
  return est;
}

}  // namespace bms
