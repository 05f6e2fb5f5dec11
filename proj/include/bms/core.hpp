#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bms {

// ---------------------------------------------------------------------------
// Losses
// ---------------------------------------------------------------------------

enum class LossKind { hinge, logistic, squared, exponential, zero_one };

inline const char* loss_name(LossKind k) {
  switch (k) {
    case LossKind::hinge: return "hinge";
    case LossKind::logistic: return "logistic";
    case LossKind::squared: return "squared";
    case LossKind::exponential: return "exponential";
    case LossKind::zero_one: return "zero_one";
  }
  return "?";
}

LossKind loss_from_name(const std::string& name);

inline bool loss_is_convex(LossKind k) { return k != LossKind::zero_one; }

// Lipschitz constant of the scalar loss in its margin/prediction argument.
// Exponential is only Lipschitz on bounded margins; callers clip gradients.
inline double loss_lipschitz(LossKind k) {
  switch (k) {
    case LossKind::hinge: return 1.0;
    case LossKind::logistic: return 1.0;
    default: return 1.0;  // squared/exponential handled via gradient clipping
  }
}

// Margin losses take the product y * <theta, x>; squared loss takes (y, pred).
double loss_value(LossKind k, double y, double pred);

// d loss / d pred at (y, pred). Subgradient for hinge.
double loss_grad(LossKind k, double y, double pred);

// ---------------------------------------------------------------------------
// Samples and linear models
// ---------------------------------------------------------------------------

struct Sample {
  std::vector<double> x;
  double y = 0.0;
};

using Weights = std::vector<double>;

inline double dot(const Weights& w, const std::vector<double>& x) {
  const std::size_t n = std::min(w.size(), x.size());
  double s = 0.0;
  for (std::size_t j = 0; j < n; ++j) s += w[j] * x[j];
  return s;
}

// ---------------------------------------------------------------------------
// Penalty specs (evaluation lives in penalties.hpp)
// ---------------------------------------------------------------------------

enum class PenaltyKind { rademacher_ball, vc_dim, fast_dim, power_law };

struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::vc_dim;
  // power-law envelope parameters (Assumption on gamma_i(n) <= kappa n^-alpha)
  double kappa = 1.0;
  double alpha = 0.5;
  // kind-specific parameters
  double radius = 1.0;   // rademacher_ball
  double xbound = 1.0;   // rademacher_ball
  std::size_t dim = 1;   // vc_dim / fast_dim
  double c = 1.0;        // fast_dim scale
};

// ---------------------------------------------------------------------------
// Model classes and budget schedules
// ---------------------------------------------------------------------------

struct ModelClassSpec {
  std::size_t index = 1;           // 1-based class index
  double ball_radius = 1.0;        // r_i
  std::size_t active_dims = 1;     // d_i (coordinates allowed to be nonzero)
  double samples_per_quantum = 1;  // n_i: samples per unit of budget
  PenaltySpec penalty;
};

// Maps budget to trainable sample count per class: n_i(T) = n_scale * T / unit_cost_i.
// A single shared unit cost gives the constant-in-i schedule; per-class costs
// give the dimension-proportional one.
struct BudgetSchedule {
  double n_scale = 1.0;
  std::vector<double> unit_cost;  // unit_cost[i-1] for class i

  double raw_samples(std::size_t class_index, double budget) const {
    if (class_index == 0 || class_index > unit_cost.size())
      throw std::out_of_range("BudgetSchedule: unknown class index " +
                              std::to_string(class_index));
    return n_scale * budget / unit_cost[class_index - 1];
  }
};

// Floor of the schedule value; 0 is a legal result the caller must handle.
std::size_t samples_for_budget(const BudgetSchedule& schedule,
                               std::size_t class_index, double budget);

struct RiskEstimate {
  double value = 0.0;
  std::size_t n_samples = 0;
  std::size_t class_index = 0;
  double std_error = 0.0;  // diagnostic, populated by Monte Carlo estimators
};

struct ConcentrationConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  double m = 0.0;  // confidence parameter
  double B = 1.0;  // upper bound on the best risk of class 1
};

RiskEstimate empirical_risk(const Weights& model,
                            const std::vector<Sample>& samples, LossKind loss);

// ---------------------------------------------------------------------------
// Seed streams
// ---------------------------------------------------------------------------

// splitmix64 step; used to derive disjoint deterministic seed streams.
inline std::uint64_t mix_seed(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Streams are keyed by (master, phase, class, trial); every consumer of
// randomness must go through this so no two phases share a stream.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t phase,
                                 std::uint64_t class_index,
                                 std::uint64_t trial) {
  std::uint64_t s = mix_seed(master ^ 0xa076'1d64'78bd'642fULL);
  s = mix_seed(s ^ phase);
  s = mix_seed(s ^ (class_index * 0x100000001b3ULL));
  s = mix_seed(s ^ (trial * 0xc2b2ae3d27d4eb4fULL));
  return s;
}

// Phase tags for derive_seed.
namespace seed_phase {
constexpr std::uint64_t train = 1;
constexpr std::uint64_t eval = 2;
constexpr std::uint64_t oracle = 3;
constexpr std::uint64_t bandit = 4;
constexpr std::uint64_t heldout = 5;
}  // namespace seed_phase

}  // namespace bms
