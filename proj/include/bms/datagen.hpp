#pragma once

#include "bms/core.hpp"
#include "bms/learners.hpp"

namespace bms {

enum class DataGenKind { nested_ball_margin, nested_dims, fast_rate_regression };

DataGenKind datagen_from_name(const std::string& name);
const char* datagen_name(DataGenKind k);

// Seeded synthetic distribution with analytically known Bayes risk.
//   nested_ball_margin / nested_dims: x uniform on the sphere of radius
//     xbound (second-moment bound holds exactly), y = sign(<theta*, x>)
//     flipped with probability label_noise; theta* has norm rho supported on
//     the first true_support coordinates.
//   fast_rate_regression: y = <theta*, x> + uniform noise on
//     [-noise_halfwidth, noise_halfwidth]; squared loss.
struct DataGenSpec {
  DataGenKind kind = DataGenKind::nested_dims;
  std::size_t ambient_dim = 2;
  std::size_t true_support = 1;
  double rho = 1.0;          // norm of the true weight vector
  double label_noise = 0.0;  // eta in [0, 1/2)
  double xbound = 1.0;
  double noise_halfwidth = 0.5;  // regression noise half-width
  std::uint64_t seed = 0;

  Weights true_weights() const;
  // Bayes zero_one risk (classification kinds) or Bayes squared risk.
  double bayes_risk() const;
};

// n i.i.d. samples, deterministic in (spec, seed, n). seed_override replaces
// spec.seed when nonzero streams are derived per (class, trial, phase).
std::vector<Sample> generate(const DataGenSpec& spec, std::size_t n,
                             std::uint64_t seed_override = 0,
                             bool use_override = false);

// Monte Carlo stand-in for the population risk R(f).
RiskEstimate population_risk_mc(const Weights& model, const DataGenSpec& spec,
                                LossKind loss, std::size_t n_mc,
                                std::uint64_t seed);

struct OracleRisk {
  std::size_t class_index = 0;
  double risk = 0.0;      // population risk of the per-class ERM reference
  double mc_stderr = 0.0;
};

// Per-class reference risks R_i*: brute-force ERM on n_oracle samples, then
// Monte Carlo population risk on fresh draws.
std::vector<OracleRisk> oracle_class_risks(const DataGenSpec& spec,
                                           const std::vector<ModelClassSpec>& hierarchy,
                                           LossKind loss, std::size_t n_oracle,
                                           std::size_t n_mc = 1000000);

// Deterministic seeded data source handed to the selectors; draw() streams are
// disjoint across (phase, class, trial) keys.
class DataSource {
 public:
  DataSource(DataGenSpec spec, std::uint64_t master_seed, std::size_t trial = 0)
      : spec_(std::move(spec)), master_(master_seed), trial_(trial) {}

  std::vector<Sample> draw(std::uint64_t phase, std::size_t class_index,
                           std::size_t n) const {
    return generate(spec_, n,
                    derive_seed(master_, phase, class_index, trial_), true);
  }

  const DataGenSpec& spec() const { return spec_; }
  std::uint64_t master_seed() const { return master_; }
  std::size_t trial() const { return trial_; }

 private:
  DataGenSpec spec_;
  std::uint64_t master_;
  std::size_t trial_;
};

}  // namespace bms
