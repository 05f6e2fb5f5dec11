#pragma once

#include <memory>

#include "bms/datagen.hpp"
#include "bms/hierarchy.hpp"
#include "bms/learners.hpp"

namespace bms {

// Optimistic per-round selection criterion:
//   emp_risk(n) - pen(n) - sqrt(log K / n) + pen(T * n_rate).
double obj_criterion(double emp_risk_n, double pen_at_n, double pen_at_Tn,
                     std::size_t K, std::size_t n);

struct BanditRound {
  std::size_t t = 0;
  std::size_t chosen = 0;          // 1-based class index
  double criterion = 0.0;          // winning criterion value
  std::vector<std::size_t> counts; // T_i(t) after the round
};

struct BanditTrace {
  std::size_t rounds = 0;                // T
  std::size_t num_classes = 0;           // K
  std::vector<BanditRound> log;          // one record per round
  std::vector<std::size_t> final_counts; // T_i(T)
  std::vector<std::size_t> final_samples;  // n_i(T) = n_i * T_i(T)
  std::size_t most_frequent = 0;         // i-hat, ties to the smallest index
};

struct ExcessGap {
  std::vector<double> delta;  // per class, 0 at the optimum
};

// One incrementally trainable class. A pull consumes one quantum (n_rate
// fresh samples) and must keep empirical_risk() current over all samples seen.
class BanditArm {
 public:
  virtual ~BanditArm() = default;
  virtual void pull(std::size_t round) = 0;
  virtual double empirical_risk() const = 0;
  virtual std::size_t samples_seen() const = 0;
  virtual std::size_t samples_per_quantum() const = 0;
  virtual const PenaltySpec& penalty() const = 0;
  // Current model padded to a common ambient dimension (empty if the arm has
  // no model to average).
  virtual Weights snapshot() const = 0;
};

// Warm-started SGD over a model class; retains its samples so the empirical
// risk covers everything seen so far.
class SgdBanditArm : public BanditArm {
 public:
  SgdBanditArm(ModelClassSpec cls, LossKind loss, DataSource data,
               std::size_t n_rate, SgdOptions opts = {});
  void pull(std::size_t round) override;
  double empirical_risk() const override { return emp_risk_; }
  std::size_t samples_seen() const override { return samples_.size(); }
  std::size_t samples_per_quantum() const override { return n_rate_; }
  const PenaltySpec& penalty() const override { return cls_.penalty; }
  Weights snapshot() const override { return current_; }

 private:
  ModelClassSpec cls_;
  LossKind loss_;
  DataSource data_;
  std::size_t n_rate_;
  SgdOptions opts_;
  std::vector<Sample> samples_;
  SgdState state_;
  Weights current_;
  double emp_risk_ = 0.0;
};

// Test/benchmark arm: each sample is an i.i.d. bounded loss draw with a known
// mean, so gaps are known by construction and updates are O(1).
class SyntheticBanditArm : public BanditArm {
 public:
  SyntheticBanditArm(double mean_loss, double noise_halfwidth,
                     std::size_t n_rate, PenaltySpec penalty,
                     std::uint64_t seed);
  void pull(std::size_t round) override;
  double empirical_risk() const override;
  std::size_t samples_seen() const override { return n_seen_; }
  std::size_t samples_per_quantum() const override { return n_rate_; }
  const PenaltySpec& penalty() const override { return penalty_; }
  Weights snapshot() const override { return {}; }

 private:
  double mean_;
  double halfwidth_;
  std::size_t n_rate_;
  PenaltySpec penalty_;
  std::uint64_t seed_;
  std::size_t n_seen_ = 0;
  double loss_sum_ = 0.0;
};

struct BanditOptions {
  bool anytime_bonus = true;  // log t in the per-round bonus (log T otherwise)
  bool keep_snapshots = true; // collect f_t for averaging
  bool collect_all_snapshots = false;  // keep every f_t (tests/averaging audit)
};

struct BanditResult {
  BanditTrace trace;
  Weights averaged;  // f-bar = (1/T) sum_t f_t; empty without snapshots
  std::vector<Weights> snapshots;  // per-round f_t when collect_all_snapshots
};

// Algorithm: one quantum per class in rounds 1..K, then argmin over classes of
//   obj_criterion(i, n_i(t)) - c2 sqrt(log t / n_i(t))
// with ties to the smallest index. Requires T >= K.
BanditResult bandit_run(std::vector<std::unique_ptr<BanditArm>>& arms,
                        std::size_t T, const ConcentrationConstants& consts,
                        const BanditOptions& opts = {});

// Convenience wrapper building SGD arms from the class specs.
BanditResult bandit_select(const std::vector<ModelClassSpec>& classes,
                           LossKind loss, const DataSource& data, std::size_t T,
                           const ConcentrationConstants& consts,
                           const BanditOptions& opts = {},
                           const SgdOptions& sgd = {});

// Excess penalized risks Delta_i from reference per-class risks.
ExcessGap excess_gaps(const std::vector<ModelClassSpec>& classes,
                      const std::vector<double>& oracle_risks, std::size_t T);

// Sum_i Delta_i T_i(T).
double regret(const BanditTrace& trace, const ExcessGap& gaps);

}  // namespace bms
