#include "bms/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "bms/penalties.hpp"

namespace bms {

double obj_criterion(double emp_risk_n, double pen_at_n, double pen_at_Tn,
                     std::size_t K, std::size_t n) {
  if (n == 0) throw std::invalid_argument("obj_criterion: n = 0");
  if (K == 0) throw std::invalid_argument("obj_criterion: K = 0");
  const double dn = static_cast<double>(n);
  return emp_risk_n - pen_at_n - std::sqrt(std::log(static_cast<double>(K)) / dn) +
         pen_at_Tn;
}

// ---------------------------------------------------------------------------
// Arms
// ---------------------------------------------------------------------------

SgdBanditArm::SgdBanditArm(ModelClassSpec cls, LossKind loss, DataSource data,
                           std::size_t n_rate, SgdOptions opts)
    : cls_(std::move(cls)),
      loss_(loss),
      data_(std::move(data)),
      n_rate_(n_rate),
      opts_(opts) {
  if (n_rate_ == 0) throw std::invalid_argument("SgdBanditArm: n_rate = 0");
}

void SgdBanditArm::pull(std::size_t round) {
  const std::uint64_t pull_index = samples_.size() / n_rate_;
  const std::uint64_t seed =
      mix_seed(derive_seed(data_.master_seed(), seed_phase::bandit, cls_.index,
                           data_.trial()) ^
               pull_index);
  (void)round;
  auto fresh = generate(data_.spec(), n_rate_, seed, true);
  const SgdState* warm = samples_.empty() ? nullptr : &state_;
  auto res = sgd_train(cls_, fresh, loss_, warm, opts_);
  state_ = std::move(res.state);
  current_ = std::move(res.weights);
  samples_.insert(samples_.end(), std::make_move_iterator(fresh.begin()),
                  std::make_move_iterator(fresh.end()));
  emp_risk_ = bms::empirical_risk(current_, samples_, loss_).value;
}

SyntheticBanditArm::SyntheticBanditArm(double mean_loss, double noise_halfwidth,
                                       std::size_t n_rate, PenaltySpec penalty,
                                       std::uint64_t seed)
    : mean_(mean_loss),
      halfwidth_(noise_halfwidth),
      n_rate_(n_rate),
      penalty_(penalty),
      seed_(seed) {
  if (n_rate_ == 0) throw std::invalid_argument("SyntheticBanditArm: n_rate = 0");
}

void SyntheticBanditArm::pull(std::size_t round) {
  (void)round;
  const std::uint64_t pull_index = n_seen_ / n_rate_;
  std::mt19937_64 rng(mix_seed(seed_ ^ pull_index));
  std::uniform_real_distribution<double> unif(-halfwidth_, halfwidth_);
  for (std::size_t k = 0; k < n_rate_; ++k) loss_sum_ += mean_ + unif(rng);
  n_seen_ += n_rate_;
}

double SyntheticBanditArm::empirical_risk() const {
  if (n_seen_ == 0) return 0.0;
  return loss_sum_ / static_cast<double>(n_seen_);
}

// ---------------------------------------------------------------------------
// Round loop
// ---------------------------------------------------------------------------

BanditResult bandit_run(std::vector<std::unique_ptr<BanditArm>>& arms,
                        std::size_t T, const ConcentrationConstants& consts,
                        const BanditOptions& opts) {
  const std::size_t K = arms.size();
  if (K == 0) throw std::invalid_argument("bandit_run: no arms");
  if (T < K) throw std::invalid_argument("bandit_run: budget below exploration floor");

  BanditResult result;
  BanditTrace& trace = result.trace;
  trace.rounds = T;
  trace.num_classes = K;
  trace.final_counts.assign(K, 0);
  trace.log.reserve(T);

  Weights snapshot_sum;
  std::size_t snapshot_count = 0;
  auto record_snapshot = [&](const BanditArm& arm) {
    if (!opts.keep_snapshots) return;
    Weights snap = arm.snapshot();
    if (snap.empty()) return;
    if (snap.size() > snapshot_sum.size()) snapshot_sum.resize(snap.size(), 0.0);
    for (std::size_t j = 0; j < snap.size(); ++j) snapshot_sum[j] += snap[j];
    ++snapshot_count;
    if (opts.collect_all_snapshots) result.snapshots.push_back(std::move(snap));
  };

  auto do_round = [&](std::size_t t, std::size_t chosen, double criterion) {
    arms[chosen]->pull(t);
    ++trace.final_counts[chosen];
    record_snapshot(*arms[chosen]);
    BanditRound r;
    r.t = t;
    r.chosen = chosen + 1;
    r.criterion = criterion;
    r.counts = trace.final_counts;
    trace.log.push_back(std::move(r));
  };

  // initialization: one quantum per class, counted against the round budget
  for (std::size_t t = 1; t <= K; ++t) do_round(t, t - 1, 0.0);

  const double log_T = std::log(static_cast<double>(T));
  for (std::size_t t = K + 1; t <= T; ++t) {
    const double log_t =
        opts.anytime_bonus ? std::log(static_cast<double>(t)) : log_T;
    std::size_t best = 0;
    double best_val = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      const BanditArm& arm = *arms[i];
      const std::size_t n = arm.samples_seen();
      const std::size_t n_total = T * arm.samples_per_quantum();
      const double pen_n = penalty_value(arm.penalty(), n);
      const double pen_Tn = penalty_value(arm.penalty(), n_total);
      const double phi =
          obj_criterion(arm.empirical_risk(), pen_n, pen_Tn, K, n) -
          consts.c2 * std::sqrt(log_t / static_cast<double>(n));
      if (i == 0 || phi < best_val - 1e-15) {
        best = i;
        best_val = phi;
      }
    }
    do_round(t, best, best_val);
  }

  trace.final_samples.resize(K);
  for (std::size_t i = 0; i < K; ++i)
    trace.final_samples[i] = trace.final_counts[i] * arms[i]->samples_per_quantum();
  trace.most_frequent =
      1 + static_cast<std::size_t>(
              std::max_element(trace.final_counts.begin(),
                               trace.final_counts.end()) -
              trace.final_counts.begin());

  if (snapshot_count > 0) {
    result.averaged = snapshot_sum;
    for (auto& v : result.averaged) v /= static_cast<double>(snapshot_count);
  }
  return result;
}

BanditResult bandit_select(const std::vector<ModelClassSpec>& classes,
                           LossKind loss, const DataSource& data, std::size_t T,
                           const ConcentrationConstants& consts,
                           const BanditOptions& opts, const SgdOptions& sgd) {
  if (classes.size() < 1) throw std::invalid_argument("bandit_select: no classes");
  std::vector<std::unique_ptr<BanditArm>> arms;
  arms.reserve(classes.size());
  for (const auto& cls : classes) {
    const auto n_rate = static_cast<std::size_t>(cls.samples_per_quantum);
    if (n_rate == 0)
      throw std::invalid_argument("bandit_select: class rate below one sample");
    arms.push_back(
        std::make_unique<SgdBanditArm>(cls, loss, data, n_rate, sgd));
  }
  return bandit_run(arms, T, consts, opts);
}

ExcessGap excess_gaps(const std::vector<ModelClassSpec>& classes,
                      const std::vector<double>& oracle_risks, std::size_t T) {
  if (classes.size() != oracle_risks.size())
    throw std::invalid_argument("excess_gaps: size mismatch");
  std::vector<double> penalized(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto n_total = static_cast<std::size_t>(
        static_cast<double>(T) * classes[i].samples_per_quantum);
    penalized[i] = oracle_risks[i] + penalty_value(classes[i].penalty, n_total);
  }
  const double best = *std::min_element(penalized.begin(), penalized.end());
  ExcessGap gaps;
  gaps.delta.resize(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    gaps.delta[i] = penalized[i] - best;
  return gaps;
}

double regret(const BanditTrace& trace, const ExcessGap& gaps) {
  if (gaps.delta.size() != trace.final_counts.size())
    throw std::invalid_argument("regret: gaps do not cover all classes");
  double total = 0.0;
  for (std::size_t i = 0; i < gaps.delta.size(); ++i)
    total += gaps.delta[i] * static_cast<double>(trace.final_counts[i]);
  return total;
}

}  // namespace bms
