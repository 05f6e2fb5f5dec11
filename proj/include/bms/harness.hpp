#pragma once

#include <iosfwd>
#include <map>

#include "json.hpp"

#include "bms/bandit.hpp"
#include "bms/datagen.hpp"
#include "bms/select_fast.hpp"
#include "bms/select_nested.hpp"

namespace bms {

using ordered_json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

// Experiment configuration; maps 1:1 onto the sectioned config file format
// ([hierarchy], [generator], [selector], [budget], [constants]).
struct ExperimentConfig {
  // [hierarchy]
  std::string hierarchy_kind = "dims";  // dims | balls | fast
  std::vector<std::size_t> dims = {1, 2, 4, 8, 16};
  std::vector<double> radii = {0.5, 1, 2, 4};
  double radius = 1.0;   // shared radius for dims/fast hierarchies
  double n_scale = 1.0;  // samples per budget unit before dividing by cost
  double fast_c = 1.0;
  // [generator]
  DataGenSpec generator;
  // [selector]
  std::string algorithm = "nested";  // nested | fast | bandit | doubling
  LossKind loss = LossKind::hinge;
  double lambda = 1.0;
  double zeta1 = 17.0 / 2.0;
  double zeta2 = 7.0 / 2.0;
  double fast_a = 20.0;
  double fast_b = 10.0;
  bool bandit_anytime = true;
  // [budget]
  double budget = 1024.0;
  std::size_t sweep_k = 0;  // run budgets budget * 2^k for k = 0..sweep_k
  std::size_t trials = 10;
  // [constants]
  ConcentrationConstants consts;
  std::uint64_t seed = 12345;
  std::size_t n_mc = 200000;      // Monte Carlo size for risk evaluation
  std::size_t n_oracle = 20000;   // ERM reference sample size

  Hierarchy build_hierarchy() const;
  SelectOptions select_options() const;
  // All validation problems at once; empty when valid.
  std::vector<std::string> validate() const;
};

// Parse the sectioned key = value config format. Unknown keys are an error.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);
// Apply "section.key=value" overrides (CLI flags).
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

enum class BoundKind { thm1, thm2 };

// Oracle-inequality right-hand side, minimized over classes with reference
// risks:
//   thm1: R_i* + 4 gamma_i(n_i(T/s)) + c2 sqrt(8 (m + log s) / n_i(T/s))
//   thm2: R_i* + 40 s gamma_i(n_i(T/s)) + 10 s c2 (m + log s) / n_i(T/s)
double compute_bound_rhs(BoundKind kind, const Hierarchy& hierarchy,
                         const std::vector<double>& class_risks, double T,
                         std::size_t s, const ConcentrationConstants& consts);

// ---------------------------------------------------------------------------
// Experiment driver
// ---------------------------------------------------------------------------

struct ExperimentResult {
  std::vector<ordered_json> records;  // one per (budget, trial) cell
  std::string csv_summary;
  std::size_t violations = 0;  // trials with risk above the bound
  std::size_t cells = 0;
  double violation_frequency() const {
    return cells == 0 ? 0.0 : static_cast<double>(violations) / cells;
  }
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Re-run the (T, trial) cell described by `record` under `cfg` and return the
// freshly derived record; replay equality is exact for a matching config.
ordered_json replay_record(const ExperimentConfig& cfg,
                           const ordered_json& record);

// Grid dump for inspection: indices, thresholds, composite penalty values.
ordered_json grid_report(const ExperimentConfig& cfg, double T);

}  // namespace bms
