// Command-line driver: grid inspection, the three selectors, full experiment
// sweeps, and record replay.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "bms/harness.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out_dir;
  long long trials = -1;
  double budget = 0.0;
  std::string budget_sweep;  // "T0:K"
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "config file path");
  cmd->add_option("--set", args.overrides,
                  "override config values as section.key=value");
  cmd->add_option("--seed", args.seed, "master seed")->each([&](const std::string&) {
    args.seed_set = true;
  });
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--trials", args.trials, "number of trials");
  cmd->add_option("--budget", args.budget, "computational budget T");
  cmd->add_option("--budget-sweep", args.budget_sweep,
                  "geometric budget sweep T0:K (budgets T0 * 2^k, k = 0..K)");
}

bms::ExperimentConfig make_config(const CommonArgs& args,
                                  const std::string& algorithm) {
  bms::ExperimentConfig cfg;
  if (!args.config_path.empty()) cfg = bms::load_config(args.config_path);
  for (const auto& ov : args.overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--set expects section.key=value: " + ov);
    bms::apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
  }
  if (!algorithm.empty()) cfg.algorithm = algorithm;
  if (args.seed_set) cfg.seed = args.seed;
  if (args.trials >= 0) cfg.trials = static_cast<std::size_t>(args.trials);
  if (args.budget > 0) cfg.budget = args.budget;
  if (!args.budget_sweep.empty()) {
    const auto colon = args.budget_sweep.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--budget-sweep expects T0:K");
    cfg.budget = std::stod(args.budget_sweep.substr(0, colon));
    cfg.sweep_k = std::stoull(args.budget_sweep.substr(colon + 1));
  }
  return cfg;
}

int run_bench(const bms::ExperimentConfig& cfg, const std::string& out_dir,
              bool check) {
  const auto result = bms::run_experiment(cfg);
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream records(out_dir + "/records.jsonl");
    for (const auto& rec : result.records) records << rec.dump() << '\n';
    std::ofstream summary(out_dir + "/summary.csv");
    summary << result.csv_summary;
  } else {
    for (const auto& rec : result.records) std::cout << rec.dump() << '\n';
  }
  std::cerr << "cells: " << result.cells
            << "  violations: " << result.violations
            << "  frequency: " << result.violation_frequency() << '\n';
  if (check && cfg.consts.c1 > 0) {
    // High-probability gate: bound violations should occur with frequency at
    // most 2 c1 exp(-m), plus Monte Carlo slack of three binomial sigmas.
    const double theory = 2.0 * cfg.consts.c1 * std::exp(-cfg.consts.m);
    const double n = std::max<std::size_t>(result.cells, 1);
    const double slack = 3.0 * std::sqrt(theory * (1.0 - std::min(theory, 1.0)) / n);
    if (result.cells > 0 && result.violation_frequency() > theory + slack) {
      std::cerr << "acceptance check FAILED: violation frequency "
                << result.violation_frequency() << " > " << theory + slack
                << '\n';
      return 2;
    }
    std::cerr << "acceptance check passed (threshold " << theory + slack
              << ")\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computationally budgeted model selection toolkit"};
  app.require_subcommand(1);

  CommonArgs args;

  auto* grid_cmd = app.add_subcommand("grid", "print the coarse grid for a hierarchy/budget");
  add_common(grid_cmd, args);

  auto* nested_cmd = app.add_subcommand("select-nested", "budget-split selection over the coarse grid");
  add_common(nested_cmd, args);

  auto* fast_cmd = app.add_subcommand("select-fast", "fast-rate selection with cross-evaluation");
  add_common(fast_cmd, args);

  auto* bandit_cmd = app.add_subcommand("select-bandit", "optimistic per-quantum allocation");
  add_common(bandit_cmd, args);

  auto* bench_cmd = app.add_subcommand("bench", "full experiment sweep");
  add_common(bench_cmd, args);
  bool check = false;
  bench_cmd->add_flag("--check", check, "fail (exit 2) when the bound-violation frequency exceeds theory");

  auto* replay_cmd = app.add_subcommand("replay", "re-derive a result record from its logged inputs");
  add_common(replay_cmd, args);
  std::string record_line;
  replay_cmd->add_option("--record", record_line, "record JSON line to replay")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (grid_cmd->parsed()) {
      auto cfg = make_config(args, "");
      const auto problems = cfg.validate();
      if (!problems.empty()) throw std::invalid_argument("invalid config");
      std::cout << bms::grid_report(cfg, cfg.budget).dump(2) << '\n';
      return 0;
    }
    std::string algorithm;
    if (nested_cmd->parsed()) algorithm = "nested";
    if (fast_cmd->parsed()) algorithm = "fast";
    if (bandit_cmd->parsed()) algorithm = "bandit";
    if (replay_cmd->parsed()) {
      auto cfg = make_config(args, "");
      const auto rec = bms::ordered_json::parse(record_line);
      std::cout << bms::replay_record(cfg, rec).dump() << '\n';
      return 0;
    }
    auto cfg = make_config(args, algorithm);
    return run_bench(cfg, args.out_dir, check && bench_cmd->parsed());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
