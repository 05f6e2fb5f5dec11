#include "bms/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "bms/penalties.hpp"

namespace bms {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s) {
  std::vector<std::size_t> out;
  for (const auto& it : split_list(s)) out.push_back(std::stoull(it));
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& it : split_list(s)) out.push_back(std::stod(it));
  return out;
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("bad boolean: " + v);
}

void apply_setting(ExperimentConfig& cfg, const std::string& section,
                   const std::string& key, const std::string& value) {
  auto bad = [&]() {
    throw std::invalid_argument("unknown config key: " + section + "." + key);
  };
  if (section == "hierarchy") {
    if (key == "kind") cfg.hierarchy_kind = value;
    else if (key == "dims") cfg.dims = parse_size_list(value);
    else if (key == "radii") cfg.radii = parse_double_list(value);
    else if (key == "radius") cfg.radius = std::stod(value);
    else if (key == "n_scale") cfg.n_scale = std::stod(value);
    else if (key == "fast_c") cfg.fast_c = std::stod(value);
    else bad();
  } else if (section == "generator") {
    if (key == "kind") cfg.generator.kind = datagen_from_name(value);
    else if (key == "ambient_dim") cfg.generator.ambient_dim = std::stoull(value);
    else if (key == "true_support") cfg.generator.true_support = std::stoull(value);
    else if (key == "rho") cfg.generator.rho = std::stod(value);
    else if (key == "noise") cfg.generator.label_noise = std::stod(value);
    else if (key == "xbound") cfg.generator.xbound = std::stod(value);
    else if (key == "noise_halfwidth") cfg.generator.noise_halfwidth = std::stod(value);
    else bad();
  } else if (section == "selector") {
    if (key == "algorithm") cfg.algorithm = value;
    else if (key == "loss") cfg.loss = loss_from_name(value);
    else if (key == "lambda") cfg.lambda = std::stod(value);
    else if (key == "zeta1") cfg.zeta1 = std::stod(value);
    else if (key == "zeta2") cfg.zeta2 = std::stod(value);
    else if (key == "fast_a") cfg.fast_a = std::stod(value);
    else if (key == "fast_b") cfg.fast_b = std::stod(value);
    else if (key == "bandit_anytime") cfg.bandit_anytime = parse_bool(value);
    else bad();
  } else if (section == "budget") {
    if (key == "budget") cfg.budget = std::stod(value);
    else if (key == "sweep_k") cfg.sweep_k = std::stoull(value);
    else if (key == "trials") cfg.trials = std::stoull(value);
    else bad();
  } else if (section == "constants") {
    if (key == "c1") cfg.consts.c1 = std::stod(value);
    else if (key == "c2") cfg.consts.c2 = std::stod(value);
    else if (key == "m") cfg.consts.m = std::stod(value);
    else if (key == "B") cfg.consts.B = std::stod(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "n_mc") cfg.n_mc = std::stoull(value);
    else if (key == "n_oracle") cfg.n_oracle = std::stoull(value);
    else bad();
  } else {
    throw std::invalid_argument("unknown config section: " + section);
  }
}

}  // namespace

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": expected key = value");
    apply_setting(cfg, section, trim(line.substr(0, eq)),
                  trim(line.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config: " + path);
  return parse_config(in);
}

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  const auto dotpos = key.find('.');
  if (dotpos == std::string::npos)
    throw std::invalid_argument("override key must be section.key: " + key);
  apply_setting(cfg, key.substr(0, dotpos), key.substr(dotpos + 1), value);
}

Hierarchy ExperimentConfig::build_hierarchy() const {
  if (hierarchy_kind == "dims")
    return make_dim_hierarchy(dims, radius, n_scale);
  if (hierarchy_kind == "balls")
    return make_ball_hierarchy(radii, generator.ambient_dim, generator.xbound,
                               n_scale);
  if (hierarchy_kind == "fast")
    return make_fast_hierarchy(dims, radius, n_scale, fast_c);
  throw std::invalid_argument("unknown hierarchy kind: " + hierarchy_kind);
}

SelectOptions ExperimentConfig::select_options() const {
  SelectOptions opts;
  opts.lambda = lambda;
  opts.sgd.xbound = generator.xbound;
  opts.zeta1 = zeta1;
  opts.zeta2 = zeta2;
  opts.fast_a = fast_a;
  opts.fast_b = fast_b;
  return opts;
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> problems;
  if (algorithm != "nested" && algorithm != "fast" && algorithm != "bandit" &&
      algorithm != "doubling")
    problems.push_back("selector.algorithm must be nested|fast|bandit|doubling");
  if (hierarchy_kind != "dims" && hierarchy_kind != "balls" &&
      hierarchy_kind != "fast")
    problems.push_back("hierarchy.kind must be dims|balls|fast");
  if ((hierarchy_kind == "dims" || hierarchy_kind == "fast") && dims.empty())
    problems.push_back("hierarchy.dims is empty");
  if (hierarchy_kind == "balls" && radii.empty())
    problems.push_back("hierarchy.radii is empty");
  if (budget <= 0) problems.push_back("budget.budget must be positive");
  if (n_scale <= 0) problems.push_back("hierarchy.n_scale must be positive");
  if (generator.ambient_dim == 0)
    problems.push_back("generator.ambient_dim must be positive");
  if (generator.true_support == 0 ||
      generator.true_support > generator.ambient_dim)
    problems.push_back("generator.true_support out of range");
  if (generator.label_noise < 0 || generator.label_noise >= 0.5)
    problems.push_back("generator.noise must lie in [0, 1/2)");
  if (consts.c1 <= 0 || consts.c2 < 0)
    problems.push_back("constants.c1/c2 out of range");
  if (consts.B <= 0) problems.push_back("constants.B must be positive");
  if (algorithm == "bandit") {
    for (std::size_t d : dims)
      if (n_scale / static_cast<double>(d) < 1.0)
        problems.push_back(
            "bandit: n_scale too small for one sample per quantum at dim " +
            std::to_string(d));
  }
  if (problems.empty()) {
    try {
      build_hierarchy();
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  return problems;
}

double compute_bound_rhs(BoundKind kind, const Hierarchy& hierarchy,
                         const std::vector<double>& class_risks, double T,
                         std::size_t s, const ConcentrationConstants& consts) {
  if (class_risks.size() != hierarchy.size())
    throw std::invalid_argument("compute_bound_rhs: missing class risks");
  if (s < 1) throw std::invalid_argument("compute_bound_rhs: s < 1");
  const double ls = std::log(static_cast<double>(s));
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= hierarchy.size(); ++i) {
    const std::size_t n = hierarchy.samples(i, T / s);
    if (n == 0) continue;  // class not reachable at this budget
    const double gamma = penalty_value(hierarchy.at(i).penalty, n);
    double value;
    if (kind == BoundKind::thm1) {
      value = class_risks[i - 1] + 4.0 * gamma +
              consts.c2 * std::sqrt(8.0 * (consts.m + ls) / n);
    } else {
      value = class_risks[i - 1] + 40.0 * s * gamma +
              10.0 * s * consts.c2 * (consts.m + ls) / n;
    }
    best = std::min(best, value);
  }
  if (!std::isfinite(best))
    throw std::invalid_argument("compute_bound_rhs: no class trainable at T/s");
  return best;
}

namespace {

constexpr std::uint64_t kCellPhase = 777;

std::uint64_t cell_seed(const ExperimentConfig& cfg, double T,
                        std::size_t trial) {
  return derive_seed(cfg.seed, kCellPhase,
                     static_cast<std::uint64_t>(std::llround(T * 64.0)), trial);
}

ordered_json run_cell(const ExperimentConfig& cfg, const Hierarchy& hierarchy,
                      const std::vector<double>& class_risks, double T,
                      std::size_t trial) {
  ordered_json rec;
  rec["selector"] = cfg.algorithm;
  rec["T"] = T;
  rec["trial"] = trial;
  const std::uint64_t master = cell_seed(cfg, T, trial);
  rec["seed"] = master;

  DataGenSpec gen = cfg.generator;
  gen.seed = master;
  DataSource data(gen, master, trial);
  const auto opts = cfg.select_options();

  if (cfg.algorithm == "bandit") {
    BanditOptions bopts;
    bopts.anytime_bonus = cfg.bandit_anytime;
    const auto rounds = static_cast<std::size_t>(T);
    const auto res = bandit_select(hierarchy.classes, cfg.loss, data, rounds,
                                   cfg.consts, bopts, opts.sgd);
    const auto gaps = excess_gaps(hierarchy.classes, class_risks, rounds);
    rec["chosen_index"] = res.trace.most_frequent;
    rec["counts"] = res.trace.final_counts;
    rec["samples"] = res.trace.final_samples;
    rec["gaps"] = gaps.delta;
    rec["regret"] = regret(res.trace, gaps);
    if (!res.averaged.empty()) {
      const auto risk = population_risk_mc(
          res.averaged, gen, cfg.loss, cfg.n_mc,
          derive_seed(master, seed_phase::eval, 0, trial));
      rec["risk"] = risk.value;
    }
    return rec;
  }

  SelectionOutcome out;
  if (cfg.algorithm == "nested")
    out = select_nested(hierarchy, cfg.loss, data, T, cfg.consts, opts);
  else if (cfg.algorithm == "doubling")
    out = doubling_select(hierarchy, cfg.loss, data, T, cfg.consts, opts);
  else if (cfg.algorithm == "fast")
    out = select_fast(hierarchy, cfg.loss, data, T, cfg.consts, opts);
  else
    throw std::invalid_argument("unknown algorithm: " + cfg.algorithm);

  const auto risk =
      population_risk_mc(out.model, gen, cfg.loss, cfg.n_mc,
                         derive_seed(master, seed_phase::eval, 0, trial));
  const double bound = compute_bound_rhs(
      cfg.algorithm == "fast" ? BoundKind::thm2 : BoundKind::thm1, hierarchy,
      class_risks, T, out.grid.s, cfg.consts);

  rec["chosen_index"] = out.chosen_index;
  rec["emp_risk"] = out.empirical_risk;
  rec["score"] = out.score;
  rec["risk"] = risk.value;
  rec["bound_rhs"] = bound;
  rec["violated"] = risk.value > bound;
  rec["s"] = out.grid.s;
  rec["grid"] = out.grid.indices;
  rec["budget_used"] = out.budget_used;
  ordered_json per_class = ordered_json::array();
  for (const auto& pc : out.per_class) {
    ordered_json c;
    c["index"] = pc.index;
    c["n"] = pc.n_samples;
    c["emp_risk"] = pc.empirical_risk;
    c["penalty"] = pc.penalty;
    c["score"] = pc.score;
    per_class.push_back(std::move(c));
  }
  rec["per_class"] = std::move(per_class);
  return rec;
}

std::vector<double> reference_risks(const ExperimentConfig& cfg,
                                    const Hierarchy& hierarchy) {
  DataGenSpec gen = cfg.generator;
  gen.seed = derive_seed(cfg.seed, seed_phase::oracle, 0, 0);
  const auto oracle = oracle_class_risks(gen, hierarchy.classes, cfg.loss,
                                         cfg.n_oracle,
                                         std::min<std::size_t>(cfg.n_mc, 1000000));
  std::vector<double> risks;
  risks.reserve(oracle.size());
  for (const auto& o : oracle) risks.push_back(o.risk);
  return risks;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  const auto problems = cfg.validate();
  if (!problems.empty()) {
    std::string msg = "invalid config:";
    for (const auto& p : problems) msg += "\n  - " + p;
    throw std::invalid_argument(msg);
  }

  ExperimentResult result;
  std::ostringstream csv;
  csv << "selector,T,trial,chosen_index,risk,bound_rhs,violated\n";
  if (cfg.trials == 0) {
    result.csv_summary = csv.str();
    return result;
  }

  const Hierarchy hierarchy = cfg.build_hierarchy();
  const auto risks = reference_risks(cfg, hierarchy);

  for (std::size_t k = 0; k <= cfg.sweep_k; ++k) {
    const double T = cfg.budget * std::pow(2.0, static_cast<double>(k));
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      ordered_json rec = run_cell(cfg, hierarchy, risks, T, trial);
      const bool has_bound = rec.contains("violated");
      csv << cfg.algorithm << ',' << T << ',' << trial << ','
          << rec["chosen_index"].get<std::size_t>() << ','
          << (rec.contains("risk") ? rec["risk"].dump() : "") << ','
          << (has_bound ? rec["bound_rhs"].dump() : "") << ','
          << (has_bound ? (rec["violated"].get<bool>() ? "1" : "0") : "")
          << '\n';
      if (has_bound) {
        ++result.cells;
        if (rec["violated"].get<bool>()) ++result.violations;
      }
      result.records.push_back(std::move(rec));
    }
  }
  result.csv_summary = csv.str();
  return result;
}

ordered_json replay_record(const ExperimentConfig& cfg,
                           const ordered_json& record) {
  const double T = record.at("T").get<double>();
  const auto trial = record.at("trial").get<std::size_t>();
  const Hierarchy hierarchy = cfg.build_hierarchy();
  const auto risks = reference_risks(cfg, hierarchy);
  return run_cell(cfg, hierarchy, risks, T, trial);
}

ordered_json grid_report(const ExperimentConfig& cfg, double T) {
  const Hierarchy hierarchy = cfg.build_hierarchy();
  const std::size_t n1 = hierarchy.samples(1, T);
  if (n1 == 0) throw std::invalid_argument("grid_report: budget too small");
  const std::size_t s =
      grid_size(cfg.consts.B, static_cast<double>(n1), cfg.lambda);
  const bool fast = cfg.algorithm == "fast";
  auto penbars = [&](std::size_t i) {
    const auto& cls = hierarchy.at(i);
    return fast ? penbar_fast(cls.penalty, hierarchy.schedule, i, T, s,
                              cfg.consts, cfg.fast_a, cfg.fast_b)
                : penbar(cls.penalty, hierarchy.schedule, i, T, s, cfg.consts);
  };
  const CoarseGrid grid =
      build_coarse_grid(penbars, hierarchy.size(), cfg.lambda, s, true);

  ordered_json rep;
  rep["T"] = T;
  rep["s"] = s;
  rep["lambda"] = cfg.lambda;
  rep["k_lambda"] = grid.k_lambda;
  rep["indices"] = grid.indices;
  ordered_json thresholds = ordered_json::array();
  const double base = penbars(1);
  for (std::size_t k = 0; k < s; ++k)
    thresholds.push_back(base * std::pow(1.0 + cfg.lambda, static_cast<double>(k)));
  rep["thresholds"] = std::move(thresholds);
  ordered_json values = ordered_json::array();
  for (std::size_t i = 1; i <= hierarchy.size(); ++i) values.push_back(penbars(i));
  rep["penbar"] = std::move(values);
  return rep;
}

}  // namespace bms
