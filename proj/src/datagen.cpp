#include "bms/datagen.hpp"

#include <cmath>
#include <random>

namespace bms {

DataGenKind datagen_from_name(const std::string& name) {
  if (name == "nested_ball_margin") return DataGenKind::nested_ball_margin;
  if (name == "nested_dims") return DataGenKind::nested_dims;
  if (name == "fast_rate_regression") return DataGenKind::fast_rate_regression;
  throw std::invalid_argument("unknown generator kind: " + name);
}

const char* datagen_name(DataGenKind k) {
  switch (k) {
    case DataGenKind::nested_ball_margin: return "nested_ball_margin";
    case DataGenKind::nested_dims: return "nested_dims";
    case DataGenKind::fast_rate_regression: return "fast_rate_regression";
  }
  return "?";
}

Weights DataGenSpec::true_weights() const {
  if (true_support > ambient_dim)
    throw std::invalid_argument("DataGenSpec: true_support > ambient_dim");
  Weights w(ambient_dim, 0.0);
  const double v = rho / std::sqrt(static_cast<double>(true_support));
  for (std::size_t j = 0; j < true_support; ++j) w[j] = v;
  return w;
}

double DataGenSpec::bayes_risk() const {
  if (kind == DataGenKind::fast_rate_regression) {
    // uniform noise on [-h, h]: variance h^2 / 3
    return noise_halfwidth * noise_halfwidth / 3.0;
  }
  return label_noise;
}

namespace {

void validate(const DataGenSpec& spec) {
  if (spec.ambient_dim == 0)
    throw std::invalid_argument("DataGenSpec: ambient_dim = 0");
  if (spec.true_support == 0 || spec.true_support > spec.ambient_dim)
    throw std::invalid_argument("DataGenSpec: bad true_support");
  if (spec.label_noise < 0 || spec.label_noise >= 0.5)
    throw std::invalid_argument("DataGenSpec: label_noise outside [0, 1/2)");
  if (spec.xbound <= 0) throw std::invalid_argument("DataGenSpec: xbound <= 0");
  if (spec.rho <= 0) throw std::invalid_argument("DataGenSpec: rho <= 0");
}

// Uniform point on the sphere of radius `radius` in R^d.
std::vector<double> sphere_point(std::mt19937_64& rng, std::size_t d,
                                 double radius) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> x(d);
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& v : x) {
      v = normal(rng);
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double scale = radius / std::sqrt(norm2);
  for (auto& v : x) v *= scale;
  return x;
}

}  // namespace

std::vector<Sample> generate(const DataGenSpec& spec, std::size_t n,
                             std::uint64_t seed_override, bool use_override) {
  validate(spec);
  if (n == 0) throw std::invalid_argument("generate: n = 0");
  std::mt19937_64 rng(use_override ? seed_override : spec.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const Weights truth = spec.true_weights();

  std::vector<Sample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Sample s;
    s.x = sphere_point(rng, spec.ambient_dim, spec.xbound);
    if (spec.kind == DataGenKind::fast_rate_regression) {
      const double noise = (2.0 * unif(rng) - 1.0) * spec.noise_halfwidth;
      s.y = dot(truth, s.x) + noise;
    } else {
      const double margin = dot(truth, s.x);
      double y = margin >= 0.0 ? 1.0 : -1.0;
      if (unif(rng) < spec.label_noise) y = -y;
      s.y = y;
    }
    out.push_back(std::move(s));
  }
  return out;
}

RiskEstimate population_risk_mc(const Weights& model, const DataGenSpec& spec,
                                LossKind loss, std::size_t n_mc,
                                std::uint64_t seed) {
  if (n_mc == 0) throw std::invalid_argument("population_risk_mc: n_mc = 0");
  const auto samples = generate(spec, n_mc, seed, true);
  double sum = 0.0, sumsq = 0.0;
  for (const auto& s : samples) {
    const double v = loss_value(loss, s.y, dot(model, s.x));
    sum += v;
    sumsq += v * v;
  }
  RiskEstimate est;
  est.n_samples = n_mc;
  est.value = sum / n_mc;
  const double var = std::max(0.0, sumsq / n_mc - est.value * est.value);
  est.std_error = std::sqrt(var / n_mc);
  return est;
}

std::vector<OracleRisk> oracle_class_risks(
    const DataGenSpec& spec, const std::vector<ModelClassSpec>& hierarchy,
    LossKind loss, std::size_t n_oracle, std::size_t n_mc) {
  if (n_oracle < 1) throw std::invalid_argument("oracle_class_risks: n_oracle = 0");
  std::vector<OracleRisk> out;
  out.reserve(hierarchy.size());
  for (const auto& cls : hierarchy) {
    const auto train = generate(
        spec, n_oracle,
        derive_seed(spec.seed, seed_phase::oracle, cls.index, 0), true);
    const Weights w = erm_oracle(cls, train, loss);
    const RiskEstimate pop = population_risk_mc(
        w, spec, loss, n_mc,
        derive_seed(spec.seed, seed_phase::oracle, cls.index, 1));
    out.push_back({cls.index, pop.value, pop.std_error});
  }
  return out;
}

}  // namespace bms
