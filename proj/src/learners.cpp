#include "bms/learners.hpp"

#include <algorithm>
#include <cmath>

namespace bms {

void project_to_class(Weights& w, double radius, std::size_t active_dims) {
  for (std::size_t j = active_dims; j < w.size(); ++j) w[j] = 0.0;
  double norm2 = 0.0;
  for (std::size_t j = 0; j < std::min(active_dims, w.size()); ++j)
    norm2 += w[j] * w[j];
  const double norm = std::sqrt(norm2);
  if (norm > radius && norm > 0.0) {
    const double scale = radius / norm;
    for (auto& v : w) v *= scale;
  }
}

namespace {

double clipped_grad(LossKind loss, double y, double pred, double clip) {
  double g = loss_grad(loss, y, pred);
  if (g > clip) g = clip;
  if (g < -clip) g = -clip;
  return g;
}

double objective(const Weights& w, const std::vector<Sample>& samples,
                 LossKind loss) {
  return empirical_risk(w, samples, loss).value;
}

}  // namespace

SgdResult sgd_train(const ModelClassSpec& cls, const std::vector<Sample>& samples,
                    LossKind loss, const SgdState* warm_start,
                    const SgdOptions& opts) {
  if (!loss_is_convex(loss))
    throw std::invalid_argument("sgd_train: loss must be convex");

  std::size_t dim = opts.ambient_dim;
  if (dim == 0) {
    if (warm_start) dim = warm_start->iterate.size();
    for (const auto& s : samples) dim = std::max(dim, s.x.size());
  }

  SgdState state;
  if (warm_start) {
    state = *warm_start;
    state.iterate.resize(dim, 0.0);
    state.average_sum.resize(dim, 0.0);
  } else {
    state.iterate.assign(dim, 0.0);
    state.average_sum.assign(dim, 0.0);
  }

  if (samples.empty() && !warm_start) {
    SgdResult res;
    res.weights.assign(dim, 0.0);
    res.state = state;
    return res;
  }

  // eta_t = r / (G sqrt(t)) with G = L * xbound the gradient norm bound.
  const double G =
      std::max(1e-12, loss_lipschitz(loss) * std::max(opts.xbound, 1e-12));
  const double r = cls.ball_radius;
  const std::size_t d = std::min(cls.active_dims, dim);

  for (const auto& s : samples) {
    ++state.step_count;
    const double eta = r / (G * std::sqrt(static_cast<double>(state.step_count)));
    const double g = clipped_grad(loss, s.y, dot(state.iterate, s.x),
                                  opts.grad_clip);
    if (g != 0.0) {
      const std::size_t lim = std::min(d, s.x.size());
      for (std::size_t j = 0; j < lim; ++j) state.iterate[j] -= eta * g * s.x[j];
    }
    project_to_class(state.iterate, r, d);
    for (std::size_t j = 0; j < dim; ++j)
      state.average_sum[j] += state.iterate[j];
  }

  SgdResult res;
  res.state = state;
  res.weights.assign(dim, 0.0);
  if (state.step_count > 0) {
    for (std::size_t j = 0; j < dim; ++j)
      res.weights[j] = state.average_sum[j] / static_cast<double>(state.step_count);
    project_to_class(res.weights, r, d);
    res.gap_estimate = 2.0 * r * G / std::sqrt(static_cast<double>(state.step_count));
  }
  return res;
}

ErmResult erm_oracle_result(const ModelClassSpec& cls,
                            const std::vector<Sample>& samples, LossKind loss,
                            std::size_t max_iters) {
  if (!loss_is_convex(loss))
    throw std::invalid_argument("erm_oracle: loss must be convex");
  if (samples.empty()) throw std::invalid_argument("erm_oracle: no samples");
  if (samples.size() > 100000)
    throw std::invalid_argument("erm_oracle: sample count too large");

  std::size_t dim = 0;
  for (const auto& s : samples) dim = std::max(dim, s.x.size());
  const std::size_t d = std::min(cls.active_dims, dim);
  const double r = cls.ball_radius;
  const double inv_n = 1.0 / static_cast<double>(samples.size());

  Weights w(dim, 0.0);
  Weights grad(dim, 0.0);

  auto full_gradient = [&](const Weights& wt) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (const auto& s : samples) {
      const double g = loss_grad(loss, s.y, dot(wt, s.x)) * inv_n;
      const std::size_t lim = std::min(d, s.x.size());
      for (std::size_t j = 0; j < lim; ++j) grad[j] += g * s.x[j];
    }
  };

  ErmResult res;
  res.weights = w;
  res.objective = objective(w, samples, loss);

  const bool smooth = (loss != LossKind::hinge);
  if (smooth) {
    // Projected gradient descent with backtracking.
    double step = 1.0;
    double obj = res.objective;
    for (std::size_t it = 0; it < max_iters; ++it) {
      full_gradient(w);
      Weights trial;
      double trial_obj = obj;
      bool improved = false;
      for (int bt = 0; bt < 60; ++bt) {
        trial = w;
        for (std::size_t j = 0; j < dim; ++j) trial[j] -= step * grad[j];
        project_to_class(trial, r, d);
        trial_obj = objective(trial, samples, loss);
        if (trial_obj <= obj) {
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) break;
      const double rel = (obj - trial_obj) / std::max(std::abs(obj), 1e-300);
      w = trial;
      obj = trial_obj;
      res.iterations = it + 1;
      step *= 1.3;  // cautiously regrow after successful steps
      if (rel < 1e-9) {
        res.converged = true;
        break;
      }
    }
    res.weights = w;
    res.objective = obj;
    if (!res.converged && res.iterations >= max_iters)
      return res;  // caller decides; erm_oracle() throws
    res.converged = true;
    return res;
  }

  // Hinge: projected subgradient with best-iterate tracking. Stops once the
  // best objective stalls (relative improvement < 1e-9 over a window).
  const double G = 1.0;  // |hinge'| <= 1, combined with unit-scale covariates
  double xscale = 0.0;
  for (const auto& s : samples) {
    double nx = 0.0;
    for (double v : s.x) nx += v * v;
    xscale = std::max(xscale, std::sqrt(nx));
  }
  xscale = std::max(xscale, 1e-12);

  double best_obj = res.objective;
  Weights best_w = w;
  double window_best = best_obj;
  constexpr std::size_t kWindow = 200;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    full_gradient(w);
    const double eta = r / (G * xscale * std::sqrt(static_cast<double>(it)));
    for (std::size_t j = 0; j < dim; ++j) w[j] -= eta * grad[j];
    project_to_class(w, r, d);
    const double obj = objective(w, samples, loss);
    if (obj < best_obj) {
      best_obj = obj;
      best_w = w;
    }
    res.iterations = it;
    if (it % kWindow == 0) {
      const double rel =
          (window_best - best_obj) / std::max(std::abs(window_best), 1e-300);
      if (rel < 1e-9) {
        res.converged = true;
        break;
      }
      window_best = best_obj;
    }
  }
  res.weights = best_w;
  res.objective = best_obj;
  if (res.iterations >= max_iters && !res.converged) return res;
  res.converged = true;
  return res;
}

Weights erm_oracle(const ModelClassSpec& cls, const std::vector<Sample>& samples,
                   LossKind loss, std::size_t max_iters) {
  ErmResult res = erm_oracle_result(cls, samples, loss, max_iters);
  if (!res.converged)
    throw std::runtime_error("erm_oracle: no convergence after iteration cap");
  return res.weights;
}

}  // namespace bms
