#pragma once

#include "bms/core.hpp"

namespace bms {

// Warm-startable projected-SGD state. `step_count` carries the 1/sqrt(t)
// schedule across quanta so continued passes keep decaying steps.
struct SgdState {
  Weights iterate;
  Weights average_sum;  // running sum of iterates (averaged iterate = sum/t)
  std::size_t step_count = 0;
};

struct SgdResult {
  Weights weights;  // averaged iterate
  SgdState state;   // for warm-started continuation
  double gap_estimate = 0.0;  // a-priori optimization gap bound 2 r G / sqrt(t)
};

struct SgdOptions {
  double xbound = 1.0;        // covariate scale entering the step size
  double grad_clip = 10.0;    // clip |loss'| for fast-rate losses
  std::size_t ambient_dim = 0;  // 0: infer from samples
};

// One pass (or warm-continued pass) of projected SGD over `samples` within the
// class constraint ||theta||_2 <= r, theta_j = 0 for j > d. Returns the
// averaged iterate. With no samples and no warm start, returns the zero vector.
SgdResult sgd_train(const ModelClassSpec& cls, const std::vector<Sample>& samples,
                    LossKind loss, const SgdState* warm_start = nullptr,
                    const SgdOptions& opts = {});

struct ErmResult {
  Weights weights;
  double objective = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

// High-accuracy reference minimizer over the class (many full passes until the
// relative objective change is < 1e-9). Not budget-metered; test/oracle use
// only. Throws on nonconvergence, with the best iterate in the exception-free
// variant erm_oracle_result.
ErmResult erm_oracle_result(const ModelClassSpec& cls,
                            const std::vector<Sample>& samples, LossKind loss,
                            std::size_t max_iters = 20000);
Weights erm_oracle(const ModelClassSpec& cls, const std::vector<Sample>& samples,
                   LossKind loss, std::size_t max_iters = 20000);

// Projection onto { ||theta|| <= r, theta_j = 0 for j > d }.
void project_to_class(Weights& w, double radius, std::size_t active_dims);

}  // namespace bms
