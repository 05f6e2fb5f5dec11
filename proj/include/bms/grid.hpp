#pragma once

#include <functional>
#include <optional>

#include "bms/core.hpp"

namespace bms {

// Coarse-grid index set over a nested hierarchy. Indices are 1-based, strictly
// increasing, and always start at 1; duplicate threshold hits are collapsed so
// |indices| <= s.
struct CoarseGrid {
  std::vector<std::size_t> indices;
  std::size_t s = 0;       // nominal grid size (budget divides by this)
  double lambda = 1.0;     // growth factor
  std::size_t k_lambda = 0;  // max element
};

// ceil(log(1 + B * n1_at_T) / log(1 + lambda)) + 2
std::size_t grid_size(double B, double n1_at_T, double lambda);

// Composite penalties indexed by class (1-based).
using PenbarFn = std::function<double(std::size_t)>;

// For k = 0..s-1, j_{k+1} = max{ j : penbar_j <= (1+lambda)^k * penbar_1 }.
// `max_probe` caps the search; with `finite_hierarchy` set, classes above
// max_probe do not exist and the search simply saturates there. Otherwise a
// threshold never exceeded within max_probe is an error (the hierarchy's
// penalties are not growing fast enough to bound the grid at this scale).
CoarseGrid build_coarse_grid(const PenbarFn& penbars, std::size_t max_probe,
                             double lambda, std::size_t s,
                             bool finite_hierarchy = false);

// Convenience overload for an explicit finite penalty sequence (penbars[0] is
// class 1).
CoarseGrid build_coarse_grid(const std::vector<double>& penbars, double lambda,
                             std::size_t s);

// Brute-force check of the coarse grid condition: every class i <= k_lambda
// has some j in the grid with penbar_i <= penbar_j <= (1+lambda) penbar_i.
// Returns the first violating index, or nullopt when the condition holds.
std::optional<std::size_t> verify_grid_condition(const CoarseGrid& grid,
                                                 const PenbarFn& penbars,
                                                 double lambda);

}  // namespace bms
