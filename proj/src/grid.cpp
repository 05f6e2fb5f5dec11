#include "bms/grid.hpp"

#include <algorithm>
#include <cmath>

namespace bms {

std::size_t grid_size(double B, double n1_at_T, double lambda) {
  if (B <= 0 || n1_at_T <= 0 || lambda <= 0)
    throw std::invalid_argument("grid_size: inputs must be positive");
  const double raw = std::log1p(B * n1_at_T) / std::log1p(lambda);
  return static_cast<std::size_t>(std::ceil(raw)) + 2;
}

namespace {

// Largest j in [1, max_probe] with penbar_j <= threshold, verifying strict
// monotonicity along the way. Returns 0 if even class 1 exceeds it.
std::size_t largest_below(const PenbarFn& penbars, std::size_t max_probe,
                          double threshold, bool finite_hierarchy) {
  double prev = penbars(1);
  if (prev > threshold) return 0;
  std::size_t best = 1;
  for (std::size_t j = 2; j <= max_probe; ++j) {
    const double p = penbars(j);
    if (p <= prev)
      throw std::invalid_argument("build_coarse_grid: hierarchy not monotone");
    prev = p;
    if (p <= threshold)
      best = j;
    else
      return best;
  }
  if (!finite_hierarchy)
    throw std::runtime_error(
        "build_coarse_grid: grid unbounded within probe range");
  return best;
}

}  // namespace

CoarseGrid build_coarse_grid(const PenbarFn& penbars, std::size_t max_probe,
                             double lambda, std::size_t s,
                             bool finite_hierarchy) {
  if (s < 1) throw std::invalid_argument("build_coarse_grid: s < 1");
  if (lambda <= 0) throw std::invalid_argument("build_coarse_grid: lambda <= 0");
  if (max_probe < 1)
    throw std::invalid_argument("build_coarse_grid: max_probe < 1");

  const double base = penbars(1);
  if (!(base > 0))
    throw std::invalid_argument("build_coarse_grid: penbar_1 must be positive");

  CoarseGrid grid;
  grid.s = s;
  grid.lambda = lambda;
  double threshold = base;
  for (std::size_t k = 0; k < s; ++k) {
    const std::size_t j =
        largest_below(penbars, max_probe, threshold, finite_hierarchy);
    // class 1 always qualifies at k = 0 (penbar_1 <= penbar_1)
    if (j >= 1 && (grid.indices.empty() || j > grid.indices.back()))
      grid.indices.push_back(j);
    threshold *= (1.0 + lambda);
  }
  grid.k_lambda = grid.indices.empty() ? 0 : grid.indices.back();
  return grid;
}

CoarseGrid build_coarse_grid(const std::vector<double>& penbars, double lambda,
                             std::size_t s) {
  if (penbars.empty())
    throw std::invalid_argument("build_coarse_grid: empty hierarchy");
  return build_coarse_grid(
      [&penbars](std::size_t j) { return penbars.at(j - 1); }, penbars.size(),
      lambda, s, /*finite_hierarchy=*/true);
}

std::optional<std::size_t> verify_grid_condition(const CoarseGrid& grid,
                                                 const PenbarFn& penbars,
                                                 double lambda) {
  for (std::size_t i = 1; i <= grid.k_lambda; ++i) {
    const double pi = penbars(i);
    bool covered = false;
    for (std::size_t j : grid.indices) {
      const double pj = penbars(j);
      if (pi <= pj && pj <= (1.0 + lambda) * pi) {
        covered = true;
        break;
      }
    }
    if (!covered) return i;
  }
  return std::nullopt;
}

}  // namespace bms
