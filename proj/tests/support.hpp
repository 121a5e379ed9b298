#pragma once

#include "fracinpaint/grid.hpp"

#include <random>

namespace fracinpaint::testing {

inline ImageGrid random_grid(Index rows, Index cols, unsigned seed, double lo = 0.0,
                             double hi = 1.0) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  ImageGrid g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) g(i, j) = dist(rng);
  }
  return g;
}

inline double max_abs_diff(const ImageGrid& a, const ImageGrid& b) {
  return (a - b).abs().maxCoeff();
}

}  // namespace fracinpaint::testing
