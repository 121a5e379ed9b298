#include "fracinpaint/synthetic.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace fracinpaint::synthetic {

ImageGrid smooth_bump(Index rows, Index cols) {
  const double two_pi = 2.0 * std::numbers::pi;
  ImageGrid g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const double ry = 0.5 * (1.0 - std::cos(two_pi * (i + 0.5) / static_cast<double>(rows)));
    for (Index j = 0; j < cols; ++j) {
      const double rx = 0.5 * (1.0 - std::cos(two_pi * (j + 0.5) / static_cast<double>(cols)));
      g(i, j) = 0.1 + 0.8 * rx * ry;
    }
  }
  return g;
}

ImageGrid stripes(Index rows, Index cols, int bands) {
  if (bands < 1) throw std::invalid_argument("stripes: need at least one band");
  ImageGrid g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    const Index band = j * bands / cols;
    g.col(j).setConstant(band % 2 == 0 ? 0.2 : 0.8);
  }
  return g;
}

ImageGrid ramp(Index rows, Index cols) {
  ImageGrid g(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    g.col(j).setConstant(0.1 + 0.8 * static_cast<double>(j) / static_cast<double>(cols - 1));
  }
  return g;
}

ImageGrid piecewise_smooth(Index rows, Index cols) {
  ImageGrid g(rows, cols);
  const double r = static_cast<double>(rows);
  const double c = static_cast<double>(cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double y = (i + 0.5) / r;
      const double x = (j + 0.5) / c;
      double v = 0.25 + 0.3 * (x + y) / 2.0;
      const double dx = x - 0.35;
      const double dy = y - 0.4;
      if (dx * dx + dy * dy < 0.04) v = 0.85 - 0.2 * std::sqrt(dx * dx + dy * dy);
      if (x > 0.6 && x < 0.85 && y > 0.55 && y < 0.9) v = 0.1 + 0.1 * y;
      g(i, j) = v;
    }
  }
  return g;
}

ImageGrid random_image(Index rows, Index cols, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  ImageGrid g(rows, cols);
  for (Index i = 0; i < g.size(); ++i) g.data()[i] = dist(rng);
  return g;
}

Mask box_mask(Index rows, Index cols, double area_fraction) {
  if (!(area_fraction > 0.0 && area_fraction < 1.0)) {
    throw std::domain_error("box_mask: area fraction must lie in (0, 1)");
  }
  const double side = std::sqrt(area_fraction);
  const Index h = std::max<Index>(1, static_cast<Index>(std::lround(side * rows)));
  const Index w = std::max<Index>(1, static_cast<Index>(std::lround(side * cols)));
  Grid<bool> damaged = Grid<bool>::Constant(rows, cols, false);
  damaged.block((rows - h) / 2, (cols - w) / 2, h, w).setConstant(true);
  return Mask(std::move(damaged));
}

ImageGrid apply_damage(const ImageGrid& image, const Mask& mask, double fill) {
  require_same_shape(image, mask.damaged(), "apply_damage");
  return mask.damaged().select(ImageGrid::Constant(image.rows(), image.cols(), fill), image);
}

}  // namespace fracinpaint::synthetic
