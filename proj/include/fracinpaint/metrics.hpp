#pragma once

#include "fracinpaint/grid.hpp"

#include <cmath>
#include <limits>

namespace fracinpaint {

/// One row of a comparison table.
struct MetricsReport {
  double psnr = 0.0;  // dB, +inf for identical images
  double snr = 0.0;   // dB, +inf for zero noise variance
  double ssim = 0.0;
  int iterations = 0;
  double wall_time = 0.0;  // seconds
};

constexpr double kIdentical = std::numeric_limits<double>::infinity();

/// 10 log10(peak^2 / MSE). Returns kIdentical when MSE is zero.
template <typename A, typename B>
double psnr(const Eigen::ArrayBase<A>& reference, const Eigen::ArrayBase<B>& test,
            double peak = 1.0) {
  require_same_shape(reference, test, "psnr");
  const double mse = static_cast<double>((reference - test).square().mean());
  if (mse == 0.0) return kIdentical;
  return 10.0 * std::log10(peak * peak / mse);
}

/// Population variance about the mean.
template <typename A>
double variance(const Eigen::ArrayBase<A>& g) {
  const double mean = static_cast<double>(g.mean());
  return static_cast<double>((g - mean).square().mean());
}

namespace detail {

// A variance below this fraction of the mean square is roundoff from
// subtracting the mean of a constant field.
constexpr double kFlatVariance = 1e-24;

template <typename A>
bool is_flat(const Eigen::ArrayBase<A>& g, double var) {
  return var <= kFlatVariance * static_cast<double>(g.square().mean());
}

}  // namespace detail

/// 10 log10(var(reference) / var(reference - test)).
/// Returns kIdentical for zero noise variance; throws for a constant reference.
template <typename A, typename B>
double snr(const Eigen::ArrayBase<A>& reference, const Eigen::ArrayBase<B>& test) {
  require_same_shape(reference, test, "snr");
  const double signal = variance(reference);
  if (detail::is_flat(reference, signal)) {
    throw std::domain_error("snr: reference image has zero variance");
  }
  const Grid<typename A::Scalar> noise = reference - test;
  const double noise_var = variance(noise);
  if (detail::is_flat(noise, noise_var)) return kIdentical;
  return 10.0 * std::log10(signal / noise_var);
}

struct SsimOptions {
  int window = 11;
  double sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

namespace detail {

// Separable Gaussian filter over the fully-inside ("valid") window positions.
inline ImageGrid gaussian_filter_valid(const ImageGrid& img, const Eigen::ArrayXd& kernel) {
  const Index w = kernel.size();
  const Index out_rows = img.rows() - w + 1;
  const Index out_cols = img.cols() - w + 1;
  ImageGrid horiz = ImageGrid::Zero(img.rows(), out_cols);
  for (Index t = 0; t < w; ++t) {
    horiz += kernel(t) * img.middleCols(t, out_cols);
  }
  ImageGrid out = ImageGrid::Zero(out_rows, out_cols);
  for (Index t = 0; t < w; ++t) {
    out += kernel(t) * horiz.middleRows(t, out_rows);
  }
  return out;
}

}  // namespace detail

/// Mean structural similarity over all valid windows.
template <typename A, typename B>
double ssim(const Eigen::ArrayBase<A>& reference, const Eigen::ArrayBase<B>& test,
            const SsimOptions& opt = {}) {
  require_same_shape(reference, test, "ssim");
  if (reference.rows() < opt.window || reference.cols() < opt.window) {
    throw std::invalid_argument("ssim: image smaller than the window");
  }
  Eigen::ArrayXd kernel(opt.window);
  const double centre = 0.5 * (opt.window - 1);
  for (int t = 0; t < opt.window; ++t) {
    const double d = t - centre;
    kernel(t) = std::exp(-d * d / (2.0 * opt.sigma * opt.sigma));
  }
  kernel /= kernel.sum();

  const ImageGrid x = reference.template cast<double>();
  const ImageGrid y = test.template cast<double>();
  const ImageGrid mx = detail::gaussian_filter_valid(x, kernel);
  const ImageGrid my = detail::gaussian_filter_valid(y, kernel);
  const ImageGrid sxx = detail::gaussian_filter_valid(x * x, kernel) - mx.square();
  const ImageGrid syy = detail::gaussian_filter_valid(y * y, kernel) - my.square();
  const ImageGrid sxy = detail::gaussian_filter_valid(x * y, kernel) - mx * my;

  const double c1 = std::pow(opt.k1 * opt.dynamic_range, 2);
  const double c2 = std::pow(opt.k2 * opt.dynamic_range, 2);
  const ImageGrid map = ((2.0 * mx * my + c1) * (2.0 * sxy + c2)) /
                        ((mx.square() + my.square() + c1) * (sxx + syy + c2));
  return map.mean();
}

template <typename A, typename B>
MetricsReport compare(const Eigen::ArrayBase<A>& reference, const Eigen::ArrayBase<B>& test) {
  MetricsReport r;
  r.psnr = psnr(reference, test);
  r.snr = snr(reference, test);
  r.ssim = ssim(reference, test);
  return r;
}

}  // namespace fracinpaint
