#include "fracinpaint/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace fracinpaint {

const char* to_string(Basis b) {
  switch (b) {
    case Basis::NeumannCosine: return "neumann-cosine";
    case Basis::PeriodicDFT: return "periodic-dft";
  }
  return "unknown";
}

double neumann_eigenvalue(Index m, Index n, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::domain_error("neumann_eigenvalue: domain extents must be positive");
  }
  if (m < 1 || n < 1) {
    throw std::domain_error("neumann_eigenvalue: mode numbers start at 1");
  }
  const double km = static_cast<double>(m - 1);
  const double kn = static_cast<double>(n - 1);
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  return pi2 * (km * km / (a * a) + kn * kn / (b * b));
}

double dft_laplacian_symbol(Index i, Index j, const GridShape& shape) {
  if (i < 0 || i >= shape.cols || j < 0 || j >= shape.rows) {
    throw std::out_of_range("dft_laplacian_symbol: frequency index out of range");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double dx = shape.dx();
  const double dy = shape.dy();
  const double m = static_cast<double>(shape.cols);
  const double n = static_cast<double>(shape.rows);
  return 2.0 / (dx * dx) * (std::cos(two_pi * static_cast<double>(i) / m) - 1.0) +
         2.0 / (dy * dy) * (std::cos(two_pi * static_cast<double>(j) / n) - 1.0);
}

namespace detail {

// FFTW's planner is not thread-safe; execution of an existing plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwPlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  FftwPlans(const GridShape& shape, Basis basis) {
    const int n0 = static_cast<int>(shape.rows);
    const int n1 = static_cast<int>(shape.cols);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(fftw_planner_mutex());
    if (basis == Basis::NeumannCosine) {
      double* in = fftw_alloc_real(shape.size());
      double* out = fftw_alloc_real(shape.size());
      forward = fftw_plan_r2r_2d(n0, n1, in, out, FFTW_REDFT10, FFTW_REDFT10, flags);
      backward = fftw_plan_r2r_2d(n0, n1, in, out, FFTW_REDFT01, FFTW_REDFT01, flags);
      fftw_free(in);
      fftw_free(out);
    } else {
      fftw_complex* in = fftw_alloc_complex(shape.size());
      fftw_complex* out = fftw_alloc_complex(shape.size());
      forward = fftw_plan_dft_2d(n0, n1, in, out, FFTW_FORWARD, flags);
      backward = fftw_plan_dft_2d(n0, n1, in, out, FFTW_BACKWARD, flags);
      fftw_free(in);
      fftw_free(out);
    }
    if (forward == nullptr || backward == nullptr) {
      throw std::runtime_error("SpectralPlan: FFTW planning failed");
    }
  }

  ~FftwPlans() {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }

  FftwPlans(const FftwPlans&) = delete;
  FftwPlans& operator=(const FftwPlans&) = delete;
};

}  // namespace detail

namespace {

// Per-dimension weight relating DCT-II output to cosine amplitudes: 1 for the
// constant mode, 2 otherwise.
Eigen::ArrayXd cosine_weights(Index n) {
  Eigen::ArrayXd w = Eigen::ArrayXd::Constant(n, 2.0);
  w(0) = 1.0;
  return w;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

SpectralPlan::SpectralPlan(const GridShape& shape, Basis basis, double alpha)
    : shape_(shape), basis_(basis), alpha_(alpha) {
  if (shape.rows < 2 || shape.cols < 2) {
    throw std::invalid_argument("SpectralPlan: need at least 2x2 pixels");
  }
  if (!(alpha > 0.0 && alpha <= 2.0)) {
    throw std::domain_error("SpectralPlan: alpha must lie in (0, 2]");
  }

  lambda_.resize(shape.rows, shape.cols);
  for (Index l = 0; l < shape.rows; ++l) {
    for (Index k = 0; k < shape.cols; ++k) {
      lambda_(l, k) = basis == Basis::NeumannCosine
                          ? neumann_eigenvalue(k + 1, l + 1, shape.width, shape.height)
                          : -dft_laplacian_symbol(k, l, shape);
    }
  }
  // cos(0) - 1 is exact, but keep the DC entry pinned and clip roundoff below zero.
  lambda_ = lambda_.max(0.0);
  lambda_(0, 0) = 0.0;

  if (alpha == 2.0) {
    lambda_half_alpha_ = lambda_;
    lambda_alpha_ = lambda_.square();
  } else {
    lambda_half_alpha_ = lambda_.pow(alpha / 2.0);
    lambda_alpha_ = lambda_.pow(alpha);
  }

  fftw_ = std::make_shared<const detail::FftwPlans>(shape, basis);
}

void SpectralPlan::check_shape(const ImageGrid& u, const char* where) const {
  if (!shape_.matches(u)) {
    throw std::invalid_argument(std::string(where) + ": grid does not match plan shape");
  }
}

ImageGrid SpectralPlan::forward_cosine(const ImageGrid& u) const {
  check_shape(u, "SpectralPlan::forward_cosine");
  if (basis_ != Basis::NeumannCosine) {
    throw std::logic_error("SpectralPlan::forward_cosine: plan basis is not NeumannCosine");
  }
  ImageGrid in = u;
  ImageGrid out(shape_.rows, shape_.cols);
  fftw_execute_r2r(fftw_->forward, in.data(), out.data());
  const Eigen::ArrayXd wy = cosine_weights(shape_.rows);
  const Eigen::ArrayXd wx = cosine_weights(shape_.cols);
  const double scale = 1.0 / (4.0 * static_cast<double>(shape_.size()));
  for (Index l = 0; l < shape_.rows; ++l) {
    out.row(l) *= (scale * wy(l)) * wx.transpose();
  }
  return out;
}

ImageGrid SpectralPlan::inverse_cosine(const ImageGrid& coeffs) const {
  check_shape(coeffs, "SpectralPlan::inverse_cosine");
  if (basis_ != Basis::NeumannCosine) {
    throw std::logic_error("SpectralPlan::inverse_cosine: plan basis is not NeumannCosine");
  }
  ImageGrid in = coeffs;
  const Eigen::ArrayXd wy = cosine_weights(shape_.rows);
  const Eigen::ArrayXd wx = cosine_weights(shape_.cols);
  for (Index l = 0; l < shape_.rows; ++l) {
    in.row(l) /= wy(l) * wx.transpose();
  }
  ImageGrid out(shape_.rows, shape_.cols);
  fftw_execute_r2r(fftw_->backward, in.data(), out.data());
  return out;
}

CoefficientGrid SpectralPlan::forward(const ImageGrid& u) const {
  check_shape(u, "SpectralPlan::forward");
  if (basis_ == Basis::NeumannCosine) {
    return forward_cosine(u).cast<std::complex<double>>();
  }
  CoefficientGrid in = u.cast<std::complex<double>>();
  CoefficientGrid out(shape_.rows, shape_.cols);
  fftw_execute_dft(fftw_->forward, as_fftw(in.data()), as_fftw(out.data()));
  out /= static_cast<double>(shape_.size());
  return out;
}

ImageGrid SpectralPlan::inverse(const CoefficientGrid& coeffs) const {
  if (!shape_.matches(coeffs)) {
    throw std::invalid_argument("SpectralPlan::inverse: grid does not match plan shape");
  }
  if (basis_ == Basis::NeumannCosine) {
    return inverse_cosine(coeffs.real());
  }
  CoefficientGrid in = coeffs;
  CoefficientGrid out(shape_.rows, shape_.cols);
  fftw_execute_dft(fftw_->backward, as_fftw(in.data()), as_fftw(out.data()));
  return out.real();
}

ImageGrid SpectralPlan::apply_symbol(const ImageGrid& symbol, const ImageGrid& u) const {
  check_shape(symbol, "SpectralPlan::apply_symbol");
  check_shape(u, "SpectralPlan::apply_symbol");
  if (basis_ == Basis::NeumannCosine) {
    return inverse_cosine(forward_cosine(u) * symbol);
  }
  CoefficientGrid c = forward(u);
  c *= symbol.cast<std::complex<double>>();
  return inverse(c);
}

ImageGrid apply_fractional_laplacian(const SpectralPlan& plan, const ImageGrid& u) {
  return plan.apply_symbol(plan.eigenvalues_half_alpha(), u);
}

ImageGrid spectral_laplacian(const SpectralPlan& plan, const ImageGrid& u) {
  return plan.apply_symbol(-plan.eigenvalues(), u);
}

}  // namespace fracinpaint
