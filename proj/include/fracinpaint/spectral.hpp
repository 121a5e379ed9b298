#pragma once

#include "fracinpaint/grid.hpp"

#include <memory>

namespace fracinpaint {

enum class Basis {
  NeumannCosine,  // cos(k pi x / a) cos(l pi y / b), cell-centred samples (DCT-II / DCT-III)
  PeriodicDFT,    // discrete Fourier pair, symbol of the periodic 5-point Laplacian
};

const char* to_string(Basis b);

/// Eigenvalue of -Laplace with Neumann conditions on [0,a]x[0,b] for the
/// one-based mode pair (m, n): pi^2 ((m-1)^2/a^2 + (n-1)^2/b^2).
double neumann_eigenvalue(Index m, Index n, double a, double b);

/// Symbol of the periodic 5-point Laplacian at zero-based frequency i (along
/// x, 0 <= i < cols) and j (along y, 0 <= j < rows). Always <= 0.
double dft_laplacian_symbol(Index i, Index j, const GridShape& shape);

namespace detail {
struct FftwPlans;
}

/// Precomputed symbol grids and transform context for one (shape, basis, alpha).
///
/// eigenvalues() holds lambda >= 0 for every mode: the Neumann eigenvalue for
/// NeumannCosine and -L_{i,j} for PeriodicDFT. Coefficient grids are laid out
/// like images (row = y-frequency, column = x-frequency).
///
/// Coefficient conventions: for NeumannCosine, forward() yields the amplitudes
/// c_{l,k} in u = sum c_{l,k} cos(k pi x/a) cos(l pi y/b), so the DC entry is
/// the mean. For PeriodicDFT, forward() is the DFT scaled by 1/(rows*cols).
///
/// Instances are immutable and safe to share between threads.
class SpectralPlan {
 public:
  SpectralPlan(const GridShape& shape, Basis basis, double alpha = 2.0);

  const GridShape& shape() const { return shape_; }
  Basis basis() const { return basis_; }
  double alpha() const { return alpha_; }

  const ImageGrid& eigenvalues() const { return lambda_; }
  /// lambda^(alpha/2): the symbol of (-Laplace)^(alpha/2).
  const ImageGrid& eigenvalues_half_alpha() const { return lambda_half_alpha_; }
  /// lambda^alpha: the symbol of (-Laplace)^alpha.
  const ImageGrid& eigenvalues_alpha() const { return lambda_alpha_; }

  CoefficientGrid forward(const ImageGrid& u) const;
  /// Real part of the inverse transform.
  ImageGrid inverse(const CoefficientGrid& coeffs) const;

  // Real-valued fast path, NeumannCosine only.
  ImageGrid forward_cosine(const ImageGrid& u) const;
  ImageGrid inverse_cosine(const ImageGrid& coeffs) const;

  /// Multiply every mode of u by symbol and transform back.
  ImageGrid apply_symbol(const ImageGrid& symbol, const ImageGrid& u) const;

 private:
  void check_shape(const ImageGrid& u, const char* where) const;

  GridShape shape_;
  Basis basis_;
  double alpha_;
  ImageGrid lambda_;
  ImageGrid lambda_half_alpha_;
  ImageGrid lambda_alpha_;
  std::shared_ptr<const detail::FftwPlans> fftw_;
};

/// (-Laplace)^(alpha/2) u in the plan's basis.
ImageGrid apply_fractional_laplacian(const SpectralPlan& plan, const ImageGrid& u);

/// Laplacian of u using the plan's unfractional symbol, i.e. -lambda * u_hat.
ImageGrid spectral_laplacian(const SpectralPlan& plan, const ImageGrid& u);

}  // namespace fracinpaint
