#pragma once

#include "fracinpaint/grid.hpp"
#include "fracinpaint/spectral.hpp"

#include <utility>

namespace fracinpaint {

/// Damaged-pixel set D. At least one pixel must be intact.
class Mask {
 public:
  explicit Mask(Grid<bool> damaged);

  /// Nothing damaged.
  static Mask none(Index rows, Index cols);

  const Grid<bool>& damaged() const { return damaged_; }
  Index rows() const { return damaged_.rows(); }
  Index cols() const { return damaged_.cols(); }
  Index damaged_count() const { return damaged_.count(); }

 private:
  Grid<bool> damaged_;
};

/// Fidelity weight: lambda0 outside D, exactly 0 inside.
class FidelityField {
 public:
  FidelityField(const Mask& mask, double lambda0);
  /// Arbitrary nonnegative weights; used by tests that switch fidelity off.
  explicit FidelityField(ImageGrid weights);

  const ImageGrid& values() const { return lambda_; }
  Index rows() const { return lambda_.rows(); }
  Index cols() const { return lambda_.cols(); }

 private:
  ImageGrid lambda_;
};

FidelityField fidelity_field(const Mask& mask, double lambda0);

/// Forward differences, zero across the far boundary (reflective / Neumann).
template <typename Derived>
std::pair<Grid<typename Derived::Scalar>, Grid<typename Derived::Scalar>> gradient(
    const Eigen::ArrayBase<Derived>& u, Spacing h = {}) {
  using Scalar = typename Derived::Scalar;
  const Index rows = u.rows();
  const Index cols = u.cols();
  Grid<Scalar> gx = Grid<Scalar>::Zero(rows, cols);
  Grid<Scalar> gy = Grid<Scalar>::Zero(rows, cols);
  if (cols > 1) {
    gx.leftCols(cols - 1) = (u.rightCols(cols - 1) - u.leftCols(cols - 1)) / Scalar(h.dx);
  }
  if (rows > 1) {
    gy.topRows(rows - 1) = (u.bottomRows(rows - 1) - u.topRows(rows - 1)) / Scalar(h.dy);
  }
  return {std::move(gx), std::move(gy)};
}

/// Backward differences: the negative adjoint of gradient(), so that
/// <grad u, p> = -<u, div p> holds exactly on the grid.
template <typename DerivedX, typename DerivedY>
Grid<typename DerivedX::Scalar> divergence(const Eigen::ArrayBase<DerivedX>& px,
                                           const Eigen::ArrayBase<DerivedY>& py,
                                           Spacing h = {}) {
  using Scalar = typename DerivedX::Scalar;
  require_same_shape(px, py, "divergence");
  const Index rows = px.rows();
  const Index cols = px.cols();
  Grid<Scalar> div(rows, cols);

  div.col(0) = px.col(0);
  if (cols > 2) {
    div.middleCols(1, cols - 2) = px.middleCols(1, cols - 2) - px.leftCols(cols - 2);
  }
  div.col(cols - 1) = -px.col(cols - 2);
  div /= Scalar(h.dx);

  Grid<Scalar> dy(rows, cols);
  dy.row(0) = py.row(0);
  if (rows > 2) {
    dy.middleRows(1, rows - 2) = py.middleRows(1, rows - 2) - py.topRows(rows - 2);
  }
  dy.row(rows - 1) = -py.row(rows - 2);
  div += dy / Scalar(h.dy);
  return div;
}

/// kappa = div( grad u / sqrt(|grad u|^2 + delta^2) ).
template <typename Derived>
Grid<typename Derived::Scalar> curvature(const Eigen::ArrayBase<Derived>& u, double delta,
                                         Spacing h = {}) {
  using Scalar = typename Derived::Scalar;
  if (!(delta > 0.0)) {
    throw std::domain_error("curvature: delta must be positive");
  }
  auto [gx, gy] = gradient(u, h);
  const Grid<Scalar> inv_norm =
      (gx.square() + gy.square() + Scalar(delta * delta)).sqrt().inverse();
  return divergence(gx * inv_norm, gy * inv_norm, h);
}

/// sum |grad u|^2 over the grid, times the cell area.
template <typename Derived>
double gradient_norm_squared(const Eigen::ArrayBase<Derived>& u, Spacing h = {}) {
  auto [gx, gy] = gradient(u, h);
  return static_cast<double>((gx.square() + gy.square()).sum()) * h.dx * h.dy;
}

/// Discrete energy
///   sum [ lambda/2 (f-u)^2 + mu/2 |Lap u|^2 + sqrt(|grad u|^2 + delta^2) ] dx dy
/// with Lap evaluated through the plan's (unfractional) eigenvalues.
double energy(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam, double mu,
              double delta, const SpectralPlan& plan);

}  // namespace fracinpaint
