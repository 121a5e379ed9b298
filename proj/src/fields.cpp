#include "fracinpaint/fields.hpp"

namespace fracinpaint {

Mask::Mask(Grid<bool> damaged) : damaged_(std::move(damaged)) {
  if (damaged_.size() == 0) {
    throw std::invalid_argument("Mask: empty grid");
  }
  if (damaged_.all()) {
    throw std::invalid_argument("Mask: every pixel is damaged, no data to inpaint from");
  }
}

Mask Mask::none(Index rows, Index cols) { return Mask(Grid<bool>::Constant(rows, cols, false)); }

FidelityField::FidelityField(const Mask& mask, double lambda0) {
  if (!(lambda0 > 0.0)) {
    throw std::domain_error("FidelityField: lambda0 must be positive");
  }
  lambda_ = mask.damaged().select(ImageGrid::Zero(mask.rows(), mask.cols()),
                                  ImageGrid::Constant(mask.rows(), mask.cols(), lambda0));
}

FidelityField::FidelityField(ImageGrid weights) : lambda_(std::move(weights)) {
  if (!all_finite(lambda_) || (lambda_ < 0.0).any()) {
    throw std::domain_error("FidelityField: weights must be finite and nonnegative");
  }
}

FidelityField fidelity_field(const Mask& mask, double lambda0) {
  return FidelityField(mask, lambda0);
}

double energy(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam, double mu,
              double delta, const SpectralPlan& plan) {
  require_same_shape(u, f, "energy");
  require_same_shape(u, lam.values(), "energy");
  if (!plan.shape().matches(u)) {
    throw std::invalid_argument("energy: plan shape mismatch");
  }
  if (mu < 0.0 || !(delta > 0.0)) {
    throw std::domain_error("energy: need mu >= 0 and delta > 0");
  }
  const Spacing h = plan.shape().spacing();
  const ImageGrid lap = spectral_laplacian(plan, u);
  auto [gx, gy] = gradient(u, h);
  const ImageGrid density = 0.5 * lam.values() * (f - u).square() + 0.5 * mu * lap.square() +
                            (gx.square() + gy.square() + delta * delta).sqrt();
  return density.sum() * plan.shape().cell_area();
}

}  // namespace fracinpaint
