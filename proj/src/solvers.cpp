#include "fracinpaint/solvers.hpp"

#include "fracinpaint/metrics.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

namespace fracinpaint {

const char* to_string(Model m) {
  switch (m) {
    case Model::FMS: return "fms";
    case Model::CVMS: return "cvms";
    case Model::TVL2: return "tvl2";
    case Model::TVH1: return "tvh1";
  }
  return "unknown";
}

Model parse_model(std::string_view name) {
  if (name == "fms") return Model::FMS;
  if (name == "cvms") return Model::CVMS;
  if (name == "tvl2") return Model::TVL2;
  if (name == "tvh1") return Model::TVH1;
  throw std::invalid_argument("unknown model '" + std::string(name) + "'");
}

Basis basis_for(Model m) {
  return m == Model::FMS ? Basis::NeumannCosine : Basis::PeriodicDFT;
}

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "converged";
    case StopReason::MaxIter: return "max-iter";
    case StopReason::Diverged: return "diverged";
  }
  return "unknown";
}

void ModelParams::validate() const {
  auto fail = [](const char* what) { throw std::domain_error(std::string("ModelParams: ") + what); };
  if (!(dt > 0.0)) fail("dt must be positive");
  if (!(delta > 0.0)) fail("delta must be positive");
  if (!(mu > 0.0)) fail("mu must be positive");
  if (!(lambda0 > 0.0)) fail("lambda0 must be positive");
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) fail("c1 and c2 must be nonnegative");
  if (!(alpha > 0.0 && alpha <= 2.0)) fail("alpha must lie in (0, 2]");
  if (max_iter < 0) fail("max_iter must be nonnegative");
  if (!(rel_tol >= 0.0)) fail("rel_tol must be nonnegative");
  if (strict) {
    if (c1 < 1.0 / delta) fail("strict mode requires c1 >= 1/delta");
    if (!(c2 > lambda0)) fail("strict mode requires c2 > lambda0");
  }
}

ModelParams ModelParams::strict_defaults() {
  ModelParams p;
  p.c2 = 300.0;
  p.strict = true;
  return p;
}

namespace {

void check_inputs(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                  const SpectralPlan& plan, Basis expected, const char* where) {
  require_same_shape(u, f, where);
  require_same_shape(u, lam.values(), where);
  if (!plan.shape().matches(u)) {
    throw std::invalid_argument(std::string(where) + ": plan shape mismatch");
  }
  if (plan.basis() != expected) {
    throw std::invalid_argument(std::string(where) + ": plan must use the " +
                                to_string(expected) + " basis");
  }
}

// Explicit real-space forcing shared by every model: TV curvature plus fidelity.
ImageGrid fidelity_forcing(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam) {
  return lam.values() * (f - u);
}

// Solve  implicit * U_{k+1}^ = explicit_mult * U_k^ + forcing^  mode by mode.
ImageGrid diagonal_update(const SpectralPlan& plan, const ImageGrid& u, const ImageGrid& forcing,
                          const ImageGrid& explicit_mult, const ImageGrid& implicit) {
  if (plan.basis() == Basis::NeumannCosine) {
    const ImageGrid u_hat = plan.forward_cosine(u);
    const ImageGrid r_hat = plan.forward_cosine(forcing);
    return plan.inverse_cosine((explicit_mult * u_hat + r_hat) / implicit);
  }
  const CoefficientGrid u_hat = plan.forward(u);
  const CoefficientGrid r_hat = plan.forward(forcing);
  const CoefficientGrid next = (explicit_mult.cast<std::complex<double>>() * u_hat + r_hat) /
                               implicit.cast<std::complex<double>>();
  return plan.inverse(next);
}

}  // namespace

ImageGrid fms_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                   const ModelParams& p, const SpectralPlan& plan) {
  check_inputs(u, f, lam, plan, Basis::NeumannCosine, "fms_step");
  if (plan.alpha() != p.alpha) {
    throw std::invalid_argument("fms_step: plan alpha differs from params alpha");
  }
  const ImageGrid forcing =
      curvature(u, p.delta, plan.shape().spacing()) + fidelity_forcing(u, f, lam);
  const ImageGrid stab = 1.0 / p.dt + p.c1 * plan.eigenvalues_half_alpha() + p.c2;
  const ImageGrid implicit = stab + p.mu * plan.eigenvalues_alpha();
  return diagonal_update(plan, u, forcing, stab, implicit);
}

ImageGrid cvms_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const SpectralPlan& plan) {
  check_inputs(u, f, lam, plan, Basis::PeriodicDFT, "cvms_step");
  // eigenvalues() = -L >= 0
  const ImageGrid& neg_l = plan.eigenvalues();
  const ImageGrid forcing =
      curvature(u, p.delta, plan.shape().spacing()) + fidelity_forcing(u, f, lam);
  const ImageGrid stab = 1.0 / p.dt + p.c1 * neg_l + p.c2;
  const ImageGrid implicit = 1.0 / p.dt + (p.mu + p.c1) * neg_l + p.c2;
  return diagonal_update(plan, u, forcing, stab, implicit);
}

ImageGrid tvl2_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const SpectralPlan& plan) {
  check_inputs(u, f, lam, plan, Basis::PeriodicDFT, "tvl2_step");
  const ImageGrid forcing =
      curvature(u, p.delta, plan.shape().spacing()) + fidelity_forcing(u, f, lam);
  const ImageGrid stab = 1.0 / p.dt + p.c1 * plan.eigenvalues() + p.c2;
  return diagonal_update(plan, u, forcing, stab, stab);
}

ImageGrid tvh1_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const SpectralPlan& plan) {
  check_inputs(u, f, lam, plan, Basis::PeriodicDFT, "tvh1_step");
  const ImageGrid& neg_l = plan.eigenvalues();
  const ImageGrid stab = 1.0 / p.dt + p.c1 * neg_l.square() + p.c2;
  // -Lap(kappa) is -L * kappa^ in Fourier space.
  const CoefficientGrid kappa_hat = plan.forward(curvature(u, p.delta, plan.shape().spacing()));
  const CoefficientGrid u_hat = plan.forward(u);
  const CoefficientGrid fid_hat = plan.forward(fidelity_forcing(u, f, lam));
  const CoefficientGrid next =
      (stab.cast<std::complex<double>>() * u_hat + neg_l.cast<std::complex<double>>() * kappa_hat +
       fid_hat) /
      stab.cast<std::complex<double>>();
  return plan.inverse(next);
}

ImageGrid step(Model model, const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
               const ModelParams& p, const SpectralPlan& plan) {
  switch (model) {
    case Model::FMS: return fms_step(u, f, lam, p, plan);
    case Model::CVMS: return cvms_step(u, f, lam, p, plan);
    case Model::TVL2: return tvl2_step(u, f, lam, p, plan);
    case Model::TVH1: return tvh1_step(u, f, lam, p, plan);
  }
  throw std::invalid_argument("step: unknown model");
}

SpectralPlan make_plan(Model model, const GridShape& shape, const ModelParams& p) {
  return SpectralPlan(shape, basis_for(model), model == Model::FMS ? p.alpha : 2.0);
}

void RunLog::write_csv(std::ostream& os) const {
  const bool with_metrics = !records.empty() && records.front().psnr.has_value();
  os << "k,energy,rel_increment,grad_norm_sq";
  if (with_metrics) os << ",psnr,snr,ssim";
  os << '\n';
  const auto old_precision = os.precision(17);
  for (const auto& r : records) {
    os << r.k << ',' << r.energy << ',' << r.rel_increment << ',' << r.grad_norm_sq;
    if (with_metrics) os << ',' << *r.psnr << ',' << *r.snr << ',' << *r.ssim;
    os << '\n';
  }
  os.precision(old_precision);
}

RunResult run(Model model, const ImageGrid& f, const Mask& mask, const ModelParams& p,
              const RunOptions& options) {
  p.validate();
  require_same_shape(f, mask.damaged(), "run");
  if (!all_finite(f)) {
    throw std::invalid_argument("run: input image has nonfinite values");
  }
  if (options.ground_truth) require_same_shape(f, *options.ground_truth, "run");
  const GridShape shape = options.shape.value_or(GridShape::of(f));
  if (!shape.matches(f)) {
    throw std::invalid_argument("run: shape option does not match the image");
  }

  const auto start = std::chrono::steady_clock::now();
  const SpectralPlan plan = make_plan(model, shape, p);
  // The energy monitor always uses the unfractional Laplacian in the model's basis.
  const SpectralPlan energy_plan(shape, plan.basis(), 2.0);
  const FidelityField lam(mask, p.lambda0);

  RunResult result;
  result.log.stop_reason = StopReason::MaxIter;
  ImageGrid u = f;
  for (int k = 1; k <= p.max_iter; ++k) {
    ImageGrid next = step(model, u, f, lam, p, plan);
    if (!all_finite(next)) {
      result.log.stop_reason = StopReason::Diverged;
      break;
    }
    const double prev_norm = std::sqrt(u.square().sum());
    const double diff_norm = std::sqrt((next - u).square().sum());
    IterationRecord rec;
    rec.k = k;
    rec.rel_increment = prev_norm > 0.0 ? diff_norm / prev_norm : (diff_norm > 0.0 ? kIdentical : 0.0);
    rec.grad_norm_sq = gradient_norm_squared(next, shape.spacing());
    rec.energy = options.log_energy ? energy(next, f, lam, p.mu, p.delta, energy_plan)
                                    : std::numeric_limits<double>::quiet_NaN();
    if (options.ground_truth) {
      const ImageGrid shown = next.max(0.0).min(1.0);
      rec.psnr = psnr(*options.ground_truth, shown);
      rec.snr = snr(*options.ground_truth, shown);
      rec.ssim = ssim(*options.ground_truth, shown);
    }
    u = std::move(next);
    result.log.records.push_back(rec);
    if (rec.rel_increment < p.rel_tol) {
      result.log.stop_reason = StopReason::Converged;
      break;
    }
  }
  result.log.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.image = options.clamp_output ? ImageGrid(u.max(0.0).min(1.0)) : u;
  return result;
}

}  // namespace fracinpaint
