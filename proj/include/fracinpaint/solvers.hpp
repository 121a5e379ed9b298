#pragma once

#include "fracinpaint/fields.hpp"
#include "fracinpaint/grid.hpp"
#include "fracinpaint/spectral.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracinpaint {

enum class Model {
  FMS,   // fractional fourth-order Mumford-Shah variant, Neumann cosine basis
  CVMS,  // convex Mumford-Shah variant, second order, periodic DFT
  TVL2,
  TVH1,
};

const char* to_string(Model m);
Model parse_model(std::string_view name);
Basis basis_for(Model m);

struct ModelParams {
  double dt = 1.0;
  double delta = 0.01;
  double mu = 0.9;
  double lambda0 = 250.0;
  double c1 = 100.0;  // 1 / delta
  double c2 = 50.0;
  double alpha = 1.6;
  int max_iter = 2000;
  double rel_tol = 1e-6;
  /// Enforce the convexity-splitting stability hypothesis c1 >= 1/delta, c2 > lambda0.
  bool strict = false;

  /// Throws std::domain_error when an invariant is violated.
  void validate() const;

  /// Defaults with c2 raised above lambda0 (c2 = 300).
  static ModelParams strict_defaults();
};

/// U_{k+1} from U_k. Every step is a pure function of its arguments; the plan
/// must use basis_for(model) and, for FMS, alpha == params.alpha.
ImageGrid fms_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                   const ModelParams& p, const SpectralPlan& plan);
ImageGrid cvms_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const SpectralPlan& plan);
ImageGrid tvl2_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const SpectralPlan& plan);
ImageGrid tvh1_step(const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
                    const ModelParams& p, const SpectralPlan& plan);

ImageGrid step(Model model, const ImageGrid& u, const ImageGrid& f, const FidelityField& lam,
               const ModelParams& p, const SpectralPlan& plan);

SpectralPlan make_plan(Model model, const GridShape& shape, const ModelParams& p);

enum class StopReason { Converged, MaxIter, Diverged };
const char* to_string(StopReason r);

struct IterationRecord {
  int k = 0;
  double energy = 0.0;
  double rel_increment = 0.0;
  double grad_norm_sq = 0.0;
  // Present only when a ground truth was supplied.
  std::optional<double> psnr;
  std::optional<double> snr;
  std::optional<double> ssim;
};

struct RunLog {
  std::vector<IterationRecord> records;
  StopReason stop_reason = StopReason::MaxIter;
  double wall_time = 0.0;

  int iterations() const { return static_cast<int>(records.size()); }
  /// CSV with header k,energy,rel_increment,grad_norm_sq[,psnr,snr,ssim].
  void write_csv(std::ostream& os) const;
};

struct RunResult {
  ImageGrid image;
  RunLog log;
};

struct RunOptions {
  std::optional<ImageGrid> ground_truth;
  /// Physical domain; pixel units when absent.
  std::optional<GridShape> shape;
  /// Evaluate the energy functional for the log each iteration.
  bool log_energy = true;
  /// Clamp the returned image to [0,1]. Iterates are never clamped.
  bool clamp_output = true;
};

/// Iterate from U_0 = f until the relative L2 increment drops below
/// p.rel_tol, p.max_iter steps are taken, or a nonfinite value appears.
RunResult run(Model model, const ImageGrid& f, const Mask& mask, const ModelParams& p,
              const RunOptions& options = {});

}  // namespace fracinpaint
