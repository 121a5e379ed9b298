#pragma once

#include "fracinpaint/solvers.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace fracinpaint::verify {

/// A measured quantity and the closed interval it must fall in. Informational
/// checks are reported but never affect pass().
struct Check {
  std::string name;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool informational = false;

  bool passed() const;
};

struct StudyReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  /// True iff every non-informational check passes.
  bool pass() const;

  void write_csv(std::ostream& os) const;
  void write_text(std::ostream& os) const;
};

enum class Problem { SmoothBump, Stripe, Ramp, PiecewiseSmooth, Constant };
const char* to_string(Problem p);

struct SyntheticProblem {
  ImageGrid ground_truth;
  ImageGrid damaged;
  Mask mask;
};

/// Centred box damage of area fraction `damage` (none when 0). Damaged pixels
/// are set to 0 in `damaged`.
SyntheticProblem make_problem(Problem id, Index size, double damage = 0.2);

// ---------------------------------------------------------------------------

struct OrderStudyConfig {
  Index size = 64;
  double final_time = 2.0;
  double lower = 0.8;
  double upper = 1.2;
  /// Minimum successive-difference ratio per halving.
  double min_ratio = 1.8;
  /// Box damage fraction; 0 keeps the problem smooth everywhere.
  double damage = 0.0;
  ModelParams params = default_params();

  /// delta = 0.01, c1 = 1/delta, lambda0 = 1, c2 = 2, alpha = 2: the
  /// stability hypothesis holds and the solution stays smooth.
  static ModelParams default_params();
};

/// Self-convergence in time at fixed T. For each consecutive triple of step
/// sizes reports p = log2(|U(2h) - U(h)| / |U(h) - U(h/2)|).
StudyReport temporal_order_study(Model model, Problem problem, const std::vector<double>& dt_list,
                                 const OrderStudyConfig& config = {});

struct BoundednessConfig {
  Index size = 128;
  double final_time = 100.0;
  std::vector<double> dts = {0.1, 1.0, 10.0};
  /// Run but do not judge (e.g. very large steps).
  std::vector<double> informational_dts = {100.0};
  double cap = 1e3;
  Problem problem = Problem::Stripe;
  double damage = 0.2;
  ModelParams params = ModelParams::strict_defaults();
};

/// max_k |grad U_k|^2 / |grad U_0|^2 over k dt <= T. With |grad U_0| = 0 the
/// absolute maximum is checked against the cap instead.
StudyReport boundedness_study(const BoundednessConfig& config = {});

struct OracleConfig {
  std::vector<Index> sizes = {8, 16};
  std::uint64_t seed = 20240607;
  double tolerance = 1e-8;
};

/// Fast steppers against dense direct solves, and the fast fractional
/// Laplacian against the explicit eigen-sum.
StudyReport oracle_equivalence_study(const OracleConfig& config = {});

struct AlphaTrendConfig {
  Index size = 256;
  double damage = 0.2;
  std::vector<double> alphas = {1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  ModelParams params;  // defaults
  double min_gain_db = 1.0;
  Problem problem = Problem::Ramp;
};

/// FMS across alpha. Passes if the PSNR-maximising alpha lies strictly inside
/// (1, 2) and beats alpha = 1 by at least min_gain_db. Skipped (no checks)
/// when the damaged input already equals the ground truth.
StudyReport alpha_trend_study(const AlphaTrendConfig& config = {});

}  // namespace fracinpaint::verify
