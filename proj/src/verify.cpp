#include "fracinpaint/verify.hpp"

#include "fracinpaint/dense_oracle.hpp"
#include "fracinpaint/metrics.hpp"
#include "fracinpaint/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

namespace fracinpaint::verify {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string fmt_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += fmt(v[i]);
  }
  return s;
}

}  // namespace

bool Check::passed() const { return value >= lower && value <= upper; }

bool StudyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.informational || c.passed(); });
}

void StudyReport::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  const auto old = os.precision(12);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  os.precision(old);
}

void StudyReport::write_text(std::ostream& os) const {
  os << "study: " << name << '\n';
  for (const auto& [k, v] : inputs) os << "  input " << k << " = " << v << '\n';
  for (const auto& c : checks) {
    os << "  " << (c.informational ? "info" : (c.passed() ? "PASS" : "FAIL")) << "  " << c.name
       << " = " << fmt(c.value) << "  (allowed [" << fmt(c.lower) << ", " << fmt(c.upper)
       << "])\n";
  }
  for (const auto& n : notes) os << "  note: " << n << '\n';
  os << "  result: " << (pass() ? "PASS" : "FAIL") << '\n';
}

const char* to_string(Problem p) {
  switch (p) {
    case Problem::SmoothBump: return "smooth-bump";
    case Problem::Stripe: return "stripe";
    case Problem::Ramp: return "ramp";
    case Problem::PiecewiseSmooth: return "piecewise-smooth";
    case Problem::Constant: return "constant";
  }
  return "unknown";
}

SyntheticProblem make_problem(Problem id, Index size, double damage) {
  ImageGrid truth;
  switch (id) {
    case Problem::SmoothBump: truth = synthetic::smooth_bump(size, size); break;
    case Problem::Stripe: truth = synthetic::stripes(size, size); break;
    case Problem::Ramp: truth = synthetic::ramp(size, size); break;
    case Problem::PiecewiseSmooth: truth = synthetic::piecewise_smooth(size, size); break;
    case Problem::Constant: truth = ImageGrid::Constant(size, size, 0.5); break;
  }
  Mask mask = damage > 0.0 ? synthetic::box_mask(size, size, damage) : Mask::none(size, size);
  ImageGrid damaged = synthetic::apply_damage(truth, mask);
  return {std::move(truth), std::move(damaged), std::move(mask)};
}

// --- temporal order ---------------------------------------------------------

ModelParams OrderStudyConfig::default_params() {
  ModelParams p;
  p.delta = 0.01;
  p.c1 = 1.0 / p.delta;
  p.lambda0 = 1.0;
  p.c2 = 2.0;
  p.alpha = 2.0;
  p.rel_tol = 0.0;
  p.strict = true;
  return p;
}

StudyReport temporal_order_study(Model model, Problem problem, const std::vector<double>& dt_list,
                                 const OrderStudyConfig& config) {
  if (dt_list.size() < 3) {
    throw std::invalid_argument("temporal_order_study: need at least three step sizes");
  }
  for (std::size_t i = 1; i < dt_list.size(); ++i) {
    if (std::abs(dt_list[i] * 2.0 - dt_list[i - 1]) > 1e-12 * dt_list[i - 1]) {
      throw std::invalid_argument("temporal_order_study: each step size must halve the previous");
    }
  }

  StudyReport rep;
  rep.name = std::string("temporal-order/") + to_string(model);
  rep.inputs = {{"model", to_string(model)},
                {"problem", to_string(problem)},
                {"size", std::to_string(config.size)},
                {"final_time", fmt(config.final_time)},
                {"dt_list", fmt_list(dt_list)},
                {"damage", fmt(config.damage)},
                {"alpha", fmt(config.params.alpha)},
                {"lambda0", fmt(config.params.lambda0)},
                {"c1", fmt(config.params.c1)},
                {"c2", fmt(config.params.c2)},
                {"delta", fmt(config.params.delta)},
                {"mu", fmt(config.params.mu)}};
  rep.columns = {"dt", "steps", "diff_to_next", "ratio", "order"};

  const SyntheticProblem prob = make_problem(problem, config.size, config.damage);
  std::vector<ImageGrid> finals;
  int diverged = 0;
  for (double dt : dt_list) {
    ModelParams p = config.params;
    p.dt = dt;
    p.rel_tol = 0.0;
    p.max_iter = static_cast<int>(std::lround(config.final_time / dt));
    if (std::abs(p.max_iter * dt - config.final_time) > 1e-9 * config.final_time) {
      throw std::invalid_argument("temporal_order_study: final time is not a multiple of dt");
    }
    RunOptions opt;
    opt.log_energy = false;
    opt.clamp_output = false;
    RunResult r = run(model, prob.damaged, prob.mask, p, opt);
    if (r.log.stop_reason == StopReason::Diverged) ++diverged;
    finals.push_back(std::move(r.image));
  }

  std::vector<double> diffs;
  for (std::size_t i = 0; i + 1 < finals.size(); ++i) {
    diffs.push_back(std::sqrt((finals[i] - finals[i + 1]).square().sum()));
  }
  rep.checks.push_back({"diverged_runs", static_cast<double>(diverged), 0.0, 0.0, false});
  for (std::size_t i = 0; i < dt_list.size(); ++i) {
    double ratio = kNaN;
    double order = kNaN;
    if (i + 1 < diffs.size()) {
      ratio = diffs[i] / diffs[i + 1];
      order = std::log2(ratio);
      rep.checks.push_back({"order(dt=" + fmt(dt_list[i]) + ")", diverged ? kNaN : order,
                            config.lower, config.upper, false});
      rep.checks.push_back({"diff_ratio(dt=" + fmt(dt_list[i]) + ")", diverged ? kNaN : ratio,
                            config.min_ratio, kInf, false});
    }
    rep.rows.push_back({dt_list[i], std::round(config.final_time / dt_list[i]),
                        i < diffs.size() ? diffs[i] : kNaN, ratio, order});
  }
  return rep;
}

// --- boundedness --------------------------------------------------------------

StudyReport boundedness_study(const BoundednessConfig& config) {
  StudyReport rep;
  rep.name = "boundedness";
  const ModelParams& base = config.params;
  rep.inputs = {{"problem", to_string(config.problem)},
                {"size", std::to_string(config.size)},
                {"final_time", fmt(config.final_time)},
                {"damage", fmt(config.damage)},
                {"dts", fmt_list(config.dts)},
                {"informational_dts", fmt_list(config.informational_dts)},
                {"cap", fmt(config.cap)},
                {"alpha", fmt(base.alpha)},
                {"lambda0", fmt(base.lambda0)},
                {"c1", fmt(base.c1)},
                {"c2", fmt(base.c2)},
                {"delta", fmt(base.delta)},
                {"mu", fmt(base.mu)}};
  rep.columns = {"dt", "steps", "grad_norm_sq_initial", "grad_norm_sq_max", "ratio", "diverged",
                 "informational"};
  base.validate();

  const SyntheticProblem prob = make_problem(config.problem, config.size, config.damage);
  const Spacing h{};
  const double initial = gradient_norm_squared(prob.damaged, h);
  if (initial == 0.0) {
    rep.notes.push_back("initial gradient vanishes; checking the absolute maximum against the cap");
  }

  auto one = [&](double dt, bool informational) {
    ModelParams p = base;
    p.dt = dt;
    p.rel_tol = 0.0;
    p.max_iter = std::max(1, static_cast<int>(std::floor(config.final_time / dt + 1e-9)));
    RunOptions opt;
    opt.log_energy = false;
    const RunResult r = run(Model::FMS, prob.damaged, prob.mask, p, opt);
    const bool diverged = r.log.stop_reason == StopReason::Diverged;
    double peak = initial;
    for (const auto& rec : r.log.records) peak = std::max(peak, rec.grad_norm_sq);
    if (diverged || !std::isfinite(peak)) peak = kInf;
    const double ratio = initial > 0.0 ? peak / initial : peak;
    rep.checks.push_back({"grad_norm_ratio(dt=" + fmt(dt) + ")", ratio, 0.0, config.cap,
                          informational});
    rep.rows.push_back({dt, static_cast<double>(r.log.iterations()), initial, peak, ratio,
                        diverged ? 1.0 : 0.0, informational ? 1.0 : 0.0});
  };
  for (double dt : config.dts) one(dt, false);
  for (double dt : config.informational_dts) one(dt, true);
  return rep;
}

// --- oracle equivalence -----------------------------------------------------

StudyReport oracle_equivalence_study(const OracleConfig& config) {
  StudyReport rep;
  rep.name = "oracle-equivalence";
  rep.inputs = {{"seed", std::to_string(config.seed)}, {"tolerance", fmt(config.tolerance)}};
  rep.columns = {"size", "case", "max_rel_error"};

  std::mt19937_64 rng(config.seed);
  std::bernoulli_distribution damaged_px(0.25);
  for (Index n : config.sizes) {
    const GridShape shape = GridShape::pixels(n, n);
    const ImageGrid u = synthetic::random_image(n, n, rng());
    const ImageGrid f = synthetic::random_image(n, n, rng());
    Grid<bool> d(n, n);
    for (Index i = 0; i < d.size(); ++i) d.data()[i] = damaged_px(rng);
    d(0, 0) = false;
    const Mask mask(d);
    ModelParams p;
    const FidelityField lam(mask, p.lambda0);

    int case_id = 0;
    auto record = [&](const std::string& label, double err) {
      rep.checks.push_back({label + " " + std::to_string(n) + "x" + std::to_string(n), err, 0.0,
                            config.tolerance, false});
      rep.rows.push_back({static_cast<double>(n), static_cast<double>(case_id++), err});
    };

    for (double alpha : {0.5, 1.0, 1.4, 2.0}) {
      const SpectralPlan plan(shape, Basis::NeumannCosine, alpha);
      const ImageGrid fast = apply_fractional_laplacian(plan, u);
      const ImageGrid dense = oracle::fractional_laplacian_eigensum(shape, u, alpha);
      record("fractional_laplacian(alpha=" + fmt(alpha) + ")",
             (fast - dense).abs().maxCoeff());
    }
    for (double alpha : {2.0, 1.4}) {
      p.alpha = alpha;
      const SpectralPlan plan = make_plan(Model::FMS, shape, p);
      record("fms_step(alpha=" + fmt(alpha) + ")",
             oracle::max_relative_error(fms_step(u, f, lam, p, plan),
                                        oracle::fms_step(u, f, lam, p, shape)));
    }
    for (Model m : {Model::CVMS, Model::TVL2, Model::TVH1}) {
      const SpectralPlan plan = make_plan(m, shape, p);
      record(std::string(to_string(m)) + "_step",
             oracle::max_relative_error(step(m, u, f, lam, p, plan),
                                        oracle::step(m, u, f, lam, p, shape)));
    }
  }
  rep.notes.push_back("fractional_laplacian errors are absolute; stepper errors are max-relative");
  return rep;
}

// --- alpha trend ------------------------------------------------------------

StudyReport alpha_trend_study(const AlphaTrendConfig& config) {
  StudyReport rep;
  rep.name = std::string("alpha-trend/") + to_string(config.problem);
  const ModelParams& base = config.params;
  rep.inputs = {{"problem", to_string(config.problem)},
                {"size", std::to_string(config.size)},
                {"damage", fmt(config.damage)},
                {"alphas", fmt_list(config.alphas)},
                {"dt", fmt(base.dt)},
                {"lambda0", fmt(base.lambda0)},
                {"c1", fmt(base.c1)},
                {"c2", fmt(base.c2)},
                {"delta", fmt(base.delta)},
                {"mu", fmt(base.mu)},
                {"max_iter", std::to_string(base.max_iter)},
                {"rel_tol", fmt(base.rel_tol)}};
  rep.columns = {"alpha", "psnr", "snr", "ssim", "iterations", "wall_time", "diverged"};

  const SyntheticProblem prob = make_problem(config.problem, config.size, config.damage);
  if ((prob.damaged == prob.ground_truth).all()) {
    rep.notes.push_back("input equals ground truth: every PSNR is the identical sentinel, skipped");
    return rep;
  }

  double psnr_alpha_one = kNaN;
  double best_alpha = kNaN;
  double best_psnr = -kInf;
  int diverged_runs = 0;
  for (double alpha : config.alphas) {
    ModelParams p = base;
    p.alpha = alpha;
    RunOptions opt;
    opt.log_energy = false;
    const RunResult r = run(Model::FMS, prob.damaged, prob.mask, p, opt);
    const bool diverged = r.log.stop_reason == StopReason::Diverged;
    MetricsReport m;
    if (diverged) {
      ++diverged_runs;
      m.psnr = m.snr = m.ssim = kNaN;
    } else {
      m = compare(prob.ground_truth, r.image);
    }
    if (alpha == 1.0) psnr_alpha_one = m.psnr;
    if (std::isfinite(m.psnr) && m.psnr > best_psnr) {
      best_psnr = m.psnr;
      best_alpha = alpha;
    }
    rep.rows.push_back({alpha, m.psnr, m.snr, m.ssim, static_cast<double>(r.log.iterations()),
                        r.log.wall_time, diverged ? 1.0 : 0.0});
  }
  const double eps = 1e-9;
  rep.checks.push_back({"diverged_runs", static_cast<double>(diverged_runs), 0.0, 0.0, false});
  rep.checks.push_back({"argmax_psnr_alpha", best_alpha, 1.0 + eps, 2.0 - eps, false});
  rep.checks.push_back({"psnr_gain_over_alpha1_db", best_psnr - psnr_alpha_one,
                        config.min_gain_db, kInf, false});
  return rep;
}

}  // namespace fracinpaint::verify
