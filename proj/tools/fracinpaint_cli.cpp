#include "fracinpaint/image_io.hpp"
#include "fracinpaint/metrics.hpp"
#include "fracinpaint/solvers.hpp"
#include "fracinpaint/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace fracinpaint;

namespace {

struct ParamFlags {
  ModelParams p;
  std::optional<double> c1;
};

void add_param_flags(CLI::App* app, ParamFlags& f, bool with_alpha) {
  if (with_alpha) app->add_option("--alpha", f.p.alpha, "fractional power in (0, 2] (fms only)")->capture_default_str();
  app->add_option("--mu", f.p.mu, "fourth-order weight")->capture_default_str();
  app->add_option("--lambda0", f.p.lambda0, "fidelity weight outside the damaged region")->capture_default_str();
  app->add_option("--dt", f.p.dt, "time step")->capture_default_str();
  app->add_option("--delta", f.p.delta, "curvature regularisation")->capture_default_str();
  app->add_option("--c1", f.c1, "implicit stabiliser (default 1/delta)");
  app->add_option("--c2", f.p.c2, "implicit fidelity stabiliser")->capture_default_str();
  app->add_option("--max-iter", f.p.max_iter, "iteration cap")->capture_default_str();
  app->add_option("--tol", f.p.rel_tol, "relative increment stopping tolerance")->capture_default_str();
}

ModelParams finish(const ParamFlags& f) {
  ModelParams p = f.p;
  p.c1 = f.c1 ? *f.c1 : 1.0 / p.delta;
  p.validate();
  if (p.c2 <= (p.lambda0 - 2.0 / p.dt) / 2.0) {
    std::cerr << "warning: c2 = " << p.c2 << " is small for lambda0 = " << p.lambda0
              << " and dt = " << p.dt << "; the explicit fidelity term may grow without bound\n";
  }
  return p;
}

Mask load_matching_mask(const fs::path& path, const ImageGrid& image) {
  const ImageGrid m = load_image(path);
  if (m.rows() != image.rows() || m.cols() != image.cols()) {
    throw ImageIoError("mask " + path.string() + " is " + std::to_string(m.cols()) + "x" +
                       std::to_string(m.rows()) + " but the input is " +
                       std::to_string(image.cols()) + "x" + std::to_string(image.rows()));
  }
  return mask_from_image(m);
}

std::string db(double v) {
  if (v == kIdentical) return "inf (identical)";
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw ImageIoError("cannot write " + path.string());
  return os;
}

int cmd_inpaint(const std::string& model_name, const ParamFlags& flags, const fs::path& in,
                const fs::path& mask_path, const fs::path& out, const std::string& log_path,
                const std::string& gt_path) {
  const Model model = parse_model(model_name);
  ModelParams p = finish(flags);
  const ImageGrid f = load_image(in);
  const Mask mask = load_matching_mask(mask_path, f);
  RunOptions opt;
  if (!gt_path.empty()) {
    ImageGrid gt = load_image(gt_path);
    require_same_shape(gt, f, "ground truth");
    opt.ground_truth = std::move(gt);
  }
  const RunResult r = run(model, f, mask, p, opt);
  save_image(r.image, out);
  if (!log_path.empty()) {
    auto os = open_out(log_path);
    r.log.write_csv(os);
  }
  const double inc = r.log.records.empty() ? 0.0 : r.log.records.back().rel_increment;
  std::cout << to_string(model) << ": " << to_string(r.log.stop_reason) << " after "
            << r.log.iterations() << " iterations, rel_increment " << std::setprecision(6)
            << std::scientific << inc << std::defaultfloat;
  if (opt.ground_truth) {
    const MetricsReport m = compare(*opt.ground_truth, r.image);
    std::cout << ", psnr " << db(m.psnr) << " dB, snr " << db(m.snr) << " dB, ssim "
              << std::setprecision(6) << m.ssim;
  }
  std::cout << '\n';
  return r.log.stop_reason == StopReason::Diverged ? 3 : 0;
}

int cmd_metrics(const fs::path& a_path, const fs::path& b_path) {
  const ImageGrid a = load_image(a_path);
  const ImageGrid b = load_image(b_path);
  require_same_shape(a, b, "metrics");
  std::cout << "psnr " << db(psnr(a, b)) << " dB\n";
  try {
    std::cout << "snr  " << db(snr(a, b)) << " dB\n";
  } catch (const std::domain_error&) {
    std::cout << "snr  undefined (constant reference)\n";
  }
  std::cout << "ssim " << std::setprecision(6) << ssim(a, b) << '\n';
  return 0;
}

int cmd_sweep(const std::vector<double>& alphas, const ParamFlags& flags, const fs::path& in,
              const fs::path& mask_path, const fs::path& gt_path, const std::string& out_path,
              int jobs) {
  ParamFlags quiet = flags;
  const ModelParams base = finish(quiet);
  const ImageGrid f = load_image(in);
  const Mask mask = load_matching_mask(mask_path, f);
  const ImageGrid gt = load_image(gt_path);
  require_same_shape(gt, f, "ground truth");

  auto one = [&](double alpha) {
    ModelParams p = base;
    p.alpha = alpha;
    p.validate();
    RunOptions opt;
    opt.log_energy = false;
    const RunResult r = run(Model::FMS, f, mask, p, opt);
    MetricsReport m = compare(gt, r.image);
    if (r.log.stop_reason == StopReason::Diverged) m.psnr = m.snr = m.ssim = std::nan("");
    m.iterations = r.log.iterations();
    m.wall_time = r.log.wall_time;
    return m;
  };
  std::vector<MetricsReport> results(alphas.size());
  const std::size_t width = static_cast<std::size_t>(std::max(1, jobs));
  for (std::size_t start = 0; start < alphas.size(); start += width) {
    std::vector<std::future<MetricsReport>> batch;
    for (std::size_t i = start; i < std::min(alphas.size(), start + width); ++i) {
      batch.push_back(std::async(std::launch::async, one, alphas[i]));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
  }

  std::ofstream file;
  if (!out_path.empty()) file = open_out(out_path);
  std::ostream& os = out_path.empty() ? std::cout : file;
  os << "alpha,psnr,snr,ssim,iterations,wall_time\n" << std::setprecision(10);
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    const auto& m = results[i];
    os << alphas[i] << ',' << m.psnr << ',' << m.snr << ',' << m.ssim << ',' << m.iterations
       << ',' << m.wall_time << '\n';
  }
  return 0;
}

int cmd_verify(const fs::path& out_dir, const std::vector<std::string>& only) {
  using namespace fracinpaint::verify;
  fs::create_directories(out_dir);
  auto wanted = [&](const std::string& name) {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  };
  const std::vector<double> dts = {0.2, 0.1, 0.05, 0.025, 0.0125};

  struct Job {
    std::string key;
    std::string file;
    std::function<StudyReport()> fn;
  };
  const std::vector<Job> all = {
      {"oracle", "oracle_equivalence", [] { return oracle_equivalence_study(); }},
      {"order", "order_fms", [&] { return temporal_order_study(Model::FMS, Problem::SmoothBump, dts); }},
      {"order", "order_cvms", [&] { return temporal_order_study(Model::CVMS, Problem::SmoothBump, dts); }},
      {"boundedness", "boundedness", [] { return boundedness_study(); }},
      {"alpha", "alpha_trend_ramp", [] { return alpha_trend_study(); }},
      {"alpha", "alpha_trend_piecewise",
       [] {
         AlphaTrendConfig c;
         c.problem = Problem::PiecewiseSmooth;
         return alpha_trend_study(c);
       }},
  };
  bool ok = true;
  for (const auto& job : all) {
    if (!wanted(job.key)) continue;
    const StudyReport rep = job.fn();
    {
      auto csv = open_out(out_dir / (job.file + ".csv"));
      rep.write_csv(csv);
      auto txt = open_out(out_dir / (job.file + ".txt"));
      rep.write_text(txt);
    }
    rep.write_text(std::cout);
    ok = ok && rep.pass();
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional-order image inpainting"};
  app.require_subcommand(1);

  auto* inpaint = app.add_subcommand("inpaint", "inpaint the damaged region of an image");
  std::string model = "fms";
  ParamFlags inpaint_flags;
  std::string in, mask, out, log_path, gt;
  inpaint->add_option("--model", model, "fms | cvms | tvl2 | tvh1")
      ->check(CLI::IsMember({"fms", "cvms", "tvl2", "tvh1"}))
      ->capture_default_str();
  add_param_flags(inpaint, inpaint_flags, true);
  inpaint->add_option("--log", log_path, "per-iteration CSV log");
  inpaint->add_option("--ground-truth", gt, "reference image for metrics")->check(CLI::ExistingFile);
  inpaint->add_option("input", in, "damaged image (PNG or PGM)")->required()->check(CLI::ExistingFile);
  inpaint->add_option("mask", mask, "mask image, bright = damaged")->required()->check(CLI::ExistingFile);
  inpaint->add_option("output", out, "output image")->required();

  auto* metrics = app.add_subcommand("metrics", "compare two images");
  std::string ma, mb;
  metrics->add_option("reference", ma)->required()->check(CLI::ExistingFile);
  metrics->add_option("test", mb)->required()->check(CLI::ExistingFile);

  auto* verify_cmd = app.add_subcommand("verify", "run the verification studies");
  std::string verify_out = "verify-out";
  std::vector<std::string> only;
  verify_cmd->add_option("--out", verify_out, "report directory")->capture_default_str();
  verify_cmd->add_option("--study", only, "oracle | order | boundedness | alpha (repeatable)")
      ->check(CLI::IsMember({"oracle", "order", "boundedness", "alpha"}));

  auto* sweep = app.add_subcommand("sweep", "run FMS over several alpha values");
  std::vector<double> alphas = {1.0, 1.2, 1.4, 1.6, 1.8, 2.0};
  ParamFlags sweep_flags;
  std::string sin, smask, sgt, sout;
  int jobs = 1;
  sweep->add_option("--alphas", alphas, "comma-separated alpha list")->delimiter(',')->capture_default_str();
  add_param_flags(sweep, sweep_flags, false);
  sweep->add_option("--ground-truth", sgt, "reference image")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sout, "CSV path (stdout when omitted)");
  sweep->add_option("--jobs", jobs, "alpha values run concurrently")->capture_default_str();
  sweep->add_option("input", sin)->required()->check(CLI::ExistingFile);
  sweep->add_option("mask", smask)->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n";
    const auto used = app.get_subcommands();
    std::cerr << (used.empty() ? app.help() : used.front()->help());
    return e.get_exit_code() != 0 ? e.get_exit_code() : 1;
  }

  try {
    if (*inpaint) return cmd_inpaint(model, inpaint_flags, in, mask, out, log_path, gt);
    if (*metrics) return cmd_metrics(ma, mb);
    if (*verify_cmd) return cmd_verify(verify_out, only);
    if (*sweep) return cmd_sweep(alphas, sweep_flags, sin, smask, sgt, sout, jobs);
  } catch (const ImageIoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
