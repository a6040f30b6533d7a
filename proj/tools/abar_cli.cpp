// abar: command-line front end over the libabar_c interface.

#include <abar/abar.h>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

struct CliFailure {
  int code;
  std::string message;
};

int exit_code_for(abar_status status) {
  switch (status) {
    case ABAR_OK:
      return kExitOk;
    case ABAR_ERR_DOMAIN:
    case ABAR_ERR_INPUT:
    case ABAR_ERR_NULL:
      return kExitUsage;
    default:
      return kExitFailure;
  }
}

void check(abar_status status) {
  if (status != ABAR_OK) {
    throw CliFailure{exit_code_for(status),
                     std::string(abar_status_name(status)) + ": " + abar_last_error()};
  }
}

struct StringDeleter {
  void operator()(char* p) const { abar_string_free(p); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw CliFailure{kExitFailure, "I/O error: cannot open '" + path +
                                       "' for writing: " + std::strerror(errno)};
  }
  out << text;
  out.close();
  if (!out) throw CliFailure{kExitFailure, "I/O error: failed writing '" + path + "'"};
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw CliFailure{kExitFailure, "I/O error: cannot open '" + path +
                                       "' for reading: " + std::strerror(errno)};
  }
  return std::string(std::istreambuf_iterator<char>(in), {});
}

abar_family family_code(const std::string& name) {
  return name == "abar_plus" ? ABAR_FAMILY_PLUS : ABAR_FAMILY_ABAR;
}

const std::vector<std::string> kFamilies{"abar", "abar_plus"};

// ---- eval -----------------------------------------------------------------

struct EvalOptions {
  std::string family = "abar";
  double a = 0.0;
  double sigma = 1.0;
  std::optional<double> y;
  std::optional<double> prob;
  std::optional<double> s;
  bool pdf = false, log_pdf = false, cdf = false, survival = false;
  bool quantile = false, mean = false, moment2 = false, variance = false,
       mgf = false;
};

void add_eval(CLI::App& app, EvalOptions& o) {
  auto* cmd = app.add_subcommand("eval", "Evaluate one quantity and print it");
  cmd->add_option("--family", o.family, "Distribution family")
      ->check(CLI::IsMember(kFamilies))
      ->capture_default_str();
  cmd->add_option("--a", o.a, "Mean-vector norm a >= 0")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Component standard deviation > 0")
      ->capture_default_str();
  cmd->add_option("--y", o.y, "Evaluation point (pdf, log-pdf, cdf, survival)");
  cmd->add_option("--prob", o.prob, "Probability in (0,1) for --quantile");
  cmd->add_option("--s", o.s, "MGF argument for --mgf");
  auto* group = cmd->add_option_group("quantity", "Exactly one quantity");
  group->add_flag("--pdf", o.pdf, "Density at --y");
  group->add_flag("--log-pdf", o.log_pdf, "Log density at --y");
  group->add_flag("--cdf", o.cdf, "CDF at --y");
  group->add_flag("--survival", o.survival, "1 - CDF at --y");
  group->add_flag("--quantile", o.quantile, "Inverse CDF at --prob");
  group->add_flag("--mean", o.mean, "Mean");
  group->add_flag("--moment2", o.moment2, "Second raw moment (abar only)");
  group->add_flag("--variance", o.variance, "Variance (abar only)");
  group->add_flag("--mgf", o.mgf, "Moment generating function at --s (abar only)");
  group->require_option(1);
}

double need(const std::optional<double>& v, const char* flag, const char* what) {
  if (!v) {
    throw CliFailure{kExitUsage, std::string(what) + " requires " + flag};
  }
  return *v;
}

int run_eval(const EvalOptions& o) {
  abar_quantity q;
  double arg = 0.0;
  if (o.pdf || o.log_pdf || o.cdf || o.survival) {
    q = o.pdf ? ABAR_Q_PDF : o.log_pdf ? ABAR_Q_LOG_PDF : o.cdf ? ABAR_Q_CDF : ABAR_Q_SURVIVAL;
    arg = need(o.y, "--y", "this quantity");
  } else if (o.quantile) {
    q = ABAR_Q_QUANTILE;
    arg = need(o.prob, "--prob", "--quantile");
  } else if (o.mgf) {
    q = ABAR_Q_MGF;
    arg = need(o.s, "--s", "--mgf");
  } else {
    q = o.mean ? ABAR_Q_MEAN : o.moment2 ? ABAR_Q_MOMENT2 : ABAR_Q_VARIANCE;
  }
  double value = 0.0;
  check(abar_eval(family_code(o.family), o.a, o.sigma, q, arg, &value));
  std::printf("%.17g\n", value);
  return kExitOk;
}

// ---- curve ----------------------------------------------------------------

struct CurveOptions {
  std::string family = "abar";
  double a = 0.0;
  double sigma = 1.0;
  double y_min = 0.0;
  std::optional<double> y_max;
  std::size_t points = 201;
  std::vector<std::string> quantities{"pdf"};
  std::string out = "-";
};

void add_curve(CLI::App& app, CurveOptions& o) {
  auto* cmd = app.add_subcommand("curve", "Write pdf/cdf/survival on a grid as CSV");
  cmd->add_option("--family", o.family, "Distribution family")
      ->check(CLI::IsMember(kFamilies))
      ->capture_default_str();
  cmd->add_option("--a", o.a, "Mean-vector norm a >= 0")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Component standard deviation > 0")
      ->capture_default_str();
  cmd->add_option("--y-min", o.y_min, "Grid start")->capture_default_str();
  cmd->add_option("--y-max", o.y_max,
                  "Grid end (default a+12*sigma, squared for abar_plus)");
  cmd->add_option("--points", o.points, "Number of grid points (>= 2)")
      ->capture_default_str();
  cmd->add_option("--quantities", o.quantities, "Columns: pdf, cdf, survival")
      ->delimiter(',')
      ->check(CLI::IsMember({"pdf", "cdf", "survival"}))
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output path, '-' for stdout")->capture_default_str();
}

int run_curve(const CurveOptions& o) {
  unsigned mask = 0;
  for (const auto& q : o.quantities) {
    if (q == "pdf") mask |= ABAR_CURVE_PDF;
    if (q == "cdf") mask |= ABAR_CURVE_CDF;
    if (q == "survival") mask |= ABAR_CURVE_SURVIVAL;
  }
  double y_max = o.a + 12.0 * o.sigma;
  if (o.family == "abar_plus") y_max *= y_max;
  if (o.y_max) y_max = *o.y_max;
  char* csv = nullptr;
  check(abar_curve_csv(family_code(o.family), o.a, o.sigma, o.y_min, y_max, o.points,
                       mask, &csv));
  OwnedString owned(csv);
  write_output(o.out, csv);
  return kExitOk;
}

// ---- sample ---------------------------------------------------------------

struct SampleOptions {
  std::string family = "abar";
  double a = 0.0;
  double sigma = 1.0;
  std::vector<double> mean_vector;
  std::size_t n = 1000;
  std::string method = "norm3";
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string out = "-";
};

void add_sample(CLI::App& app, SampleOptions& o) {
  auto* cmd = app.add_subcommand("sample", "Draw a seeded batch and write it as CSV");
  cmd->add_option("--family", o.family, "Distribution family")
      ->check(CLI::IsMember(kFamilies))
      ->capture_default_str();
  auto* a = cmd->add_option("--a", o.a, "Mean-vector norm a >= 0")->capture_default_str();
  cmd->add_option("--sigma", o.sigma, "Component standard deviation > 0")
      ->capture_default_str();
  cmd->add_option("--mean-vector", o.mean_vector,
                  "Three comma-separated means a1,a2,a3 (abar norm3 only)")
      ->delimiter(',')
      ->expected(3)
      ->excludes(a);
  cmd->add_option("--n", o.n, "Number of draws")->capture_default_str();
  cmd->add_option("--method", o.method, "Sampler: norm3 or inverse_cdf")
      ->check(CLI::IsMember({"norm3", "inverse_cdf"}))
      ->capture_default_str();
  cmd->add_option("--seed", o.seed, "Generator seed")->capture_default_str();
  cmd->add_option("--stream-id", o.stream_id, "Generator stream id")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output path, '-' for stdout")->capture_default_str();
}

int run_sample(const SampleOptions& o) {
  const abar_method method =
      o.method == "inverse_cdf" ? ABAR_METHOD_INVERSE_CDF : ABAR_METHOD_NORM3;
  abar_batch* batch = nullptr;
  check(abar_sample(family_code(o.family), method, o.a, o.sigma,
                    o.mean_vector.empty() ? nullptr : o.mean_vector.data(), o.n,
                    o.seed, o.stream_id, &batch));
  std::unique_ptr<abar_batch, void (*)(abar_batch*)> owned(batch, abar_batch_destroy);
  char* csv = nullptr;
  check(abar_batch_to_csv(batch, &csv));
  OwnedString text(csv);
  write_output(o.out, csv);
  return kExitOk;
}

// ---- fit ------------------------------------------------------------------

struct FitOptions {
  std::string in = "-";
  std::string method = "mle";
  bool strict = false;
};

void add_fit(CLI::App& app, FitOptions& o) {
  auto* cmd = app.add_subcommand("fit", "Fit (a, sigma) to a sample CSV; prints JSON");
  cmd->add_option("--in", o.in, "Input CSV path, '-' for stdin")->capture_default_str();
  cmd->add_option("--method", o.method, "Estimator: moments or mle")
      ->check(CLI::IsMember({"moments", "mle"}))
      ->capture_default_str();
  cmd->add_flag("--strict", o.strict, "Exit with status 3 when the fit did not converge");
}

int run_fit(const FitOptions& o) {
  const std::string text = read_input(o.in);
  abar_fit* fit = nullptr;
  check(abar_fit_csv_text(text.c_str(),
                          o.method == "moments" ? ABAR_FIT_MOMENTS : ABAR_FIT_MLE, &fit));
  std::unique_ptr<abar_fit, void (*)(abar_fit*)> owned(fit, abar_fit_destroy);
  char* json = nullptr;
  check(abar_fit_to_json(fit, &json));
  OwnedString js(json);
  std::cout << json << std::flush;
  abar_fit_summary summary{};
  check(abar_fit_get(fit, &summary));
  if (o.strict && !summary.converged) {
    std::cerr << "abar fit: estimator did not converge (--strict)\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ---- tcp-validate ---------------------------------------------------------

struct TcpOptions {
  abar_tcp_config cfg{10.0, 0.005, 200.0, 1.5, 0, 0};
  std::size_t clusters = 20;
  long inject_fault = -1;
  std::string out = "-";
  std::string realization_out;
};

void add_tcp(CLI::App& app, TcpOptions& o) {
  auto* cmd = app.add_subcommand(
      "tcp-validate", "Simulate a Thomas cluster process and KS-test cluster distances");
  cmd->add_option("--box-half-width", o.cfg.box_half_width, "Half width w of [-w,w]^3")
      ->capture_default_str();
  cmd->add_option("--parent-intensity", o.cfg.parent_intensity,
                  "Parents per unit volume")
      ->capture_default_str();
  cmd->add_option("--mean-daughters", o.cfg.mean_daughters,
                  "Poisson mean of daughters per parent")
      ->capture_default_str();
  cmd->add_option("--scatter-sigma", o.cfg.scatter_sigma,
                  "Gaussian displacement standard deviation")
      ->capture_default_str();
  cmd->add_option("--seed", o.cfg.seed, "Generator seed")->capture_default_str();
  cmd->add_option("--stream-id", o.cfg.stream_id, "Generator stream id")
      ->capture_default_str();
  cmd->add_option("--clusters", o.clusters, "Number of clusters to test")
      ->capture_default_str();
  cmd->add_option("--inject-fault", o.inject_fault,
                  "Shift distances of this tested cluster by +sigma (-1 = none)")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "JSON report path, '-' for stdout")
      ->capture_default_str();
  cmd->add_option("--realization-out", o.realization_out,
                  "Also write the realization as CSV (x,y,z,parent_index)");
}

int run_tcp(const TcpOptions& o) {
  abar_tcp_report* report = nullptr;
  check(abar_tcp_validate(&o.cfg, o.clusters, o.inject_fault, &report));
  std::unique_ptr<abar_tcp_report, void (*)(abar_tcp_report*)> owned(
      report, abar_tcp_report_destroy);
  char* json = nullptr;
  check(abar_tcp_report_to_json(report, &json));
  OwnedString js(json);
  write_output(o.out, json);
  if (!o.realization_out.empty()) {
    char* csv = nullptr;
    check(abar_tcp_realization_csv(&o.cfg, &csv));
    OwnedString text(csv);
    write_output(o.realization_out, csv);
  }
  int pass = 0;
  check(abar_tcp_report_overall_pass(report, &pass));
  if (!pass) {
    std::cerr << "abar tcp-validate: fewer than 95% of clusters passed\n";
    return kExitFailure;
  }
  return kExitOk;
}

// ---- figures --------------------------------------------------------------

struct FiguresOptions {
  std::string out_dir = ".";
  std::string recipe;
};

void add_figures(CLI::App& app, FiguresOptions& o) {
  auto* cmd = app.add_subcommand("figures", "Write the data for every figure recipe");
  cmd->add_option("--out-dir", o.out_dir, "Directory for the CSV files")
      ->capture_default_str();
  cmd->add_option("--recipe", o.recipe, "Recipe JSON file (default: bundled recipes)");
}

int run_figures(const FiguresOptions& o) {
  std::string recipe_text;
  const char* recipe = nullptr;
  if (!o.recipe.empty()) {
    recipe_text = read_input(o.recipe);
    recipe = recipe_text.c_str();
  }
  std::error_code ec;
  std::filesystem::create_directories(o.out_dir, ec);
  if (ec) {
    throw CliFailure{kExitFailure,
                     "I/O error: cannot create '" + o.out_dir + "': " + ec.message()};
  }
  std::size_t count = 0;
  check(abar_figure_count(recipe, &count));
  for (std::size_t i = 0; i < count; ++i) {
    char* name = nullptr;
    char* csv = nullptr;
    check(abar_figure_render(recipe, i, &name, &csv));
    OwnedString owned_name(name);
    OwnedString owned_csv(csv);
    const auto path = std::filesystem::path(o.out_dir) / name;
    write_output(path.string(), csv);
    std::cout << path.string() << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"abar: Abar / Abar+ distributions, sampling, fitting and validation"};
  app.set_version_flag("--version", abar_version());
  app.require_subcommand(1);

  EvalOptions eval;
  CurveOptions curve;
  SampleOptions sample;
  FitOptions fit;
  TcpOptions tcp;
  FiguresOptions figures;
  add_eval(app, eval);
  add_curve(app, curve);
  add_sample(app, sample);
  add_fit(app, fit);
  add_tcp(app, tcp);
  add_figures(app, figures);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "eval") return run_eval(eval);
    if (name == "curve") return run_curve(curve);
    if (name == "sample") return run_sample(sample);
    if (name == "fit") return run_fit(fit);
    if (name == "tcp-validate") return run_tcp(tcp);
    return run_figures(figures);
  } catch (const CliFailure& f) {
    std::cerr << "abar: " << f.message << "\n";
    return f.code;
  }
}
