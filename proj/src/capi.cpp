#include "abar/abar.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "abar/abar_plus.hpp"
#include "abar/curve.hpp"
#include "abar/distribution.hpp"
#include "abar/errors.hpp"
#include "abar/fitting.hpp"
#include "abar/random.hpp"
#include "abar/sampling.hpp"
#include "abar/tcp.hpp"

struct abar_stream {
  abar::RandomStream stream;
};

struct abar_batch {
  abar::SampleBatch batch;
};

struct abar_fit {
  abar::FitResult result;
};

struct abar_tcp_report {
  abar::TcpReport report;
};

namespace {

thread_local std::string last_error;

abar_status fail(abar_status status, const char* message) {
  last_error = message;
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
abar_status guarded(Body&& body) {
  try {
    body();
    return ABAR_OK;
  } catch (const abar::DomainError& e) {
    return fail(ABAR_ERR_DOMAIN, e.what());
  } catch (const abar::RangeError& e) {
    return fail(ABAR_ERR_RANGE, e.what());
  } catch (const abar::BracketError& e) {
    return fail(ABAR_ERR_BRACKET, e.what());
  } catch (const abar::NumericalError& e) {
    return fail(ABAR_ERR_NUMERICAL, e.what());
  } catch (const abar::InputError& e) {
    return fail(ABAR_ERR_INPUT, e.what());
  } catch (const abar::IoError& e) {
    return fail(ABAR_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ABAR_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ABAR_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ABAR_ERR_INTERNAL, "unknown exception");
  }
}

char* duplicate(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.data(), text.size() + 1);
  return out;
}

abar::Family to_family(abar_family family) {
  switch (family) {
    case ABAR_FAMILY_ABAR:
      return abar::Family::abar;
    case ABAR_FAMILY_PLUS:
      return abar::Family::abar_plus;
  }
  throw abar::InputError("unknown family code");
}

abar::SampleMethod to_method(abar_method method) {
  switch (method) {
    case ABAR_METHOD_NORM3:
      return abar::SampleMethod::norm3;
    case ABAR_METHOD_INVERSE_CDF:
      return abar::SampleMethod::inverse_cdf;
  }
  throw abar::InputError("unknown sampling method code");
}

abar::FitMethod to_fit_method(abar_fit_method method) {
  switch (method) {
    case ABAR_FIT_MOMENTS:
      return abar::FitMethod::moments;
    case ABAR_FIT_MLE:
      return abar::FitMethod::mle;
  }
  throw abar::InputError("unknown fit method code");
}

double eval_abar(abar_quantity q, const abar::AbarParams& p, double arg) {
  switch (q) {
    case ABAR_Q_PDF:
      return abar::pdf(p, arg);
    case ABAR_Q_LOG_PDF:
      return abar::log_pdf(p, arg);
    case ABAR_Q_CDF:
      return abar::cdf(p, arg);
    case ABAR_Q_SURVIVAL:
      return abar::survival(p, arg);
    case ABAR_Q_QUANTILE:
      return abar::quantile(p, arg);
    case ABAR_Q_MEAN:
      return abar::mean(p);
    case ABAR_Q_MOMENT2:
      return abar::raw_moment2(p);
    case ABAR_Q_VARIANCE:
      return abar::variance(p);
    case ABAR_Q_MGF:
      return abar::mgf(p, arg);
  }
  throw abar::InputError("unknown quantity code");
}

double eval_plus(abar_quantity q, const abar::AbarParams& p, double arg) {
  switch (q) {
    case ABAR_Q_PDF:
      return abar::plus_pdf(p, arg);
    case ABAR_Q_LOG_PDF:
      return abar::plus_log_pdf(p, arg);
    case ABAR_Q_CDF:
      return abar::plus_cdf(p, arg);
    case ABAR_Q_SURVIVAL:
      return abar::plus_survival(p, arg);
    case ABAR_Q_QUANTILE:
      return abar::plus_quantile(p, arg);
    case ABAR_Q_MEAN:
      return abar::plus_mean(p);
    case ABAR_Q_MOMENT2:
    case ABAR_Q_VARIANCE:
    case ABAR_Q_MGF:
      throw abar::InputError(
          "abar_plus provides pdf, log_pdf, cdf, survival, quantile and mean "
          "only");
  }
  throw abar::InputError("unknown quantity code");
}

abar::TcpConfig to_config(const abar_tcp_config& c) {
  abar::TcpConfig cfg;
  cfg.box_half_width = c.box_half_width;
  cfg.parent_intensity = c.parent_intensity;
  cfg.mean_daughters = c.mean_daughters;
  cfg.scatter_sigma = c.scatter_sigma;
  cfg.seed = c.seed;
  cfg.stream_id = c.stream_id;
  return cfg;
}

std::string recipes_or_default(const char* recipe_json) {
  return recipe_json ? std::string(recipe_json)
                     : abar::default_figure_recipes_json();
}

}  // namespace

extern "C" {

const char* abar_version(void) { return "1.0.0"; }

const char* abar_last_error(void) { return last_error.c_str(); }

const char* abar_status_name(abar_status status) {
  switch (status) {
    case ABAR_OK:
      return "ok";
    case ABAR_ERR_DOMAIN:
      return "domain error";
    case ABAR_ERR_RANGE:
      return "range error";
    case ABAR_ERR_BRACKET:
      return "bracket error";
    case ABAR_ERR_NUMERICAL:
      return "numerical error";
    case ABAR_ERR_INPUT:
      return "input error";
    case ABAR_ERR_IO:
      return "I/O error";
    case ABAR_ERR_NULL:
      return "null argument";
    case ABAR_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

void abar_string_free(char* text) { std::free(text); }

abar_status abar_eval(abar_family family, double a, double sigma,
                      abar_quantity quantity, double arg, double* out) {
  if (out == nullptr) return fail(ABAR_ERR_NULL, "abar_eval: out is NULL");
  return guarded([&] {
    const abar::AbarParams p(a, sigma);
    *out = to_family(family) == abar::Family::abar ? eval_abar(quantity, p, arg)
                                                   : eval_plus(quantity, p, arg);
  });
}

abar_status abar_stream_create(uint64_t seed, uint64_t stream_id,
                               abar_stream** out) {
  if (out == nullptr) return fail(ABAR_ERR_NULL, "abar_stream_create: out is NULL");
  return guarded([&] { *out = new abar_stream{abar::RandomStream(seed, stream_id)}; });
}

void abar_stream_destroy(abar_stream* stream) { delete stream; }

abar_status abar_stream_next_u64(abar_stream* stream, uint64_t* out) {
  if (stream == nullptr || out == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_stream_next_u64: NULL argument");
  }
  *out = stream->stream.next_u64();
  return ABAR_OK;
}

abar_status abar_stream_gaussian(abar_stream* stream, double mean, double sigma,
                                 double* out) {
  if (stream == nullptr || out == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_stream_gaussian: NULL argument");
  }
  return guarded([&] { *out = abar::gaussian_draw(stream->stream, mean, sigma); });
}

abar_status abar_sample(abar_family family, abar_method method, double a,
                        double sigma, const double* mean_vector, size_t n,
                        uint64_t seed, uint64_t stream_id, abar_batch** out) {
  if (out == nullptr) return fail(ABAR_ERR_NULL, "abar_sample: out is NULL");
  return guarded([&] {
    abar::RandomStream stream(seed, stream_id);
    const auto fam = to_family(family);
    const auto how = to_method(method);
    if (mean_vector != nullptr) {
      if (fam != abar::Family::abar || how != abar::SampleMethod::norm3) {
        throw abar::InputError(
            "a mean vector is only accepted by the abar norm3 sampler");
      }
      const abar::MeanVector3 m{mean_vector[0], mean_vector[1], mean_vector[2]};
      *out = new abar_batch{abar::sample_norm3(m, sigma, n, stream)};
      return;
    }
    *out = new abar_batch{
        abar::sample(fam, abar::AbarParams(a, sigma), how, n, stream)};
  });
}

void abar_batch_destroy(abar_batch* batch) { delete batch; }

abar_status abar_batch_values(const abar_batch* batch, const double** values,
                              size_t* n) {
  if (batch == nullptr || values == nullptr || n == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_batch_values: NULL argument");
  }
  *values = batch->batch.values.data();
  *n = batch->batch.values.size();
  return ABAR_OK;
}

abar_status abar_batch_to_csv(const abar_batch* batch, char** csv) {
  if (batch == nullptr || csv == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_batch_to_csv: NULL argument");
  }
  return guarded([&] { *csv = duplicate(abar::to_csv(batch->batch)); });
}

abar_status abar_fit_samples(const double* values, size_t n,
                             abar_fit_method method, int has_init,
                             double init_a, double init_sigma, abar_fit** out) {
  if (out == nullptr || (values == nullptr && n > 0)) {
    return fail(ABAR_ERR_NULL, "abar_fit_samples: NULL argument");
  }
  return guarded([&] {
    const std::span<const double> samples(values, n);
    if (to_fit_method(method) == abar::FitMethod::moments) {
      *out = new abar_fit{abar::fit_moments(samples)};
      return;
    }
    std::optional<abar::AbarParams> init;
    if (has_init) init = abar::AbarParams(init_a, init_sigma);
    *out = new abar_fit{abar::fit_mle(samples, init)};
  });
}

abar_status abar_fit_csv_text(const char* csv_text, abar_fit_method method,
                              abar_fit** out) {
  if (csv_text == nullptr || out == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_fit_csv_text: NULL argument");
  }
  std::vector<double> values;
  const abar_status parsed =
      guarded([&] { values = abar::parse_samples_csv(csv_text); });
  if (parsed != ABAR_OK) return parsed;
  return abar_fit_samples(values.data(), values.size(), method, 0, 0.0, 0.0, out);
}

void abar_fit_destroy(abar_fit* fit) { delete fit; }

abar_status abar_fit_get(const abar_fit* fit, abar_fit_summary* out) {
  if (fit == nullptr || out == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_fit_get: NULL argument");
  }
  const auto& r = fit->result;
  out->a_hat = r.a_hat;
  out->sigma_hat = r.sigma_hat;
  out->log_likelihood = r.log_likelihood;
  out->iterations = r.iterations;
  out->converged = r.converged ? 1 : 0;
  out->method = r.method == abar::FitMethod::moments ? ABAR_FIT_MOMENTS : ABAR_FIT_MLE;
  return ABAR_OK;
}

abar_status abar_fit_to_json(const abar_fit* fit, char** json) {
  if (fit == nullptr || json == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_fit_to_json: NULL argument");
  }
  return guarded([&] { *json = duplicate(abar::to_json(fit->result)); });
}

abar_status abar_curve_csv(abar_family family, double a, double sigma,
                           double y_min, double y_max, size_t points,
                           unsigned quantity_mask, char** csv) {
  if (csv == nullptr) return fail(ABAR_ERR_NULL, "abar_curve_csv: csv is NULL");
  return guarded([&] {
    abar::CurveRequest req;
    req.family = to_family(family);
    req.params = abar::AbarParams(a, sigma);
    req.y_min = y_min;
    req.y_max = y_max;
    req.points = points;
    req.quantities.clear();
    if (quantity_mask & ABAR_CURVE_PDF) req.quantities.push_back(abar::CurveQuantity::pdf);
    if (quantity_mask & ABAR_CURVE_CDF) req.quantities.push_back(abar::CurveQuantity::cdf);
    if (quantity_mask & ABAR_CURVE_SURVIVAL) {
      req.quantities.push_back(abar::CurveQuantity::survival);
    }
    *csv = duplicate(abar::to_csv(abar::evaluate_curve(req), abar::describe(req)));
  });
}

abar_status abar_figure_count(const char* recipe_json, size_t* count) {
  if (count == nullptr) return fail(ABAR_ERR_NULL, "abar_figure_count: count is NULL");
  return guarded([&] {
    *count = abar::parse_figure_recipes(recipes_or_default(recipe_json)).size();
  });
}

abar_status abar_figure_render(const char* recipe_json, size_t index,
                               char** file_name, char** csv) {
  if (file_name == nullptr || csv == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_figure_render: NULL argument");
  }
  return guarded([&] {
    const auto recipes = abar::parse_figure_recipes(recipes_or_default(recipe_json));
    if (index >= recipes.size()) {
      throw abar::InputError("abar_figure_render: figure index out of range");
    }
    const auto figure = abar::render_figure(recipes[index]);
    char* name = duplicate(figure.file);
    try {
      *csv = duplicate(figure.csv);
    } catch (...) {
      std::free(name);
      throw;
    }
    *file_name = name;
  });
}

const char* abar_default_figure_recipes(void) {
  return abar::default_figure_recipes_json().c_str();
}

abar_status abar_tcp_validate(const abar_tcp_config* config,
                              size_t clusters_to_test, long fault_cluster,
                              abar_tcp_report** out) {
  if (config == nullptr || out == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_tcp_validate: NULL argument");
  }
  return guarded([&] {
    std::optional<std::size_t> fault;
    if (fault_cluster >= 0) fault = static_cast<std::size_t>(fault_cluster);
    *out = new abar_tcp_report{
        abar::validate_application2(to_config(*config), clusters_to_test, fault)};
  });
}

void abar_tcp_report_destroy(abar_tcp_report* report) { delete report; }

abar_status abar_tcp_report_overall_pass(const abar_tcp_report* report,
                                         int* pass) {
  if (report == nullptr || pass == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_tcp_report_overall_pass: NULL argument");
  }
  *pass = report->report.overall_pass ? 1 : 0;
  return ABAR_OK;
}

abar_status abar_tcp_report_to_json(const abar_tcp_report* report, char** json) {
  if (report == nullptr || json == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_tcp_report_to_json: NULL argument");
  }
  return guarded([&] { *json = duplicate(abar::to_json(report->report)); });
}

abar_status abar_tcp_realization_csv(const abar_tcp_config* config, char** csv) {
  if (config == nullptr || csv == nullptr) {
    return fail(ABAR_ERR_NULL, "abar_tcp_realization_csv: NULL argument");
  }
  return guarded([&] {
    const auto cfg = to_config(*config);
    *csv = duplicate(abar::to_csv(abar::generate_tcp(cfg), cfg));
  });
}

}  // extern "C"
