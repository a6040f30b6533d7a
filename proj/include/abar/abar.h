/*
 * C interface to the Abar / Abar+ distribution library.
 *
 * Every fallible call returns an abar_status. On failure a human-readable
 * message is available from abar_last_error() on the calling thread until
 * the next failing call on that thread. Objects are opaque handles released
 * with their matching *_destroy function; strings returned through char**
 * are released with abar_string_free.
 */
#ifndef ABAR_ABAR_H_
#define ABAR_ABAR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ABAR_BUILDING_LIBRARY)
#define ABAR_API __declspec(dllexport)
#else
#define ABAR_API __declspec(dllimport)
#endif
#else
#define ABAR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum abar_status {
  ABAR_OK = 0,
  ABAR_ERR_DOMAIN = 1,    /* argument outside the mathematical domain */
  ABAR_ERR_RANGE = 2,     /* result not representable */
  ABAR_ERR_BRACKET = 3,   /* root bracket without a sign change */
  ABAR_ERR_NUMERICAL = 4, /* iteration failed to converge */
  ABAR_ERR_INPUT = 5,     /* malformed input data or configuration */
  ABAR_ERR_IO = 6,
  ABAR_ERR_NULL = 7,      /* required pointer argument was NULL */
  ABAR_ERR_INTERNAL = 99
} abar_status;

typedef enum abar_family { ABAR_FAMILY_ABAR = 0, ABAR_FAMILY_PLUS = 1 } abar_family;

typedef enum abar_quantity {
  ABAR_Q_PDF = 0,
  ABAR_Q_LOG_PDF = 1,
  ABAR_Q_CDF = 2,
  ABAR_Q_SURVIVAL = 3,
  ABAR_Q_QUANTILE = 4, /* arg is a probability */
  ABAR_Q_MEAN = 5,     /* arg ignored */
  ABAR_Q_MOMENT2 = 6,  /* arg ignored; Abar only */
  ABAR_Q_VARIANCE = 7, /* arg ignored; Abar only */
  ABAR_Q_MGF = 8       /* arg is s; Abar only */
} abar_quantity;

typedef enum abar_method { ABAR_METHOD_NORM3 = 0, ABAR_METHOD_INVERSE_CDF = 1 } abar_method;

typedef enum abar_fit_method { ABAR_FIT_MOMENTS = 0, ABAR_FIT_MLE = 1 } abar_fit_method;

/* Bit flags for curve columns. */
enum {
  ABAR_CURVE_PDF = 1u << 0,
  ABAR_CURVE_CDF = 1u << 1,
  ABAR_CURVE_SURVIVAL = 1u << 2
};

ABAR_API const char* abar_version(void);
ABAR_API const char* abar_last_error(void);
ABAR_API const char* abar_status_name(abar_status status);
ABAR_API void abar_string_free(char* text);

/* ---- evaluation --------------------------------------------------------- */

ABAR_API abar_status abar_eval(abar_family family, double a, double sigma,
                               abar_quantity quantity, double arg, double* out);

/* ---- random streams ----------------------------------------------------- */

typedef struct abar_stream abar_stream;

ABAR_API abar_status abar_stream_create(uint64_t seed, uint64_t stream_id,
                                        abar_stream** out);
ABAR_API void abar_stream_destroy(abar_stream* stream);
ABAR_API abar_status abar_stream_next_u64(abar_stream* stream, uint64_t* out);
ABAR_API abar_status abar_stream_gaussian(abar_stream* stream, double mean,
                                          double sigma, double* out);

/* ---- sampling ----------------------------------------------------------- */

typedef struct abar_batch abar_batch;

/* Draws n values. With mean_vector non-NULL (three doubles) the Abar norm3
 * sampler uses that vector and `a` is ignored; it is rejected for other
 * family/method combinations. */
ABAR_API abar_status abar_sample(abar_family family, abar_method method,
                                 double a, double sigma,
                                 const double* mean_vector, size_t n,
                                 uint64_t seed, uint64_t stream_id,
                                 abar_batch** out);
ABAR_API void abar_batch_destroy(abar_batch* batch);
ABAR_API abar_status abar_batch_values(const abar_batch* batch,
                                       const double** values, size_t* n);
ABAR_API abar_status abar_batch_to_csv(const abar_batch* batch, char** csv);

/* ---- fitting ------------------------------------------------------------ */

typedef struct abar_fit abar_fit;

typedef struct abar_fit_summary {
  double a_hat;
  double sigma_hat;
  double log_likelihood;
  size_t iterations;
  int converged;
  abar_fit_method method;
} abar_fit_summary;

/* init_a / init_sigma are used as the MLE starting point when has_init != 0. */
ABAR_API abar_status abar_fit_samples(const double* values, size_t n,
                                      abar_fit_method method, int has_init,
                                      double init_a, double init_sigma,
                                      abar_fit** out);
/* Parses CSV text (comment lines start with '#', an optional non-numeric
 * header row, then one positive value per line) and fits it. Malformed
 * lines are reported with their 1-based line number. */
ABAR_API abar_status abar_fit_csv_text(const char* csv_text,
                                       abar_fit_method method, abar_fit** out);
ABAR_API void abar_fit_destroy(abar_fit* fit);
ABAR_API abar_status abar_fit_get(const abar_fit* fit, abar_fit_summary* out);
ABAR_API abar_status abar_fit_to_json(const abar_fit* fit, char** json);

/* ---- curves and figures ------------------------------------------------- */

ABAR_API abar_status abar_curve_csv(abar_family family, double a, double sigma,
                                    double y_min, double y_max, size_t points,
                                    unsigned quantity_mask, char** csv);

/* recipe_json may be NULL for the bundled recipes. */
ABAR_API abar_status abar_figure_count(const char* recipe_json, size_t* count);
ABAR_API abar_status abar_figure_render(const char* recipe_json, size_t index,
                                        char** file_name, char** csv);
ABAR_API const char* abar_default_figure_recipes(void);

/* ---- Thomas cluster process validation ---------------------------------- */

typedef struct abar_tcp_config {
  double box_half_width;
  double parent_intensity;
  double mean_daughters;
  double scatter_sigma;
  uint64_t seed;
  uint64_t stream_id;
} abar_tcp_config;

typedef struct abar_tcp_report abar_tcp_report;

/* fault_cluster < 0 disables fault injection. */
ABAR_API abar_status abar_tcp_validate(const abar_tcp_config* config,
                                       size_t clusters_to_test,
                                       long fault_cluster,
                                       abar_tcp_report** out);
ABAR_API void abar_tcp_report_destroy(abar_tcp_report* report);
ABAR_API abar_status abar_tcp_report_overall_pass(const abar_tcp_report* report,
                                                  int* pass);
ABAR_API abar_status abar_tcp_report_to_json(const abar_tcp_report* report,
                                             char** json);
ABAR_API abar_status abar_tcp_realization_csv(const abar_tcp_config* config,
                                              char** csv);

#ifdef __cplusplus
}
#endif

#endif /* ABAR_ABAR_H_ */
