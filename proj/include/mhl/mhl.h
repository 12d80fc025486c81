#ifndef MHL_MHL_H
#define MHL_MHL_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(MHL_BUILDING_LIBRARY)
#define MHL_API __declspec(dllexport)
#else
#define MHL_API __declspec(dllimport)
#endif
#else
#define MHL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mhl_status {
  MHL_OK = 0,
  MHL_ERR_INVALID_ARGUMENT = 1,
  MHL_ERR_CONFIG = 2,
  MHL_ERR_BLOWUP = 3,
  MHL_ERR_NUMERIC = 4,
  MHL_ERR_IO = 5,
  /* --help was given; mhl_last_error() holds the usage text. */
  MHL_HELP_REQUESTED = 6,
  MHL_ERR_UNKNOWN = 7
} mhl_status;

/* Message of the most recent failure on the calling thread ("" if none). */
MHL_API const char* mhl_last_error(void);
MHL_API const char* mhl_status_string(mhl_status status);
MHL_API const char* mhl_version(void);
MHL_API const char* mhl_usage(void);

/* ---- configuration and batch runs ---- */

typedef struct mhl_config mhl_config;

MHL_API mhl_status mhl_config_parse_args(int argc, const char* const* argv, mhl_config** out);
MHL_API mhl_status mhl_config_parse_text(const char* text, mhl_config** out);
MHL_API void mhl_config_free(mhl_config* config);

/* Copies the key=value serialization (NUL-terminated) into buf when it fits;
   *needed receives the size including the terminator. buf may be NULL. */
MHL_API mhl_status mhl_config_serialize(const mhl_config* config, char* buf, size_t capacity, size_t* needed);
/* 16 hex digits plus NUL. */
MHL_API mhl_status mhl_config_hash(const mhl_config* config, char out[17]);
MHL_API mhl_status mhl_config_out_dir(const mhl_config* config, char* buf, size_t capacity, size_t* needed);

/* Runs the configured command and writes the output files. exit_code gets
   0 (success), 2 (some solve did not converge) or 1 (error). The return
   value is MHL_OK whenever the run itself completed, even with exit code 2. */
MHL_API mhl_status mhl_run(const mhl_config* config, int* exit_code);
/* Summary text of the last mhl_run on the calling thread. */
MHL_API const char* mhl_last_run_summary(void);

/* ---- direct computations ---- */

typedef struct mhl_eigenpair {
  double j01;
  double lambda1;
  double phi1_at_0;
  double norm_constant;
} mhl_eigenpair;

MHL_API mhl_status mhl_first_eigenpair(mhl_eigenpair* out);
MHL_API mhl_status mhl_gamma_star_bound(double* out);

typedef struct mhl_certificate {
  double lhs;
  double rhs;
  double margin;
  double energy;
  double exp_square_integral;
  double lhs_from_level;
  double lhs_at_lower_bound;
  int passes;
  int series_terms_needed;
} mhl_certificate;

MHL_API mhl_status mhl_carleson_chang_certificate(mhl_certificate* out);

typedef struct mhl_solve_options {
  double tol;
  int max_iter;
} mhl_solve_options;

/* tol = 1e-8, max_iter = 50000. */
MHL_API mhl_solve_options mhl_default_solve_options(void);

typedef struct mhl_radial_result mhl_radial_result;

typedef struct mhl_radial_summary {
  double alpha;
  double gamma;
  double eps;
  double level;
  double multiplier;
  double residual;
  double ratio;
  double profile_distance;
  double pohozaev_residual;
  int iterations;
  int converged;
} mhl_radial_summary;

typedef struct mhl_second_variation {
  double d2f_value;
  double d2f_reduced;
  double normalized;
  double limit_expression;
  double gamma_star_bound;
  double pohozaev_residual;
} mhl_second_variation;

/* Radial maximizer on a grid of nt cells. options may be NULL. */
MHL_API mhl_status mhl_solve_radial(double alpha, double gamma, int nt, const mhl_solve_options* options,
                                    mhl_radial_result** out);
MHL_API void mhl_radial_result_free(mhl_radial_result* result);
MHL_API mhl_status mhl_radial_result_summary(const mhl_radial_result* result, mhl_radial_summary* out);
/* Node values in transformed variables; *count receives the node count.
   t and v may be NULL to query the count. */
MHL_API mhl_status mhl_radial_result_nodes(const mhl_radial_result* result, double* t, double* v, size_t capacity,
                                           size_t* count);
/* Maximizer in the physical radius, u(r) for 0 <= r <= 1. */
MHL_API mhl_status mhl_radial_result_eval(const mhl_radial_result* result, double r, double* u);
MHL_API mhl_status mhl_radial_second_variation(const mhl_radial_result* result, mhl_second_variation* out);

#ifdef __cplusplus
}
#endif

#endif
