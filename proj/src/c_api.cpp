#include "mhl/mhl.h"

#include <cmath>
#include <cstring>
#include <optional>
#include <string>

#include "mhl/analysis.hpp"
#include "mhl/config.hpp"
#include "mhl/errors.hpp"
#include "mhl/radial_solver.hpp"
#include "mhl/run.hpp"
#include "mhl/specfun.hpp"
#include "mhl/transform.hpp"

struct mhl_config {
  mhl::RunConfig config;
};

struct mhl_radial_result {
  mhl::RadialSolveResult result;
  mhl::MonotoneCubic interpolant;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_summary;

mhl_status fail(mhl_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// Runs f, translating library exceptions into status codes.
template <class F>
mhl_status guarded(F&& f) {
  g_last_error.clear();
  try {
    f();
    return MHL_OK;
  } catch (const mhl::HelpRequested& e) {
    return fail(MHL_HELP_REQUESTED, e.what());
  } catch (const mhl::ConfigError& e) {
    return fail(MHL_ERR_CONFIG, e.what());
  } catch (const mhl::InvalidArgument& e) {
    return fail(MHL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const mhl::BlowUpError& e) {
    return fail(MHL_ERR_BLOWUP, e.what());
  } catch (const mhl::NumericError& e) {
    return fail(MHL_ERR_NUMERIC, e.what());
  } catch (const mhl::IoError& e) {
    return fail(MHL_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MHL_ERR_UNKNOWN, "out of memory");
  } catch (const std::exception& e) {
    return fail(MHL_ERR_UNKNOWN, e.what());
  } catch (...) {
    return fail(MHL_ERR_UNKNOWN, "unknown error");
  }
}

void copy_out(const std::string& s, char* buf, size_t capacity, size_t* needed) {
  if (needed) *needed = s.size() + 1;
  if (buf && capacity >= s.size() + 1) std::memcpy(buf, s.c_str(), s.size() + 1);
}

#define MHL_REQUIRE(cond, what) \
  if (!(cond)) return fail(MHL_ERR_INVALID_ARGUMENT, what)

}  // namespace

extern "C" {

const char* mhl_last_error(void) { return g_last_error.c_str(); }

const char* mhl_status_string(mhl_status status) {
  switch (status) {
    case MHL_OK: return "ok";
    case MHL_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MHL_ERR_CONFIG: return "configuration error";
    case MHL_ERR_BLOWUP: return "exponent overflow";
    case MHL_ERR_NUMERIC: return "numerical failure";
    case MHL_ERR_IO: return "i/o error";
    case MHL_HELP_REQUESTED: return "help requested";
    case MHL_ERR_UNKNOWN: return "unknown error";
  }
  return "unknown status";
}

const char* mhl_version(void) { return "1.0.0"; }

const char* mhl_usage(void) {
  static const std::string text = mhl::usage();
  return text.c_str();
}

mhl_status mhl_config_parse_args(int argc, const char* const* argv, mhl_config** out) {
  MHL_REQUIRE(out && argv && argc >= 1, "mhl_config_parse_args: null argument");
  *out = nullptr;
  return guarded([&] { *out = new mhl_config{mhl::parse_config_args(argc, argv)}; });
}

mhl_status mhl_config_parse_text(const char* text, mhl_config** out) {
  MHL_REQUIRE(out && text, "mhl_config_parse_text: null argument");
  *out = nullptr;
  return guarded([&] { *out = new mhl_config{mhl::parse_config_text(text)}; });
}

void mhl_config_free(mhl_config* config) { delete config; }

mhl_status mhl_config_serialize(const mhl_config* config, char* buf, size_t capacity, size_t* needed) {
  MHL_REQUIRE(config, "mhl_config_serialize: null config");
  return guarded([&] { copy_out(mhl::serialize_config(config->config), buf, capacity, needed); });
}

mhl_status mhl_config_hash(const mhl_config* config, char out[17]) {
  MHL_REQUIRE(config && out, "mhl_config_hash: null argument");
  return guarded([&] { copy_out(mhl::config_hash(config->config), out, 17, nullptr); });
}

mhl_status mhl_config_out_dir(const mhl_config* config, char* buf, size_t capacity, size_t* needed) {
  MHL_REQUIRE(config, "mhl_config_out_dir: null config");
  return guarded([&] { copy_out(config->config.out_dir, buf, capacity, needed); });
}

mhl_status mhl_run(const mhl_config* config, int* exit_code) {
  MHL_REQUIRE(config && exit_code, "mhl_run: null argument");
  *exit_code = mhl::kExitError;
  g_last_summary.clear();
  return guarded([&] {
    const mhl::RunOutcome o = mhl::run(config->config);
    g_last_summary = o.summary;
    *exit_code = o.exit_code;
  });
}

const char* mhl_last_run_summary(void) { return g_last_summary.c_str(); }

mhl_status mhl_first_eigenpair(mhl_eigenpair* out) {
  MHL_REQUIRE(out, "mhl_first_eigenpair: null argument");
  return guarded([&] {
    const mhl::EigenPair& e = mhl::first_eigenpair();
    *out = {e.j01, e.lambda1, e.phi1_at_0, e.norm_constant};
  });
}

mhl_status mhl_gamma_star_bound(double* out) {
  MHL_REQUIRE(out, "mhl_gamma_star_bound: null argument");
  return guarded([&] { *out = mhl::gamma_star_bound(); });
}

mhl_status mhl_carleson_chang_certificate(mhl_certificate* out) {
  MHL_REQUIRE(out, "mhl_carleson_chang_certificate: null argument");
  return guarded([&] {
    const mhl::Certificate c = mhl::carleson_chang_certificate();
    out->lhs = c.lhs;
    out->rhs = c.rhs;
    out->margin = c.margin;
    out->energy = c.energy;
    out->exp_square_integral = c.exp_square_integral;
    out->lhs_from_level = c.lhs_from_level;
    out->lhs_at_lower_bound = c.lhs_at_lower_bound;
    out->passes = c.passes ? 1 : 0;
    out->series_terms_needed = c.series_terms_needed;
  });
}

mhl_solve_options mhl_default_solve_options(void) {
  const mhl::SolveOptions o;
  return {o.tol, o.max_iter};
}

mhl_status mhl_solve_radial(double alpha, double gamma, int nt, const mhl_solve_options* options,
                            mhl_radial_result** out) {
  MHL_REQUIRE(out, "mhl_solve_radial: null argument");
  *out = nullptr;
  return guarded([&] {
    mhl::SolveOptions o;
    if (options) {
      o.tol = options->tol;
      o.max_iter = options->max_iter;
    }
    if (!(o.tol > 0.0) || o.max_iter < 1) throw mhl::InvalidArgument("mhl_solve_radial: bad solve options");
    const mhl::Params p = mhl::make_params(alpha, gamma);
    mhl::RadialSolveResult r = mhl::solve_radial(p, mhl::RadialGrid(nt), o);
    mhl::MonotoneCubic f = r.field.interpolant();
    *out = new mhl_radial_result{std::move(r), std::move(f)};
  });
}

void mhl_radial_result_free(mhl_radial_result* result) { delete result; }

mhl_status mhl_radial_result_summary(const mhl_radial_result* result, mhl_radial_summary* out) {
  MHL_REQUIRE(result && out, "mhl_radial_result_summary: null argument");
  return guarded([&] {
    const auto& r = result->result;
    out->alpha = r.params.alpha;
    out->gamma = r.params.gamma;
    out->eps = r.params.eps;
    out->level = r.diag.level;
    out->multiplier = r.diag.multiplier;
    out->residual = r.diag.residual;
    out->ratio = mhl::level_ratio(r.diag.level, r.params);
    out->profile_distance = mhl::profile_distance(r);
    out->pohozaev_residual = mhl::pohozaev_residual(r.field, r.params);
    out->iterations = r.diag.iterations;
    out->converged = r.diag.converged ? 1 : 0;
  });
}

mhl_status mhl_radial_result_nodes(const mhl_radial_result* result, double* t, double* v, size_t capacity,
                                   size_t* count) {
  MHL_REQUIRE(result && count, "mhl_radial_result_nodes: null argument");
  const mhl::RadialField& f = result->result.field;
  *count = f.size();
  if (!t && !v) return MHL_OK;
  MHL_REQUIRE(capacity >= f.size(), "mhl_radial_result_nodes: buffer too small");
  for (size_t i = 0; i < f.size(); ++i) {
    if (t) t[i] = f.grid().node(i);
    if (v) v[i] = f[i];
  }
  return MHL_OK;
}

mhl_status mhl_radial_result_eval(const mhl_radial_result* result, double r, double* u) {
  MHL_REQUIRE(result && u, "mhl_radial_result_eval: null argument");
  MHL_REQUIRE(r >= 0.0 && r <= 1.0, "mhl_radial_result_eval: r outside [0, 1]");
  const double eps = result->result.params.eps;
  *u = r >= 1.0 ? 0.0 : std::sqrt(eps) * result->interpolant(std::pow(r, 1.0 / eps));
  return MHL_OK;
}

mhl_status mhl_radial_second_variation(const mhl_radial_result* result, mhl_second_variation* out) {
  MHL_REQUIRE(result && out, "mhl_radial_second_variation: null argument");
  return guarded([&] {
    const mhl::SecondVariationReport s = mhl::second_variation(result->result.field, result->result.params);
    *out = {s.d2f_value, s.d2f_reduced, s.normalized, s.limit_expression, s.gamma_star_bound, s.pohozaev_residual};
  });
}

}  // extern "C"
