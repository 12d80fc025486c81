// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mhl/analysis.hpp"
#include "mhl/disk_solver.hpp"
#include "mhl/radial_solver.hpp"
#include "mhl/specfun.hpp"
#include "mhl/transform.hpp"
#include "radial_problem.hpp"
#include "support.hpp"

using namespace mhl;
namespace ts = testing_support;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

RadialField normalized(RadialField v) {
  const double n = std::sqrt(radial_constraint(v));
  for (double& x : v.mutable_values()) x /= n;
  return v;
}

// (1 - r^2)(a + b r^2 + c r^4).
RadialProfile poly_profile(double a, double b, double c) {
  return {[=](double r) {
            if (r >= 1.0) return 0.0;
            const double s = r * r;
            return (1.0 - s) * (a + b * s + c * s * s);
          },
          [=](double r) {
            if (r >= 1.0) return 0.0;
            const double s = r * r;
            return 2.0 * r * (-(a + b * s + c * s * s) + (1.0 - s) * (b + 2.0 * c * s));
          }};
}

int workers() { return std::max(1u, std::thread::hardware_concurrency()); }

// ---------------------------------------------------------------------------

void criterion1() {
  const auto t0 = Clock::now();
  const EigenPair& e = first_eigenpair();
  const double internal = std::fabs(e.lambda1 - e.j01 * e.j01);
  const double dt = seconds_since(t0);
  const bool ok = std::fabs(e.lambda1 - 5.783) < 1e-3 && internal < 1e-12 && dt < 1.0;
  report(1, ok, "lambda1 = " + fmt("%.15f", e.lambda1) + ", |lambda1 - j01^2| = " + fmt("%.2e", internal) +
                    ", " + fmt("%.3f", dt) + " s");
}

void criterion2() {
  const auto t0 = Clock::now();
  const Certificate c = carleson_chang_certificate();
  const double dt = seconds_since(t0);
  // The quoted lhs 2.787 uses the lower bound 1.453 for int e^{t^2}; with the
  // exact integral lhs is 2.7944. Both are required to clear rhs by 0.015.
  const double margin_at_bound = c.lhs_at_lower_bound - c.rhs;
  const bool ok = std::fabs(c.energy - 1.0) < 1e-10 && std::fabs(c.lhs_at_lower_bound - 2.787) < 1e-3 &&
                  c.lhs >= c.lhs_at_lower_bound && c.lhs - 2.787 < 1e-2 && std::fabs(c.rhs - 2.767) < 1e-3 &&
                  c.margin > 0.015 && margin_at_bound > 0.015 && c.passes &&
                  std::fabs(c.exp_square_integral - 1.462651746) < 1e-8 && c.exp_square_integral > 1.453 &&
                  dt < 1.0;
  report(2, ok, "energy = " + fmt("%.12f", c.energy) + ", lhs = " + fmt("%.6f", c.lhs) +
                    " (with 1.453: " + fmt("%.6f", c.lhs_at_lower_bound) + "), rhs = " + fmt("%.6f", c.rhs) +
                    ", margin = " + fmt("%.4f", c.margin) + ", int e^{t^2} = " +
                    fmt("%.10f", c.exp_square_integral) + ", " + fmt("%.3f", dt) + " s");
}

struct RadialSweep {
  std::vector<RadialSolveResult> results;  // alpha = 20, 50, 100, 200
  double seconds = 0.0;
};

RadialSweep radial_sweep() {
  RadialSweep s;
  const auto t0 = Clock::now();
  for (double alpha : {20.0, 50.0, 100.0, 200.0})
    s.results.push_back(solve_radial(make_params(alpha, 1.0), RadialGrid(2048)));
  s.seconds = seconds_since(t0);
  return s;
}

void criterion3(const RadialSweep& s) {
  const AsymptoticsTable t = level_asymptotics_report(s.results);
  std::string detail = "ratios";
  bool converged = t.excluded == 0;
  for (const auto& row : t.rows) detail += " " + fmt("%.8f", row.ratio);
  const double last = std::fabs(t.rows.back().ratio - 1.0);
  const bool ok = converged && t.ratio_trend && last < 0.1 && s.seconds < 60.0;
  report(3, ok, detail + ", |ratio - 1| at alpha 200 = " + fmt("%.2e", last) + ", " + fmt("%.1f", s.seconds) + " s");
}

void criterion4(const RadialSweep& s) {
  const AsymptoticsTable t = level_asymptotics_report(s.results);
  std::string detail = "distances";
  for (const auto& row : t.rows) detail += " " + fmt("%.5f", row.profile_distance);
  const bool ok = t.excluded == 0 && t.distance_trend && t.rows.back().profile_distance < 0.1;
  report(4, ok, detail);
}

void criterion5() {
  const double g = gamma_star_bound();
  const double err = std::fabs(g - ts::kGammaStar);
  const bool ok = err < 1e-8 && g < kFourPi && limit_expression(4.0) < 0.0 && limit_expression(8.0) > 0.0;
  report(5, ok, "bound = " + fmt("%.12f", g) + " (oracle error " + fmt("%.1e", err) +
                    "), limit sign at 4: " + (limit_expression(4.0) < 0 ? "-" : "+") +
                    ", at 8: " + (limit_expression(8.0) < 0 ? "-" : "+"));
}

void criterion6(const RadialSweep& s) {
  bool ok = true;
  double prev = 1e300;
  std::string detail = "|normalized - limit|";
  for (std::size_t k = 1; k < s.results.size(); ++k) {  // alpha 50, 100, 200
    const RadialSolveResult& r = s.results[k];
    const SecondVariationReport sv = second_variation(r.field, r.params);
    const double diff = std::fabs(sv.normalized - sv.limit_expression);
    ok = ok && r.diag.converged && diff < prev && sv.pohozaev_residual < 1e-6;
    prev = diff;
    detail += " " + fmt("%.4e", diff) + " (pohozaev " + fmt("%.1e", sv.pohozaev_residual) + ")";
  }
  report(6, ok, detail + ", limit = " + fmt("%.10f", limit_expression(1.0)));
}

void criterion7() {
  const auto t0 = Clock::now();
  struct Case {
    double alpha;
    int ntheta;
  };
  const Case cases[] = {{100.0, 1024}, {200.0, 2048}, {300.0, 3072}};
  std::vector<SymmetryReport> reps;
  for (const Case& c : cases) {
    SymmetryConfig cfg;
    cfg.nt = 128;
    cfg.ntheta = c.ntheta;
    cfg.workers = workers();
    reps.push_back(symmetry_report(make_params(c.alpha, 12.0), cfg));
    const SymmetryReport& r = reps.back();
    std::printf("  alpha %g: S = %.6e S_rad = %.6e gap = %.4e grid_error = %.3e relative_gap = %.4f "
                "anisotropy = %.4f broken = %s converged = %s (%.0f s)\n",
                c.alpha, r.S, r.S_rad, r.gap, r.grid_error_estimate, r.relative_gap, r.anisotropy,
                r.broken ? "yes" : "no", r.converged ? "yes" : "no", seconds_since(t0));
    std::fflush(stdout);
  }
  const SymmetryReport& main = reps[1];
  const bool single = main.converged && main.gap > 3.0 * main.grid_error_estimate && main.anisotropy > 0.1;
  bool sweep = true;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    sweep = sweep && reps[k].broken && reps[k].converged;
    if (k) sweep = sweep && reps[k].relative_gap > reps[k - 1].relative_gap;
  }
  const double dt = seconds_since(t0);
  report(7, single && sweep && dt < 900.0,
         "alpha 200: gap / grid_error = " + fmt("%.1f", main.gap / main.grid_error_estimate) +
             ", anisotropy = " + fmt("%.4f", main.anisotropy) + "; relative gap over alpha 100, 200, 300 " +
             (sweep ? "increasing" : "not increasing") + "; " + fmt("%.0f", dt) + " s");
}

void criterion8() {
  const auto t0 = Clock::now();
  double worst_iso = 0.0, worst_transport = 0.0;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<RadialProfile> set{phi1_profile()};
  while (set.size() < 12) set.push_back(poly_profile(1.0 + 0.5 * u(rng), u(rng), u(rng)));
  for (const RadialProfile& f : set) {
    const double nu = dirichlet_seminorm(f);
    for (double eps : {0.5, 0.1, 0.02}) {
      worst_iso = std::max(worst_iso, std::fabs(dirichlet_seminorm(u_to_v(f, eps)) - nu) / nu);
    }
    for (double alpha : {8.0, 50.0}) {
      const Params p = make_params(alpha, 1.0);
      const double a = weighted_level(f, p);
      const double b = transported_level(u_to_v(f, p.eps), p);
      worst_transport = std::max(worst_transport, std::fabs(a - b) / std::fabs(a));
    }
  }

  // Transplanted polynomial bump A (1 - 4 s^2)^3 around (-1/2, 0).
  const double eps = 0.1, gamma = 4.0;
  const double A = 1.0 / std::sqrt(1.2 * M_PI);
  const PolarFunction bump = [A](double rho, double phi) {
    const double x = rho * std::cos(phi) + 0.5, y = rho * std::sin(phi);
    const double q = 1.0 - 4.0 * (x * x + y * y);
    return q <= 0.0 ? 0.0 : A * q * q * q;
  };
  const DiskField v = transplant(bump, eps, DiskGrid(512, 8192));
  const double energy_err = std::fabs(disk_constraint(v, eps) - 1.0);
  const double flat = 0.25 * M_PI * integrate_adaptive([&](double w) {
    return std::expm1(gamma * A * A * std::pow(1.0 - w, 6));
  }, 0.0, 1.0);
  const double level_err = std::fabs(disk_functional(v, Params{2.0 / eps - 2.0, gamma, eps}) - eps * eps * flat) /
                           (eps * eps * flat);

  // Pointwise log bound on normalized fields.
  const RadialGrid grid(1024);
  bool log_bound = true;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const RadialField f = normalized(random_positive_field(grid, seed));
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
      log_bound = log_bound && f[i] <= (1.0 + 1e-8) * std::sqrt(-std::log(grid.node(i)) / (2.0 * M_PI));
  }
  // Exact cell moments sum to 1/(p+1).
  double moment_err = 0.0;
  for (double p : {-0.9, 0.0, 0.04, 1.0, 2.0}) {
    const auto m = RadialGrid(512).cell_moments(p);
    moment_err = std::max(moment_err, std::fabs(std::accumulate(m.begin(), m.end(), 0.0) * (p + 1.0) - 1.0));
  }
  const double dt = seconds_since(t0);
  const bool ok = worst_iso < 1e-4 && worst_transport < 1e-4 && energy_err < 1e-4 && level_err < 1e-4 && log_bound &&
                  moment_err < 1e-12 && dt < 60.0;
  report(8, ok, "isometry " + fmt("%.1e", worst_iso) + ", transport " + fmt("%.1e", worst_transport) +
                    ", transplant energy " + fmt("%.1e", energy_err) + ", transplant level " +
                    fmt("%.1e", level_err) + ", log bound " + (log_bound ? "holds" : "violated") + ", moments " +
                    fmt("%.1e", moment_err) + ", " + fmt("%.1f", dt) + " s");
}

double worst_relative(const std::function<std::pair<double, double>(std::mt19937_64&)>& check) {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const auto [exact, fd] = check(rng);
    worst = std::max(worst, std::fabs(exact - fd) / std::fabs(exact));
  }
  return worst;
}

void criterion9() {
  const RadialGrid rg(512);
  const Params rp = make_params(20.0, 4.0);
  const RadialField rv = normalized(random_positive_field(rg, 11));
  const RadialField rgrad = radial_gradient(rv, rp);
  const double radial_f = worst_relative([&](std::mt19937_64& rng) {
    const RadialField d(rg, ts::random_vector(rg.size(), rng));
    const double fd = ts::central_difference([&](double s) {
      RadialField w = rv;
      for (std::size_t i = 0; i < w.size(); ++i) w.mutable_values()[i] += s * d[i];
      return radial_functional(w, rp);
    }, 1e-5);
    return std::make_pair(radial_pairing(rgrad, d), fd);
  });
  const detail::RadialProblem prob(rg, rp);
  std::vector<double> x(rv.values().begin(), rv.values().end()), ax;
  prob.apply(x, ax);
  const double radial_c = worst_relative([&](std::mt19937_64& rng) {
    std::vector<double> d = ts::random_vector(rg.size(), rng);
    d.back() = 0.0;
    double exact = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) exact += 2.0 * ax[i] * d[i];
    const double fd = ts::central_difference([&](double s) {
      RadialField w = rv;
      for (std::size_t i = 0; i < w.size(); ++i) w.mutable_values()[i] += s * d[i];
      return radial_constraint(w);
    }, 1e-5);
    return std::make_pair(exact, fd);
  });

  const DiskGrid dg(48, 32);
  const Params dp = make_params(20.0, 8.0);
  std::mt19937_64 frng(1);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> vals(dg.size());
  for (std::size_t i = 0; i < dg.radial().size(); ++i)
    for (int j = 0; j < dg.angles(); ++j) {
      const double t = dg.radial().node(i);
      vals[i * dg.angles() + j] = (1.0 - t * t) * (0.5 + unif(frng));
    }
  DiskField dv(dg, vals);
  const double n = std::sqrt(disk_constraint(dv, dp.eps));
  for (double& v : dv.mutable_values()) v /= n;
  const std::size_t free = dg.size() - dg.angles();
  auto disk_check = [&](const std::vector<double>& grad, const std::function<double(const DiskField&)>& f) {
    return worst_relative([&](std::mt19937_64& rng) {
      const std::vector<double> d = ts::random_vector(dg.size(), rng);
      double exact = 0.0;
      for (std::size_t i = 0; i < free; ++i) exact += grad[i] * d[i];
      const double fd = ts::central_difference([&](double s) {
        DiskField w = dv;
        for (std::size_t i = 0; i < free; ++i) w.mutable_values()[i] += s * d[i];
        return f(w);
      }, 1e-5);
      return std::make_pair(exact, fd);
    });
  };
  const double disk_f =
      disk_check(disk_functional_gradient(dv, dp), [&](const DiskField& w) { return disk_functional(w, dp); });
  const double disk_c = disk_check(disk_constraint_gradient(dv, dp.eps),
                                   [&](const DiskField& w) { return disk_constraint(w, dp.eps); });
  const bool ok = radial_f < 1e-6 && radial_c < 1e-6 && disk_f < 1e-6 && disk_c < 1e-6;
  report(9, ok, "worst relative error over 20 directions: radial functional " + fmt("%.1e", radial_f) +
                    ", radial constraint " + fmt("%.1e", radial_c) + ", disk functional " + fmt("%.1e", disk_f) +
                    ", disk constraint " + fmt("%.1e", disk_c));
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  criterion1();
  criterion2();
  const RadialSweep sweep = radial_sweep();
  criterion3(sweep);
  criterion4(sweep);
  criterion5();
  criterion6(sweep);
  criterion8();
  criterion9();
  criterion7();
  std::printf("%d of 9 criteria failed; total %.0f s\n", failures, seconds_since(t0));
  return failures ? 1 : 0;
}
