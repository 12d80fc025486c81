#include "mhl/disk_solver.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <complex>
#include <mutex>
#include <numbers>

#include "ascent.hpp"
#include "mhl/errors.hpp"
#include "parallel.hpp"

namespace mhl {
namespace {

constexpr double kPi = std::numbers::pi;

// The FFTW planner is not thread-safe; execution on distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Discrete disk problem on the free rows i < N. A is the five-point
// operator of the constraint: E(v) = v^T A v.
class DiskProblem {
 public:
  DiskProblem(const DiskGrid& grid, const Params& p, bool with_lift = true)
      : grid_(grid), p_(p), n_(grid.radial().cells()), m_(grid.angles()), k_(m_ / 2 + 1) {
    const RadialGrid& rg = grid.radial();
    const double h = rg.spacing();
    const double dth = grid.dtheta();
    const auto faces = rg.face_weights();
    radial_.resize(n_);
    angular_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      radial_[i] = dth * faces[i] / (h * h);
      angular_[i] = p.eps * p.eps * h / (rg.node(i) * dth);
    }
    if (!with_lift) return;
    // Per-mode Thomas factorization, stored i-major so sweeps run over contiguous k.
    inv_pivot_.resize(static_cast<std::size_t>(n_) * k_);
    mult_.resize(static_cast<std::size_t>(n_) * k_);
    std::vector<double> sigma(k_);
    for (int k = 0; k < k_; ++k) sigma[k] = 2.0 - 2.0 * std::cos(2.0 * kPi * k / m_);
    for (int k = 0; k < k_; ++k) {
      double pivot = radial_[0] + angular_[0] * sigma[k];
      inv_pivot_[k] = 1.0 / pivot;
      mult_[k] = 0.0;
      for (int i = 1; i < n_; ++i) {
        const double off = -radial_[i - 1];
        const double diag = radial_[i] + radial_[i - 1] + angular_[i] * sigma[k];
        const double mlt = off * inv_pivot_[(i - 1) * k_ + k];
        mult_[i * k_ + k] = mlt;
        pivot = diag - mlt * off;
        inv_pivot_[i * k_ + k] = 1.0 / pivot;
      }
    }
    real_ = fftw_alloc_real(static_cast<std::size_t>(n_) * m_);
    spec_ = fftw_alloc_complex(static_cast<std::size_t>(n_) * k_);
    if (!real_ || !spec_) throw NumericError("DiskProblem: FFT buffer allocation failed");
    std::lock_guard lock(planner_mutex());
    int len = m_;
    forward_ = fftw_plan_many_dft_r2c(1, &len, n_, real_, nullptr, 1, m_, spec_, nullptr, 1, k_, FFTW_ESTIMATE);
    backward_ = fftw_plan_many_dft_c2r(1, &len, n_, spec_, nullptr, 1, k_, real_, nullptr, 1, m_, FFTW_ESTIMATE);
    if (!forward_ || !backward_) throw NumericError("DiskProblem: FFT plan creation failed");
  }

  DiskProblem(const DiskProblem&) = delete;
  DiskProblem& operator=(const DiskProblem&) = delete;

  ~DiskProblem() {
    {
      std::lock_guard lock(planner_mutex());
      if (forward_) fftw_destroy_plan(forward_);
      if (backward_) fftw_destroy_plan(backward_);
    }
    fftw_free(real_);
    fftw_free(spec_);
  }

  long double functional(const detail::Vec& v) const {
    const auto w = grid_.radial().cell_weights();
    const double a = p_.eps * p_.gamma;
    long double total = 0.0L;
    for (int i = 0; i < n_; ++i) {
      const double* row = v.data() + static_cast<std::size_t>(i) * m_;
      long double s = 0.0L;
      for (int j = 0; j < m_; ++j) {
        const double x = a * row[j] * row[j];
        check_exponent(x, "disk_functional");
        s += std::expm1(static_cast<long double>(x));
      }
      total += w[i] * s;
    }
    return p_.eps * grid_.dtheta() * total;
  }

  void gradient(const detail::Vec& v, detail::Vec& g) const {
    const auto w = grid_.radial().cell_weights();
    const double a = p_.eps * p_.gamma;
    const double scale = 2.0 * p_.eps * p_.eps * p_.gamma * grid_.dtheta();
    for (int i = 0; i < n_; ++i) {
      const std::size_t base = static_cast<std::size_t>(i) * m_;
      for (int j = 0; j < m_; ++j) {
        const double x = a * v[base + j] * v[base + j];
        check_exponent(x, "disk_gradient");
        g[base + j] = scale * w[i] * v[base + j] * std::exp(x);
      }
    }
    std::fill(g.begin() + static_cast<std::ptrdiff_t>(n_) * m_, g.end(), 0.0);
  }

  // out = A v
  void apply(const detail::Vec& v, detail::Vec& out) const {
    out.assign(v.size(), 0.0);
    for (int i = 0; i < n_; ++i) {
      const std::size_t r = static_cast<std::size_t>(i) * m_;
      for (int j = 0; j < m_; ++j) {
        const int jp = j + 1 == m_ ? 0 : j + 1;
        const int jm = j == 0 ? m_ - 1 : j - 1;
        double s = radial_[i] * (v[r + j] - v[r + m_ + j]) +
                   angular_[i] * (2.0 * v[r + j] - v[r + jp] - v[r + jm]);
        if (i > 0) s += radial_[i - 1] * (v[r + j] - v[r - m_ + j]);
        out[r + j] = s;
      }
    }
  }

  void lift(const detail::Vec& rhs, detail::Vec& out) const {
    const std::size_t free = static_cast<std::size_t>(n_) * m_;
    std::copy(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(free), real_);
    fftw_execute_dft_r2c(forward_, real_, spec_);
    auto* z = reinterpret_cast<std::complex<double>*>(spec_);
    for (int i = 1; i < n_; ++i) {
      std::complex<double>* cur = z + static_cast<std::size_t>(i) * k_;
      const std::complex<double>* prev = cur - k_;
      const double* mlt = mult_.data() + static_cast<std::size_t>(i) * k_;
      for (int k = 0; k < k_; ++k) cur[k] -= mlt[k] * prev[k];
    }
    {
      std::complex<double>* last = z + static_cast<std::size_t>(n_ - 1) * k_;
      const double* ip = inv_pivot_.data() + static_cast<std::size_t>(n_ - 1) * k_;
      for (int k = 0; k < k_; ++k) last[k] *= ip[k];
    }
    for (int i = n_ - 2; i >= 0; --i) {
      std::complex<double>* cur = z + static_cast<std::size_t>(i) * k_;
      const std::complex<double>* next = cur + k_;
      const double* ip = inv_pivot_.data() + static_cast<std::size_t>(i) * k_;
      const double c = radial_[i];
      for (int k = 0; k < k_; ++k) cur[k] = (cur[k] + c * next[k]) * ip[k];
    }
    fftw_execute_dft_c2r(backward_, spec_, real_);
    out.resize(rhs.size());
    const double scale = 1.0 / m_;
    for (std::size_t q = 0; q < free; ++q) out[q] = real_[q] * scale;
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(free), out.end(), 0.0);
  }

  double inner(const detail::Vec& a, const detail::Vec& b) const {
    double total = 0.0;
    for (int i = 0; i < n_; ++i) {
      const std::size_t r = static_cast<std::size_t>(i) * m_;
      double sr = 0.0;
      double sa = 0.0;
      for (int j = 0; j < m_; ++j) {
        const int jp = j + 1 == m_ ? 0 : j + 1;
        sr += (a[r + m_ + j] - a[r + j]) * (b[r + m_ + j] - b[r + j]);
        sa += (a[r + jp] - a[r + j]) * (b[r + jp] - b[r + j]);
      }
      total += radial_[i] * sr + angular_[i] * sa;
    }
    return total;
  }

 private:
  const DiskGrid& grid_;
  Params p_;
  int n_;
  int m_;
  int k_;
  std::vector<double> radial_;
  std::vector<double> angular_;
  std::vector<double> inv_pivot_;
  std::vector<double> mult_;
  double* real_ = nullptr;
  fftw_complex* spec_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

detail::Vec to_vec(const DiskField& v) { return {v.values().begin(), v.values().end()}; }

Params with_eps(double eps) {
  Params p;
  p.eps = eps;
  p.gamma = 1.0;
  p.alpha = 2.0 / eps - 2.0;
  return p;
}

}  // namespace

double disk_functional(const DiskField& v, const Params& p) {
  DiskProblem prob(v.grid(), p, false);
  return static_cast<double>(prob.functional(to_vec(v)));
}

double disk_constraint(const DiskField& v, double eps) {
  DiskProblem prob(v.grid(), with_eps(eps), false);
  const detail::Vec x = to_vec(v);
  return prob.inner(x, x);
}

std::vector<double> disk_functional_gradient(const DiskField& v, const Params& p) {
  DiskProblem prob(v.grid(), p, false);
  detail::Vec g(v.values().size());
  prob.gradient(to_vec(v), g);
  return g;
}

std::vector<double> disk_constraint_gradient(const DiskField& v, double eps) {
  DiskProblem prob(v.grid(), with_eps(eps), false);
  detail::Vec out;
  prob.apply(to_vec(v), out);
  for (double& x : out) x *= 2.0;
  return out;
}

std::vector<double> disk_riesz_lift(const DiskGrid& grid, double eps, const std::vector<double>& rhs) {
  if (rhs.size() != grid.size()) throw InvalidArgument("disk_riesz_lift: size does not match grid");
  DiskProblem prob(grid, with_eps(eps));
  detail::Vec out;
  prob.lift(rhs, out);
  return out;
}

double anisotropy(const DiskField& v, double eps) {
  const double total = disk_constraint(v, eps);
  if (!(total > 0.0)) throw InvalidArgument("anisotropy: zero field");
  const double radial = dirichlet_seminorm(v.theta_mean());
  return std::clamp(1.0 - radial / total, 0.0, 1.0);
}

DiskField rotate(const DiskField& v, int shift) {
  const int m = v.grid().angles();
  const std::size_t rows = v.grid().radial().size();
  std::vector<double> out(v.values().size());
  for (std::size_t i = 0; i < rows; ++i)
    for (int j = 0; j < m; ++j) out[i * m + (((j + shift) % m) + m) % m] = v.values()[i * m + j];
  return DiskField(v.grid(), std::move(out));
}

DiskSolveResult solve_disk(const Params& p, const DiskField& init, const SolveOptions& opt) {
  if (!(p.gamma < 4.0 * kPi)) throw InvalidArgument("solve_disk: gamma must be below 4 pi");
  DiskProblem prob(init.grid(), p);
  detail::AscentOutcome out = detail::run_ascent(prob, to_vec(init), opt);
  for (double& x : out.x) x = std::fabs(x);
  DiskSolveResult r;
  r.params = p;
  r.field = DiskField(init.grid(), std::move(out.x));
  r.diag.level = out.level;
  r.diag.multiplier = 2.0 * p.gamma / out.mu;
  r.diag.residual = out.residual;
  r.diag.iterations = out.iterations;
  r.diag.converged = out.converged;
  r.diag.stop_reason = out.stop_reason;
  r.diag.level_history = std::move(out.history);
  r.anisotropy = anisotropy(r.field, p.eps);
  return r;
}

DiskField perturbed_lift(const RadialField& radial, int angles, double eps, double amplitude) {
  DiskField lifted = DiskField::from_radial(radial, angles);
  auto& values = lifted.mutable_values();
  const DiskGrid& grid = lifted.grid();
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double r = std::pow(grid.radial().node(i), eps);
    for (int j = 0; j < angles; ++j) values[i * angles + j] *= 1.0 + amplitude * r * std::sin(grid.theta(j));
  }
  return lifted;
}

std::pair<double, std::string> best_transplant_level(double g) {
  std::pair<double, std::string> best{half_line_level(carleson_chang_function(), g), "carleson_chang"};
  for (double L : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    double level = 0.0;
    try {
      level = half_line_level(moser_function(L), g);
    } catch (const BlowUpError&) {
      continue;
    }
    char name[32];
    std::snprintf(name, sizeof name, "moser_L%g", L);
    if (level > best.first) best = {level, name};
  }
  return best;
}

SymmetryReport symmetry_report(const Params& p, const SymmetryConfig& config) {
  SymmetryReport rep;
  rep.params = p;
  const int levels = 2;
  std::vector<RadialSolveResult> radial(levels);
  detail::parallel_for(levels, config.workers, [&](std::size_t r) {
    const int scale = 1 << r;
    radial[r] = solve_radial(p, RadialGrid(config.nt * scale), config.solve);
  });

  const std::vector<std::string> names = config.multistart
                                             ? std::vector<std::string>{"radial_lift", "perturbed", "transplant"}
                                             : std::vector<std::string>{"radial_lift", "perturbed"};
  const std::size_t starts = names.size();
  std::vector<DiskSolveResult> disk(levels * starts);
  detail::parallel_for(disk.size(), config.workers, [&](std::size_t q) {
    const std::size_t r = q / starts;
    const std::size_t s = q % starts;
    const int ntheta = config.ntheta << r;
    const RadialField& rad = radial[r].field;
    DiskField init;
    if (names[s] == "radial_lift") {
      init = DiskField::from_radial(rad, ntheta);
    } else if (names[s] == "perturbed") {
      init = perturbed_lift(rad, ntheta, p.eps, config.perturbation);
    } else {
      init = transplant(transplant_bump(carleson_chang_function()), p.eps,
                        DiskGrid(rad.grid().cells(), ntheta));
    }
    disk[q] = solve_disk(p, init, config.solve);
  });

  rep.converged = true;
  for (int r = 0; r < levels; ++r) {
    ResolutionOutcome res;
    res.nt = config.nt << r;
    res.ntheta = config.ntheta << r;
    res.S_rad = radial[r].diag.level;
    res.converged = radial[r].diag.converged;
    res.iterations = radial[r].diag.iterations;
    std::size_t best = r * starts;
    for (std::size_t s = 0; s < starts; ++s) {
      const DiskSolveResult& d = disk[r * starts + s];
      res.starts.push_back({names[s], d.diag.level, d.anisotropy, d.diag.residual, d.diag.iterations,
                            d.diag.converged});
      res.converged = res.converged && d.diag.converged;
      res.iterations += d.diag.iterations;
      if (d.diag.level > disk[best].diag.level) best = r * starts + s;
    }
    res.S = disk[best].diag.level;
    res.anisotropy = disk[best].anisotropy;
    res.best_start = names[best % starts];
    rep.converged = rep.converged && res.converged;
    rep.iterations += res.iterations;
    rep.resolutions.push_back(std::move(res));
    if (r == levels - 1) rep.maximizer = std::move(disk[best].field);
  }

  const ResolutionOutcome& coarse = rep.resolutions.front();
  const ResolutionOutcome& fine = rep.resolutions.back();
  rep.S = fine.S;
  rep.S_rad = fine.S_rad;
  rep.gap = rep.S - rep.S_rad;
  rep.relative_gap = rep.gap / rep.S_rad;
  rep.anisotropy = fine.anisotropy;
  rep.grid_error_estimate =
      (std::fabs(fine.S - coarse.S) + std::fabs(fine.S_rad - coarse.S_rad)) / (std::pow(2.0, config.order) - 1.0);
  rep.broken = rep.gap > 3.0 * rep.grid_error_estimate;
  const auto [level, name] = best_transplant_level(p.gamma);
  rep.transplant_lower_bound = 0.25 * p.eps * p.eps * level;
  rep.transplant_family_best = name;
  rep.lower_bound_holds = rep.S >= rep.transplant_lower_bound - rep.grid_error_estimate;
  return rep;
}

}  // namespace mhl
