#include "mhl/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "mhl/analysis.hpp"
#include "mhl/disk_solver.hpp"
#include "mhl/errors.hpp"
#include "mhl/radial_solver.hpp"
#include "mhl/specfun.hpp"
#include "mhl/transform.hpp"
#include "parallel.hpp"

namespace mhl {
namespace {

constexpr double kPerturbation = 0.01;
constexpr int kProfileSamples = 201;

struct PointResult {
  ResultRecord record;
  std::vector<PlotSeries> plots;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string point_tag(double alpha, double gamma) { return "a" + fmt("%g", alpha) + "_g" + fmt("%g", gamma); }

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  return o;
}

// u(r) = sqrt(eps) v(r^{1/eps}) on a uniform grid in the physical radius.
PlotSeries physical_profile(const RadialField& v, double eps, const std::string& name) {
  PlotSeries s{name, "r", "u", {}};
  const MonotoneCubic f = v.interpolant();
  const double scale = std::sqrt(eps);
  for (int k = 0; k < kProfileSamples; ++k) {
    const double r = static_cast<double>(k) / (kProfileSamples - 1);
    const double t = std::pow(r, 1.0 / eps);
    s.points.emplace_back(r, r >= 1.0 ? 0.0 : scale * f(t));
  }
  return s;
}

PlotSeries history(const std::vector<double>& levels, const std::string& name) {
  PlotSeries s{name, "iteration", "level", {}};
  for (std::size_t k = 0; k < levels.size(); ++k) s.points.emplace_back(static_cast<double>(k), levels[k]);
  return s;
}

// Values on the ring through the largest node value, against theta.
PlotSeries ring(const DiskField& v, const std::string& name) {
  PlotSeries s{name, "theta", "v", {}};
  const auto& vals = v.values();
  if (vals.empty()) return s;
  const auto it = std::max_element(vals.begin(), vals.end(), [](double a, double b) { return std::fabs(a) < std::fabs(b); });
  const std::size_t i = static_cast<std::size_t>(it - vals.begin()) / v.grid().angles();
  for (int j = 0; j < v.grid().angles(); ++j) s.points.emplace_back(v.grid().theta(j), v.at(i, j));
  return s;
}

RadialRecord radial_record(const RadialSolveResult& res) {
  RadialRecord r;
  r.S_rad = res.diag.level;
  r.multiplier = res.diag.multiplier;
  r.residual = res.diag.residual;
  r.ratio = level_ratio(res.diag.level, res.params);
  r.profile_distance = profile_distance(res);
  r.pohozaev_residual = pohozaev_residual(res.field, res.params);
  r.iterations = res.diag.iterations;
  r.converged = res.diag.converged;
  r.stop_reason = res.diag.stop_reason;
  return r;
}

PointResult eig_point() {
  PointResult out;
  const EigenPair& e = first_eigenpair();
  out.record.eig = EigRecord{e.j01, e.lambda1, e.phi1_at_0, e.norm_constant, phi1_quartic_integral(), gamma_star_bound()};
  PlotSeries s{"phi1", "r", "phi1", {}};
  for (int k = 0; k < kProfileSamples; ++k) {
    const double r = static_cast<double>(k) / (kProfileSamples - 1);
    s.points.emplace_back(r, e.profile(r));
  }
  out.plots.push_back(std::move(s));
  return out;
}

PointResult certify_point() {
  PointResult out;
  out.record.certificate = carleson_chang_certificate();
  const HalfLineProfile w = carleson_chang_function();
  PlotSeries s{"carleson_chang", "s", "w", {}};
  for (int k = 0; k <= 400; ++k) {
    const double x = 0.025 * k;
    s.points.emplace_back(x, w.value(x));
  }
  out.plots.push_back(std::move(s));
  return out;
}

RadialSolveResult radial_part(const RunConfig& c, const Params& p, bool with_second_variation, PointResult& out) {
  ResultRecord& rec = out.record;
  RadialSolveResult res = solve_radial(p, RadialGrid(c.nt), solve_options(c));
  rec.radial = radial_record(res);
  rec.iterations = res.diag.iterations;
  rec.converged = res.diag.converged;
  const std::string tag = point_tag(p.alpha, p.gamma);
  out.plots.push_back(physical_profile(res.field, p.eps, "radial_profile_" + tag));
  out.plots.push_back(history(res.diag.level_history, "radial_history_" + tag));
  if (with_second_variation) rec.second_variation = second_variation(res.field, p);
  return res;
}

PointResult radial_point(const RunConfig& c, const Params& p, bool with_second_variation) {
  PointResult out;
  radial_part(c, p, with_second_variation, out);
  return out;
}

PointResult disk_point(const RunConfig& c, const Params& p) {
  PointResult out;
  const RadialSolveResult rad = radial_part(c, p, false, out);
  ResultRecord& rec = out.record;
  const DiskSolveResult d = solve_disk(p, perturbed_lift(rad.field, c.ntheta, p.eps, kPerturbation), solve_options(c));
  rec.disk = DiskRecord{d.diag.level, d.anisotropy, d.diag.multiplier, d.diag.residual,
                        d.diag.iterations, d.diag.converged, d.diag.stop_reason};
  rec.iterations += d.diag.iterations;
  rec.converged = rec.converged && d.diag.converged;
  const std::string tag = point_tag(p.alpha, p.gamma);
  out.plots.push_back(ring(d.field, "disk_ring_" + tag));
  out.plots.push_back(history(d.diag.level_history, "disk_history_" + tag));
  return out;
}

PointResult report_point(const RunConfig& c, const Params& p, int inner_workers) {
  PointResult out = radial_point(c, p, true);
  ResultRecord& rec = out.record;
  SymmetryConfig sc;
  sc.nt = c.nt;
  sc.ntheta = c.ntheta;
  sc.solve = solve_options(c);
  sc.perturbation = kPerturbation;
  sc.multistart = c.multistart;
  sc.workers = inner_workers;
  const SymmetryReport rep = symmetry_report(p, sc);
  rec.symmetry = to_record(rep);
  rec.iterations += rep.iterations;
  rec.converged = rec.converged && rep.converged;
  out.plots.push_back(ring(rep.maximizer, "disk_ring_" + point_tag(p.alpha, p.gamma)));
  return out;
}

std::string point_summary(const ResultRecord& r) {
  std::string s = "alpha=" + fmt("%g", r.alpha) + " gamma=" + fmt("%g", r.gamma);
  if (!r.error.empty()) return s + " error: " + r.error + "\n";
  if (r.radial) {
    s += " S_rad=" + fmt("%.10g", r.radial->S_rad) + " ratio=" + fmt("%.8f", r.radial->ratio) +
         " distance=" + fmt("%.3e", r.radial->profile_distance);
  }
  if (r.second_variation) s += " d2f_normalized=" + fmt("%.6g", r.second_variation->normalized);
  if (r.disk) s += " S=" + fmt("%.10g", r.disk->S) + " anisotropy=" + fmt("%.4f", r.disk->anisotropy);
  if (r.symmetry) {
    s += " S=" + fmt("%.10g", r.symmetry->S) + " gap=" + fmt("%.4g", r.symmetry->gap) +
         " grid_error=" + fmt("%.3g", r.symmetry->grid_error_estimate) +
         " anisotropy=" + fmt("%.4f", r.symmetry->anisotropy) + " broken=" + (r.symmetry->broken ? "yes" : "no");
  }
  s += std::string(" converged=") + (r.converged ? "yes" : "no") + "\n";
  return s;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string dat_text(const PlotSeries& s) {
  std::string t = "# " + s.x_label + " " + s.y_label + "\n";
  char buf[96];
  for (const auto& [x, y] : s.points) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g\n", x, y);
    t += buf;
  }
  return t;
}

}  // namespace

RunOutcome execute(const RunConfig& config) {
  validate(config);
  RunOutcome out;
  out.document.config = config;
  out.document.config_hash = config_hash(config);

  struct Point {
    double alpha = 0.0;
    double gamma = 0.0;
  };
  std::vector<Point> points;
  const bool parametric = config.command != Command::Eig && config.command != Command::Certify;
  if (parametric) {
    for (double a : config.alpha)
      for (double g : config.gamma) points.push_back({a, g});
  } else {
    points.push_back({0.0, 0.0});
  }

  const int outer = std::min<int>(config.workers, static_cast<int>(points.size()));
  const int inner = std::max(1, config.workers / std::max(1, outer));
  std::vector<PointResult> results(points.size());
  detail::parallel_for(points.size(), outer, [&](std::size_t k) {
    const auto start = std::chrono::steady_clock::now();
    PointResult& pr = results[k];
    try {
      switch (config.command) {
        case Command::Eig: pr = eig_point(); break;
        case Command::Certify: pr = certify_point(); break;
        default: {
          const Params p = make_params(points[k].alpha, points[k].gamma);
          if (config.command == Command::SolveRadial) pr = radial_point(config, p, false);
          else if (config.command == Command::Sweep) pr = radial_point(config, p, true);
          else if (config.command == Command::SolveDisk) pr = disk_point(config, p);
          else pr = report_point(config, p, inner);
        }
      }
    } catch (const std::exception& e) {
      pr.record.error = e.what();
      pr.record.converged = false;
    }
    ResultRecord& rec = pr.record;
    rec.command = command_name(config.command);
    rec.config_hash = out.document.config_hash;
    if (parametric) {
      rec.alpha = points[k].alpha;
      rec.gamma = points[k].gamma;
      rec.eps = eps_of_alpha(points[k].alpha);
      rec.nt = config.nt;
      if (config.command == Command::SolveDisk || config.command == Command::Report) rec.ntheta = config.ntheta;
    }
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    rec.wall_ms = std::round(elapsed.count());
  });

  bool failed = false;
  bool unconverged = false;
  for (auto& pr : results) {
    failed = failed || !pr.record.error.empty();
    unconverged = unconverged || !pr.record.converged;
    out.document.records.push_back(pr.record);
    for (auto& s : pr.plots) out.plots.push_back(std::move(s));
  }
  out.exit_code = failed ? kExitError : unconverged ? kExitUnconverged : kExitOk;

  if (config.command == Command::Sweep) {
    // One series per gamma across the alpha values.
    std::map<double, std::vector<const ResultRecord*>> by_gamma;
    for (const auto& r : out.document.records)
      if (r.radial && r.error.empty()) by_gamma[r.gamma].push_back(&r);
    for (const auto& [g, rows] : by_gamma) {
      const std::string tag = "_g" + fmt("%g", g);
      PlotSeries ratio{"sweep_ratio" + tag, "alpha", "ratio", {}};
      PlotSeries dist{"sweep_distance" + tag, "alpha", "profile_distance", {}};
      PlotSeries d2f{"sweep_d2f" + tag, "alpha", "d2f_normalized", {}};
      for (const ResultRecord* r : rows) {
        ratio.points.emplace_back(r->alpha, r->radial->ratio);
        dist.points.emplace_back(r->alpha, r->radial->profile_distance);
        if (r->second_variation) d2f.points.emplace_back(r->alpha, r->second_variation->normalized);
      }
      out.plots.push_back(std::move(ratio));
      out.plots.push_back(std::move(dist));
      out.plots.push_back(std::move(d2f));
    }
  }

  if (config.command == Command::Eig && out.document.records.front().eig) {
    const EigRecord& e = *out.document.records.front().eig;
    out.summary = "lambda1 = " + fmt("%.16g", e.lambda1) + "\nphi1(0) = " + fmt("%.16g", e.phi1_at_0) +
                  "\nj01 = " + fmt("%.16g", e.j01) + "\ngamma_star_bound = " + fmt("%.16g", e.gamma_star_bound) + "\n";
  } else if (config.command == Command::Certify && out.document.records.front().certificate) {
    const Certificate& c = *out.document.records.front().certificate;
    out.summary = c.name + ": lhs = " + fmt("%.10g", c.lhs) + " rhs = " + fmt("%.10g", c.rhs) +
                  " margin = " + fmt("%.6g", c.margin) + " passes = " + (c.passes ? "true" : "false") + "\n";
  } else {
    for (const auto& r : out.document.records) out.summary += point_summary(r);
  }
  for (const auto& r : out.document.records)
    if (!parametric && !r.error.empty()) out.summary += "error: " + r.error + "\n";

  out.csv = to_csv(out.document.records);
  return out;
}

RunOutcome run(const RunConfig& config) {
  RunOutcome out = execute(config);
  namespace fs = std::filesystem;
  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir / "plotdata", ec);
  if (ec) throw IoError("cannot create '" + (dir / "plotdata").string() + "': " + ec.message());
  write_file(dir / "results.csv", out.csv);
  write_file(dir / "report.json", to_json_text(out.document));
  for (const auto& s : out.plots) write_file(dir / "plotdata" / (s.name + ".dat"), dat_text(s));
  return out;
}

}  // namespace mhl
