#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mhl/fields.hpp"
#include "mhl/radial_solver.hpp"
#include "mhl/transform.hpp"

namespace mhl {

/// eps sum_{i<N, j} W_i dtheta (e^{eps gamma v_ij^2} - 1).
double disk_functional(const DiskField& v, const Params& p);
/// Discrete int int (v_t^2 + eps^2/t^2 v_theta^2) t dt dtheta with edge
/// differences in t and in theta, angular factor at the ring nodes.
double disk_constraint(const DiskField& v, double eps);
inline double disk_constraint(const DiskField& v, const Params& p) { return disk_constraint(v, p.eps); }

/// Euclidean gradients with respect to the node values (boundary row zero).
std::vector<double> disk_functional_gradient(const DiskField& v, const Params& p);
std::vector<double> disk_constraint_gradient(const DiskField& v, double eps);

/// Solves A x = rhs for the constraint operator A (E(v) = v^T A v) on the
/// free rows; the boundary row of x is zero.
std::vector<double> disk_riesz_lift(const DiskGrid& grid, double eps, const std::vector<double>& rhs);

/// 1 - E(theta-mean of v)/E(v). Throws InvalidArgument for a zero field.
double anisotropy(const DiskField& v, double eps);

/// v rotated by `shift` grid angles (index j -> j + shift).
DiskField rotate(const DiskField& v, int shift);

struct DiskSolveResult {
  Params params;
  DiskField field;
  SolveDiagnostics diag;
  double anisotropy = 0.0;
};

/// Projected H1-gradient ascent on the disk constraint sphere. gamma < 4 pi.
DiskSolveResult solve_disk(const Params& p, const DiskField& init, const SolveOptions& opt = {});

/// Radial field lifted to every angle, times (1 + amplitude t^eps sin(theta)).
/// t^eps is the physical radius, so this is u + amplitude u r sin(theta).
DiskField perturbed_lift(const RadialField& radial, int angles, double eps, double amplitude);

struct StartOutcome {
  std::string name;
  double level = 0.0;
  double anisotropy = 0.0;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;

  friend bool operator==(const StartOutcome&, const StartOutcome&) = default;
};

struct ResolutionOutcome {
  int nt = 0;
  int ntheta = 0;
  double S = 0.0;
  double S_rad = 0.0;
  double anisotropy = 0.0;
  std::string best_start;
  bool converged = false;
  int iterations = 0;
  std::vector<StartOutcome> starts;

  friend bool operator==(const ResolutionOutcome&, const ResolutionOutcome&) = default;
};

struct SymmetryConfig {
  int nt = 512;
  int ntheta = 128;
  SolveOptions solve;
  double perturbation = 0.01;
  /// false: radial lift and perturbed lift only.
  bool multistart = true;
  /// Richardson order for the two-resolution error estimate.
  double order = 1.0;
  /// Threads for the independent solves.
  int workers = 1;
};

struct SymmetryReport {
  Params params;
  double S = 0.0;
  double S_rad = 0.0;
  double gap = 0.0;
  double relative_gap = 0.0;
  double anisotropy = 0.0;
  double grid_error_estimate = 0.0;
  bool broken = false;
  /// eps^2/4 times the best unweighted level over the transplant family.
  double transplant_lower_bound = 0.0;
  std::string transplant_family_best;
  /// S >= transplant_lower_bound - grid_error_estimate.
  bool lower_bound_holds = false;
  bool converged = false;
  int iterations = 0;
  /// Coarse (nt, ntheta) first, then (2 nt, 2 ntheta).
  std::vector<ResolutionOutcome> resolutions;
  DiskField maximizer;
};

/// Best unweighted level over the Carleson-Chang function and Moser
/// functions min(s, L)/sqrt(L), at coefficient g (the Dirichlet integral of
/// each is 1). Returns (level, name of the best).
std::pair<double, std::string> best_transplant_level(double g);

SymmetryReport symmetry_report(const Params& p, const SymmetryConfig& config);

}  // namespace mhl
