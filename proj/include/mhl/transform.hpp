#pragma once

#include <functional>
#include <vector>

#include "mhl/fields.hpp"

namespace mhl {

/// Problem parameters: Henon exponent alpha, exponential coefficient gamma,
/// and the derived eps = 2/(alpha + 2).
struct Params {
  double alpha = 0.0;
  double gamma = 0.0;
  double eps = 1.0;

  friend bool operator==(const Params&, const Params&) = default;
};

constexpr double kFourPi = 12.566370614359172953850573533118;
/// gamma * u^2 above this value is treated as blow-up.
constexpr double kExponentLimit = 700.0;

double eps_of_alpha(double alpha);
/// alpha > 0, 0 < gamma <= 4 pi.
Params make_params(double alpha, double gamma);

/// A radial function given by closed form: value and derivative in r.
struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

/// phi1 = c J0(j01 r), the normalized first Dirichlet eigenfunction.
RadialProfile phi1_profile();
/// Sample a profile at the grid nodes (boundary value forced to 0).
RadialField sample(const RadialProfile& f, const RadialGrid& grid);

/// v(t) = u(t^eps) / sqrt(eps), and the inverse u(r) = sqrt(eps) v(r^{1/eps}).
RadialProfile u_to_v(const RadialProfile& u, double eps);
RadialProfile v_to_u(const RadialProfile& v, double eps);
/// Field versions: the source is interpolated (monotone cubic) and the result
/// sampled on `target` (defaults to the source grid).
RadialField u_to_v(const RadialField& u, double eps);
RadialField u_to_v(const RadialField& u, double eps, const RadialGrid& target);
RadialField v_to_u(const RadialField& v, double eps);
RadialField v_to_u(const RadialField& v, double eps, const RadialGrid& target);

/// 2 pi int_0^1 f'(t)^2 t dt, by edge differences (field) or quadrature (profile).
double dirichlet_seminorm(const RadialField& f);
double dirichlet_seminorm(const RadialProfile& f);

/// int_B (e^{gamma u^2} - 1) |x|^alpha dx for a radial u in physical variables.
double weighted_level(const RadialField& u, const Params& p);
double weighted_level(const RadialProfile& u, const Params& p);

/// eps * (unweighted level of v) = 2 pi eps int_0^1 (e^{eps gamma v^2} - 1) t dt.
double transported_level(const RadialField& v, const Params& p);
double transported_level(const RadialProfile& v, const Params& p);

/// int_B (e^{g f^2} - 1) dx for a radial f.
double unweighted_level(const RadialProfile& f, double g);

/// Throws BlowUpError if exponent > kExponentLimit.
void check_exponent(double exponent, const char* where);

/// Samples of the half-line function w(s) = sqrt(4 pi) v(e^{-s/2}).
struct HalfLineSamples {
  std::vector<double> s;  // increasing, s[0] = 0
  std::vector<double> w;
  double tail = 0.0;      // limit of w as s -> infinity
};

HalfLineSamples moser_transform(const RadialField& v);
/// int_0^inf w'(s)^2 ds, with w piecewise linear between samples.
double half_line_energy(const HalfLineSamples& w);

struct HalfLineProfile {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

HalfLineProfile moser_transform(const RadialProfile& v);
/// Inverse map: v(t) = w(-2 log t) / sqrt(4 pi).
RadialProfile inverse_moser_transform(const HalfLineProfile& w);
/// int_0^inf w'^2 ds.
double half_line_energy(const HalfLineProfile& w, double s_max = 400.0);
/// pi int_0^inf (e^{g w^2 / (4 pi)} - 1) e^{-s} ds, equal to the unweighted
/// level of the corresponding radial function.
double half_line_level(const HalfLineProfile& w, double g, double s_max = 400.0);

/// Function of physical polar coordinates (rho, phi) on the unit disk.
using PolarFunction = std::function<double(double rho, double phi)>;

/// Center and radius of the disk that transplantable functions live in.
constexpr double kTransplantCenterX = -0.5;
constexpr double kTransplantRadius = 0.5;

/// Map psi, supported in the disk of radius 1/2 around (-1/2, 0), to
/// u(rho, phi) = psi(rho^{1/eps}, phi/eps) for phi < 2 pi eps (0 otherwise),
/// returned in transformed variables on `grid`:
/// v(t, theta) = psi(t, theta/eps)/sqrt(eps).
/// Throws InvalidArgument if psi is not numerically zero (1e-12) at grid
/// points outside its support.
DiskField transplant(const PolarFunction& psi, double eps, const DiskGrid& grid);

/// True if (rho, phi) lies in the closed transplant disk.
bool in_transplant_support(double rho, double phi);

/// w on the half line: s/2 on [0, 2], sqrt(s - 1) on [2, 1 + e^2], e beyond.
HalfLineProfile carleson_chang_function();

/// Radial Moser function min(s, L)/sqrt(L) in the half-line variable.
HalfLineProfile moser_function(double L);

/// Bump supported in the transplant disk: psi(x) = f(2 |x - p|) where
/// f is the radial function of `w` (scaled so the Dirichlet integral is kept).
PolarFunction transplant_bump(const HalfLineProfile& w);

}  // namespace mhl
