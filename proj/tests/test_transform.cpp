#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mhl/disk_solver.hpp"
#include "mhl/errors.hpp"
#include "mhl/radial_solver.hpp"
#include "mhl/specfun.hpp"
#include "mhl/transform.hpp"
#include "support.hpp"

using namespace mhl;

namespace {

// (1 - r^2)(a + b r^2 + c r^4): closed-form radial test functions.
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

std::vector<RadialProfile> random_profiles(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<RadialProfile> out{phi1_profile()};
  while (static_cast<int>(out.size()) < n) out.push_back(poly_profile(1.0 + 0.5 * u(rng), u(rng), u(rng)));
  return out;
}

double bump_amplitude() { return 1.0 / std::sqrt(1.2 * M_PI); }

// psi = A (1 - 4 s^2)^3 with s the distance to (-1/2, 0); Dirichlet integral 1.2 pi A^2.
PolarFunction polynomial_bump(double A) {
  return [A](double rho, double phi) {
    const double x = rho * std::cos(phi) + 0.5;
    const double y = rho * std::sin(phi);
    const double q = 1.0 - 4.0 * (x * x + y * y);
    return q <= 0.0 ? 0.0 : A * q * q * q;
  };
}

}  // namespace

TEST(Params, EpsOfAlpha) {
  EXPECT_DOUBLE_EQ(eps_of_alpha(2.0), 0.5);
  EXPECT_DOUBLE_EQ(eps_of_alpha(98.0), 0.02);
  double prev = 1.0;
  for (double a : {1.0, 10.0, 100.0, 1e4}) {
    const double e = eps_of_alpha(a);
    EXPECT_LT(e, prev);
    EXPECT_NEAR(e * (a + 2.0), 2.0, 1e-15);
    prev = e;
  }
  EXPECT_THROW(eps_of_alpha(0.0), InvalidArgument);
  EXPECT_THROW(eps_of_alpha(-1.0), InvalidArgument);
}

TEST(Params, TrudingerMoserBound) {
  EXPECT_NO_THROW(make_params(10.0, kFourPi));
  try {
    make_params(10.0, 13.0);
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_NE(std::string(e.what()).find("Trudinger-Moser"), std::string::npos);
  }
  EXPECT_THROW(make_params(10.0, 0.0), InvalidArgument);
}

TEST(Rescaling, IdentityAtEpsOne) {
  const RadialField u = sample(phi1_profile(), RadialGrid(256));
  const RadialField v = u_to_v(u, 1.0);
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_NEAR(v[i], u[i], 1e-15);
}

TEST(Rescaling, NormIsometryOnPhi1Field) {
  const RadialField u = sample(phi1_profile(), RadialGrid(2048));
  const RadialField v = u_to_v(u, 0.5);
  EXPECT_LT(std::fabs(dirichlet_seminorm(u) - dirichlet_seminorm(v)), 1e-6);
}

TEST(Rescaling, RoundTripOnPhi1) {
  const RadialField u = sample(phi1_profile(), RadialGrid(2048));
  // Smaller eps leaves r < (h/2)^eps without nodes, hence the looser bound.
  for (auto [eps, tol] : {std::pair{0.8, 1e-6}, {0.5, 1e-6}, {0.2, 1e-5}}) {
    const RadialField back = v_to_u(u_to_v(u, eps), eps);
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) err = std::max(err, std::fabs(back[i] - u[i]));
    EXPECT_LT(err, tol) << eps;
  }
}

TEST(Rescaling, NormIsometryRandomSet) {
  for (const RadialProfile& u : random_profiles(12, 3)) {
    const double nu = dirichlet_seminorm(u);
    for (double eps : {0.5, 0.1, 0.02}) {
      const double nv = dirichlet_seminorm(u_to_v(u, eps));
      EXPECT_LT(std::fabs(nu - nv), 1e-6 * std::max(1.0, nu)) << eps;
    }
  }
}

TEST(Level, FunctionalTransportRandomSet) {
  for (const RadialProfile& u : random_profiles(12, 5)) {
    for (double alpha : {8.0, 50.0}) {
      const Params p = make_params(alpha, 1.0);
      const double lhs = weighted_level(u, p);
      const double rhs = transported_level(u_to_v(u, p.eps), p);
      EXPECT_LT(std::fabs(lhs - rhs), 1e-6 * std::max(std::fabs(lhs), 1e-300) + 1e-14) << alpha;
    }
  }
}

TEST(Level, Phi1AtAlpha8FieldAndProfile) {
  const Params p = make_params(8.0, 1.0);
  const double ref = weighted_level(phi1_profile(), p);
  const RadialField u = sample(phi1_profile(), RadialGrid(4096));
  const double v_side = transported_level(u_to_v(phi1_profile(), p.eps), p);
  EXPECT_LT(std::fabs(ref - v_side) / ref, 1e-6);
  EXPECT_LT(std::fabs(weighted_level(u, p) - ref) / ref, 1e-6);
}

TEST(Level, ZeroAndLinearization) {
  const Params p = make_params(4.0, 1.0);
  const RadialProfile zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
  EXPECT_EQ(weighted_level(zero, p), 0.0);
  const RadialProfile u = phi1_profile();
  const double l2 = 2.0 * M_PI * integrate_adaptive([&](double r) {
    const double x = u.value(r);
    return x * x * std::pow(r, p.alpha + 1.0);
  }, 0.0, 1.0);
  double prev = 1.0;
  for (double g : {1e-1, 1e-2, 1e-3}) {
    const double err = std::fabs(weighted_level(u, make_params(4.0, g)) / g - l2);
    EXPECT_LT(err, 2.0 * g * l2);
    EXPECT_LT(err, prev);
    prev = err;
  }
}

TEST(Level, BlowUpGuard) {
  const RadialField big(RadialGrid(64), std::vector<double>(65, 10.0));
  EXPECT_THROW(weighted_level(big, make_params(2.0, 12.0)), BlowUpError);
  EXPECT_THROW(check_exponent(701.0, "test"), BlowUpError);
  EXPECT_NO_THROW(check_exponent(699.0, "test"));
}

TEST(LogBound, NormalizedFieldsStayBelow) {
  const RadialGrid grid(1024);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    RadialField v = random_positive_field(grid, seed);
    const double n = std::sqrt(radial_constraint(v));
    for (double& x : v.mutable_values()) x /= n;
    ASSERT_NEAR(dirichlet_seminorm(v), 1.0, 1e-12);
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const double t = grid.node(i);
      ASSERT_LE(v[i], (1.0 + 1e-8) * std::sqrt(-std::log(t)) / std::sqrt(2.0 * M_PI)) << seed << " " << i;
    }
  }
}

TEST(MoserTransform, ZeroAndPhi1Energy) {
  const RadialProfile zero{[](double) { return 0.0; }, [](double) { return 0.0; }};
  const HalfLineProfile wz = moser_transform(zero);
  EXPECT_EQ(wz.value(3.0), 0.0);
  const HalfLineProfile w = moser_transform(phi1_profile());
  EXPECT_EQ(w.value(0.0), 0.0);
  EXPECT_NEAR(half_line_energy(w), dirichlet_seminorm(phi1_profile()), 1e-6);
  EXPECT_NEAR(half_line_energy(w), 1.0, 1e-6);

  const HalfLineSamples ws = moser_transform(sample(phi1_profile(), RadialGrid(2048)));
  EXPECT_EQ(ws.w.front(), 0.0);
  EXPECT_NEAR(half_line_energy(ws), 1.0, 1e-4);
}

TEST(MoserTransform, PlateauRoundTrip) {
  for (double L : {0.5, 2.0, 8.0}) {
    const RadialProfile v = inverse_moser_transform(moser_function(L));
    EXPECT_NEAR(dirichlet_seminorm(v), 1.0, 1e-8) << L;
    EXPECT_NEAR(half_line_energy(moser_function(L)), 1.0, 1e-12) << L;
    // Back and forth reproduces the plateau.
    const HalfLineProfile w = moser_transform(v);
    for (double s : {0.1, 0.5 * L, 2.0 * L}) EXPECT_NEAR(w.value(s), std::min(s, L) / std::sqrt(L), 1e-12);
  }
}

TEST(MoserTransform, LevelMatchesUnweightedLevel) {
  const HalfLineProfile w = carleson_chang_function();
  const double g = 4.0;
  EXPECT_NEAR(half_line_level(w, g), unweighted_level(inverse_moser_transform(w), g),
              1e-8 * half_line_level(w, g));
}

TEST(Transplant, ZeroBump) {
  const DiskGrid grid(32, 64);
  const DiskField v = transplant([](double, double) { return 0.0; }, 0.2, grid);
  for (double x : v.values()) EXPECT_EQ(x, 0.0);
}

TEST(Transplant, RejectsSupportViolation) {
  const DiskGrid grid(32, 64);
  EXPECT_THROW(transplant([](double, double) { return 1.0; }, 0.2, grid), InvalidArgument);
  EXPECT_TRUE(in_transplant_support(0.5, M_PI));
  EXPECT_FALSE(in_transplant_support(0.5, 0.0));
}

TEST(Transplant, EpsOneIsSampling) {
  const DiskGrid grid(64, 128);
  const PolarFunction psi = polynomial_bump(1.0);
  const DiskField v = transplant(psi, 1.0, grid);
  for (std::size_t i = 0; i < grid.radial().size(); ++i)
    for (int j = 0; j < grid.angles(); ++j) ASSERT_EQ(v.at(i, j), psi(grid.radial().node(i), grid.theta(j)));
}

TEST(Transplant, IdentitiesForPolynomialBump) {
  const double eps = 0.1;
  const double gamma = 4.0;
  const double A = bump_amplitude();
  const DiskGrid grid(512, 8192);
  const DiskField v = transplant(polynomial_bump(A), eps, grid);
  // (a) Dirichlet integral is kept: 1.2 pi A^2 = 1.
  const double energy = disk_constraint(v, eps);
  EXPECT_LT(std::fabs(energy - 1.0), 1e-4);
  // (b) level = eps^2 int (e^{gamma psi^2} - 1) dx, with
  // int = (pi/4) int_0^1 (e^{gamma A^2 (1-w)^6} - 1) dw.
  const double flat = 0.25 * M_PI * integrate_adaptive([&](double w) {
    return std::expm1(gamma * A * A * std::pow(1.0 - w, 6));
  }, 0.0, 1.0);
  const Params p{eps_of_alpha(2.0 / eps - 2.0), gamma, eps};
  const double level = disk_functional(v, p);
  EXPECT_LT(std::fabs(level - eps * eps * flat) / (eps * eps * flat), 1e-4);
  EXPECT_GT(anisotropy(v, eps), 0.5);
}

TEST(Transplant, CarlesonChangBumpKeepsEnergy) {
  const double eps = 0.1;
  const DiskGrid grid(512, 8192);
  const DiskField v = transplant(transplant_bump(carleson_chang_function()), eps, grid);
  EXPECT_LT(std::fabs(disk_constraint(v, eps) - 1.0), 5e-3);
  EXPECT_GT(anisotropy(v, eps), 0.5);
}
