#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "knotscatter/angular.hpp"
#include "knotscatter/born.hpp"
#include "knotscatter/curves.hpp"
#include "knotscatter/multipole.hpp"
#include "knotscatter/potential.hpp"
#include "knotscatter/radial.hpp"
#include "knotscatter/reference_tables.hpp"
#include "knotscatter/specfun.hpp"

// Numerical diagnostics shared by the CLI selfcheck, the tests and the
// acceptance runner.

namespace knotscatter::diagnostics {

inline const std::vector<double> &default_radial_arguments() {
  static const std::vector<double> a{0.3, 0.5, 1.0, 2.0, 5.0, 10.0};
  return a;
}

/// max relative |closed - quadrature| for rho_A(2) and rho_B(3) at k = 1,
/// lambda0 = a.
inline double radial_closed_form_residual(const std::vector<double> &args) {
  double worst = 0.0;
  for (double a : args) {
    const double qa = radial_quadrature(RadialKind::A, 2, 1.0, a);
    const double qb = radial_quadrature(RadialKind::B, 3, 1.0, a);
    worst = std::max(worst, std::abs(radial_A_closed(2, 1.0, a) - qa) / std::abs(qa));
    worst = std::max(worst, std::abs(radial_B_closed(3, 1.0, a) - qb) / std::abs(qb));
  }
  return worst;
}

/// max relative disagreement of the two quadrature schemes on rho_A(0) and
/// rho_B(1), where no closed form exists.
inline double radial_scheme_residual(const std::vector<double> &args) {
  double worst = 0.0;
  for (double a : args)
    for (auto [kind, l] : {std::pair{RadialKind::A, 0}, std::pair{RadialKind::B, 1}}) {
      const double z = radial_quadrature(kind, l, 1.0, a, RadialScheme::ZeroAligned);
      const double f = radial_quadrature(kind, l, 1.0, a, RadialScheme::FixedPeriod);
      worst = std::max(worst, std::abs(z - f) / std::max(std::abs(z), 1e-300));
    }
  return worst;
}

inline LMCoefficients random_coefficients(std::mt19937_64 &rng, int l_max = 3) {
  LMCoefficients c;
  for (int l = 0; l <= l_max; ++l)
    for (int m = -l; m <= l; ++m)
      c[{l, m}] = {2.0 * uniform01(rng) - 1.0, 2.0 * uniform01(rng) - 1.0};
  return c;
}

/// max over every monomial of |angular_bracket - sphere quadrature| with
/// random complex coefficients.
inline double bracket_oracle_residual(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (const auto &mono : all_monomials()) {
    const auto c = random_coefficients(rng);
    worst = std::max(worst, std::abs(angular_bracket(mono, c) -
                                     sphere_quadrature_bracket(mono, c)));
  }
  return worst;
}

/// max pointwise |lhs - rhs| of the ten Y1 Y1 Y1 reduction identities.
inline double triple_identity_residual(std::uint64_t seed, int n_angles) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int n = 0; n < n_angles; ++n) {
    const double th = std::acos(2.0 * uniform01(rng) - 1.0);
    const double ph = 2.0 * std::numbers::pi * uniform01(rng);
    for (const auto &id : tables::triple_identities()) {
      std::complex<double> lhs = 1.0, rhs = 0.0;
      for (int m : id.ms)
        lhs *= spherical_harmonic(1, m, th, ph);
      for (const auto &t : id.terms)
        rhs += t.coeff * spherical_harmonic(t.l, t.m, th, ph);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

inline Vec3 random_direction(std::mt19937_64 &rng) {
  const double mu = 2.0 * uniform01(rng) - 1.0;
  const double ph = 2.0 * std::numbers::pi * uniform01(rng);
  const double s = std::sqrt(1.0 - mu * mu);
  return {s * std::cos(ph), s * std::sin(ph), mu};
}

/// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double> &x, const std::vector<double> &y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct SlopeRange {
  double min = std::numeric_limits<double>::infinity();
  double max = -std::numeric_limits<double>::infinity();
  std::vector<double> slopes;
};

/// Per-direction log-log slope of |A_multipole - A_biotsavart| on
/// geometrically spaced r in [r_lo, r_hi].
inline SlopeRange far_field_slopes(const KnotSpec &spec, std::uint64_t seed,
                                   int n_dirs, double r_lo = 30.0,
                                   double r_hi = 300.0, int n_r = 12,
                                   int n_samples = kDefaultCurveSamples) {
  const auto m = default_moment_cache().get(spec, n_samples);
  std::mt19937_64 rng(seed);
  SlopeRange out;
  for (int d = 0; d < n_dirs; ++d) {
    const Vec3 dir = random_direction(rng);
    std::vector<double> rs, errs;
    for (int i = 0; i < n_r; ++i) {
      const double r = r_lo * std::pow(r_hi / r_lo, double(i) / (n_r - 1));
      const auto fp = FieldPoint::cartesian(r * dir);
      rs.push_back(r);
      errs.push_back(norm(multipole_potential(*m, fp) -
                          biot_savart_dipole_line(spec, fp, n_samples)));
    }
    const double s = loglog_slope(rs, errs);
    out.slopes.push_back(s);
    out.min = std::min(out.min, s);
    out.max = std::max(out.max, s);
  }
  return out;
}

/// Central-difference divergence of the multipole potential.
inline double multipole_divergence(const MomentSet &m, const Vec3 &x, double h) {
  double div = 0.0;
  for (int c = 0; c < 3; ++c) {
    Vec3 e{};
    e[c] = h;
    div += (multipole_potential(m, FieldPoint::cartesian(x + e))[c] -
            multipole_potential(m, FieldPoint::cartesian(x - e))[c]) /
           (2.0 * h);
  }
  return div;
}

/// max of |div A| / (|A| / r) at random points with r in [r_lo, r_hi],
/// step 1e-4 r.
inline double divergence_ratio(const MomentSet &m, std::uint64_t seed, int n_points,
                               double r_lo = 10.0, double r_hi = 100.0) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int n = 0; n < n_points; ++n) {
    const double r = r_lo + (r_hi - r_lo) * uniform01(rng);
    const Vec3 x = r * random_direction(rng);
    const double a = norm(multipole_potential(m, FieldPoint::cartesian(x)));
    worst = std::max(worst, std::abs(multipole_divergence(m, x, 1e-4 * r)) / (a / r));
  }
  return worst;
}

inline std::vector<KnotSpec> preset_knots() {
  return {KnotSpec::torus(2, 3), KnotSpec::torus(3, 2), KnotSpec::torus(2, 5),
          KnotSpec::torus(3, 4), KnotSpec::unknot_xy(), KnotSpec::unknot_xz(),
          KnotSpec::unknot_yz()};
}

inline double max_dipole_norm(int n_samples = kDefaultCurveSamples) {
  double worst = 0.0;
  for (const auto &k : preset_knots())
    worst = std::max(worst, norm(dipole_moment(k, n_samples)));
  return worst;
}

struct Check {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SelfcheckReport {
  std::vector<Check> checks;
  std::vector<Discrepancy> discrepancies;
  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
  }
};

inline SelfcheckReport run_selfcheck(double lambda0, std::uint64_t seed,
                                     int n_samples = kDefaultCurveSamples) {
  SelfcheckReport rep;
  const auto below = [&](std::string name, double v, double tol, std::string detail) {
    rep.checks.push_back({std::move(name), v <= tol, v, tol, std::move(detail)});
  };
  const auto &args = default_radial_arguments();
  below("radial_closed_form_vs_quadrature", radial_closed_form_residual(args), 1e-7,
        "max relative difference, rho_A(2) and rho_B(3), k lambda0 in {0.3..10}");
  below("radial_quadrature_schemes", radial_scheme_residual(args), 1e-8,
        "zero-aligned vs fixed-period panels, rho_A(0) and rho_B(1)");
  below("angular_bracket_vs_sphere_quadrature", bracket_oracle_residual(seed), 1e-11,
        "all monomials of degree <= 3, random complex coefficients");
  below("triple_product_identities", triple_identity_residual(seed, 100), 1e-12,
        "ten Y1 Y1 Y1 reductions at 100 random angles");

  const KnotSpec t23 = KnotSpec::torus(2, 3);
  const auto slopes = far_field_slopes(t23, seed, 20, 30.0, 300.0, 12, n_samples);
  const double dev = std::max(std::abs(slopes.min + 5.0), std::abs(slopes.max + 5.0));
  rep.checks.push_back({"potential_far_field_slope", dev <= 0.3, dev, 0.3,
                        "max |slope + 5| of |A_multipole - A_biotsavart|, torus 2,3, "
                        "20 directions, r in [30, 300]"});
  below("potential_coulomb_gauge",
        divergence_ratio(*default_moment_cache().get(t23, n_samples), seed, 20), 1e-6,
        "max |div A| r / |A|, r in [10, 100]");
  below("dipole_closure", max_dipole_norm(n_samples), 1e-12,
        "max |oint dr| over the presets");
  const auto kins = random_kinematics(seed, 20, 0.2, 2.0, lambda0);
  below("factorization_2_3", factorization_residual(2, 3, kins, {}, n_samples), 1e-9,
        "torus 2,3 vs unknot triad, 20 random kinematics");
  rep.discrepancies = discrepancy_report();
  return rep;
}

} // namespace knotscatter::diagnostics
