#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "knotscatter/error.hpp"
#include "knotscatter/kinematics.hpp"
#include "knotscatter/quadrature.hpp"
#include "knotscatter/specfun.hpp"

namespace knotscatter {

// Reduced radial integrals, x = k r, a = k lambda0:
//   rho_A(l) = int_a^inf j_l(x) / x   dx   (A(l,m) = i^l Y_lm(q) rho_A)
//   rho_B(l) = int_a^inf j_l(x) / x^2 dx   (B(l,m) = i^l k Y_lm(q) rho_B)

enum class RadialKind { A, B };
enum class RadialScheme { ZeroAligned, FixedPeriod };

inline constexpr double kRadialAbsTol = 1e-10;
inline constexpr double kMaxClosedFormArgument = 1e3;
inline constexpr int kRadialMaxPanels = 4000;

namespace detail {

/// Gamma(twice / 2) for a positive integer `twice`, exact up to rounding in T.
template <class T> T gamma_half(int twice) {
  if (twice <= 0)
    throw DegenerateClosedForm("gamma at a non-positive integer");
  if (twice % 2 == 0) {
    T f = 1;
    for (int k = 2; k < twice / 2; ++k)
      f *= k;
    return f;
  }
  // Gamma(m + 1/2) = (2m - 1)!! sqrt(pi) / 2^m
  const int m = (twice - 1) / 2;
  T g = boost::math::constants::root_pi<T>();
  for (int k = 1; k <= m; ++k)
    g *= T(2 * k - 1) / 2;
  return g;
}

template <class T> T radial_closed_as(RadialKind kind, int l, double a_in) {
  using std::pow;
  using std::sqrt;
  const T a = a_in;
  const T two = 2;
  const T z = -a * a / 4;
  const double tol = std::numeric_limits<T>::epsilon() > 1e-20 ? 1e-16 : 1e-40;
  T first, second;
  if (kind == RadialKind::A) {
    first = gamma_half<T>(l) / gamma_half<T>(l + 3) / (two * sqrt(two));
    const T F = hyp1f2_series<T>(T(l) / 2, T(l) + T(3) / 2, T(l + 2) / 2, z,
                                 tol, kHyp1F2MaxTerms)
                    .value;
    second = pow(a, l) /
             (pow(two, l) * sqrt(two) * l * gamma_half<T>(2 * l + 3)) * F;
  } else {
    first = gamma_half<T>(l - 1) / gamma_half<T>(l + 4) /
            (two * two * sqrt(two));
    const T F = hyp1f2_series<T>(T(l - 1) / 2, T(l) + T(3) / 2, T(l + 1) / 2, z,
                                 tol, kHyp1F2MaxTerms)
                    .value;
    second = pow(a, l - 1) /
             (pow(two, l) * sqrt(two) * (l - 1) * gamma_half<T>(2 * l + 3)) * F;
  }
  return sqrt(boost::math::constants::pi<T>() / 2) * (first - second);
}

inline double radial_closed(RadialKind kind, int l, double k, double lambda0) {
  if (!(k > 0.0) || !(lambda0 > 0.0) || !std::isfinite(k) ||
      !std::isfinite(lambda0))
    throw InvalidArgument("radial closed form: k and lambda0 must be positive");
  const double a = k * lambda0;
  if (a > kMaxClosedFormArgument)
    throw InvalidArgument("radial closed form: k*lambda0 > 1e3");
  // The hypergeometric series peaks near exp(a); pick a precision that
  // absorbs that plus the final subtraction.
  const double digits = a / std::numbers::ln10 + 2.0 * std::log10(1.0 + a) + 25.0;
  if (a < 1.5)
    return radial_closed_as<double>(kind, l, a);
  if (digits < 48)
    return static_cast<double>(radial_closed_as<Float50>(kind, l, a));
  if (digits < 145)
    return static_cast<double>(radial_closed_as<Float150>(kind, l, a));
  return static_cast<double>(radial_closed_as<Float500>(kind, l, a));
}

inline double radial_weight(RadialKind kind, int l, double x) {
  const double j = spherical_bessel_j(l, x);
  return kind == RadialKind::A ? j / x : j / (x * x);
}

/// First zero of j_l beyond x0 + skip. Consecutive zeros of j_l are more
/// than pi apart, so skip = 1 steps safely off a known zero.
inline double next_bessel_zero(int l, double x0, double skip = 0.0) {
  const double step = 0.4;
  double lo = x0 + skip, flo = spherical_bessel_j(l, lo);
  for (int i = 0; i < 100000; ++i) {
    const double hi = lo + step;
    const double fhi = spherical_bessel_j(l, hi);
    if (flo == 0.0 && i > 0)
      return lo;
    if ((flo < 0.0) != (fhi < 0.0) && fhi != 0.0) {
      double a = lo, b = hi, fa = flo;
      for (int it = 0; it < 200 && b - a > 4e-16 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = spherical_bessel_j(l, m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      return 0.5 * (a + b);
    }
    lo = hi;
    flo = fhi;
  }
  throw NonConvergence("bessel zero search ran out of budget");
}

inline double radial_zero_aligned(RadialKind kind, int l, double a) {
  using boost::math::quadrature::gauss_kronrod;
  const auto f = [&](double x) { return radial_weight(kind, l, x); };
  std::vector<double> partial;
  double sum = 0.0, lo = a, prev_est = NAN;
  int settled = 0;
  for (int panel = 0; panel < kRadialMaxPanels; ++panel) {
    const double hi = next_bessel_zero(l, lo, panel == 0 ? 0.0 : 1.0);
    sum += gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, 1e-14);
    partial.push_back(sum);
    lo = hi;
    if (partial.size() < 8)
      continue;
    const std::size_t keep = std::min<std::size_t>(partial.size(), 24);
    const std::vector<double> tail(partial.end() - keep, partial.end());
    const auto est = wynn_epsilon(tail);
    if (std::abs(est.value - prev_est) < 1e-3 * kRadialAbsTol &&
        est.error < kRadialAbsTol) {
      if (++settled >= 2)
        return est.value;
    } else {
      settled = 0;
    }
    prev_est = est.value;
  }
  throw NonConvergence("radial quadrature: tail did not converge within " +
                       std::to_string(kRadialMaxPanels) + " panels");
}

inline double radial_fixed_period(RadialKind kind, int l, double a) {
  const auto f = [&](double x) { return radial_weight(kind, l, x); };
  // head on [a, a + 2 pi] then half-period panels
  const double head_end = a + 2.0 * std::numbers::pi;
  double head = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double lo = a + i * (head_end - a) / 8, hi = lo + (head_end - a) / 8;
    head += gauss_legendre_integrate(f, lo, hi, 24);
  }
  double prev = NAN;
  for (int n_panels = 64; n_panels <= kRadialMaxPanels; n_panels *= 2) {
    const double tail =
        oscillatory_tail(f, head_end, std::numbers::pi, n_panels, 24, 24);
    if (std::abs(tail - prev) < 1e-3 * kRadialAbsTol)
      return head + tail;
    prev = tail;
  }
  throw NonConvergence("radial quadrature (fixed period): no convergence");
}

} // namespace detail

/// rho_A(l) from the Gamma / 1F2 closed form. l = 0 has a 1/l pole.
inline double radial_A_closed(int l, double k, double lambda0) {
  if (l == 0)
    throw DegenerateClosedForm("radial A closed form: l = 0 divides by zero");
  if (l < 0)
    throw InvalidArgument("radial A closed form: l must be >= 1");
  return detail::radial_closed(RadialKind::A, l, k, lambda0);
}

/// rho_B(l) from the Gamma / 1F2 closed form. l = 1 has a 1/(l-1) pole.
inline double radial_B_closed(int l, double k, double lambda0) {
  if (l == 1)
    throw DegenerateClosedForm("radial B closed form: l = 1 divides by zero");
  if (l < 2)
    throw InvalidArgument("radial B closed form: l must be >= 2");
  return detail::radial_closed(RadialKind::B, l, k, lambda0);
}

/// rho_A(l) or rho_B(l) by direct quadrature of the oscillatory integrand.
inline double radial_quadrature(RadialKind kind, int l, double k, double lambda0,
                                RadialScheme scheme = RadialScheme::ZeroAligned) {
  if (l < 0 || l > 3)
    throw InvalidArgument("radial quadrature: l must be in [0, 3]");
  if (!(k > 0.0) || !(lambda0 > 0.0) || !std::isfinite(k) ||
      !std::isfinite(lambda0))
    throw InvalidArgument("radial quadrature: k and lambda0 must be positive");
  const double a = k * lambda0;
  return scheme == RadialScheme::ZeroAligned
             ? detail::radial_zero_aligned(kind, l, a)
             : detail::radial_fixed_period(kind, l, a);
}

struct RadialCoefficients {
  double k = 0.0;
  double lambda0 = 0.0;
  Vec3 khat;
  double rho_A0 = 0.0, rho_A2 = 0.0, rho_B1 = 0.0, rho_B3 = 0.0;
  LMCoefficients A; // l in {0, 2}
  LMCoefficients B; // l in {1, 3}
};

inline std::complex<double> i_pow(int l) {
  switch (((l % 4) + 4) % 4) {
  case 0: return {1.0, 0.0};
  case 1: return {0.0, 1.0};
  case 2: return {-1.0, 0.0};
  default: return {0.0, -1.0};
  }
}

inline RadialCoefficients radial_coefficients(const ScatteringKinematics &kin) {
  if (!(kin.q_mag > 0.0))
    throw ForwardScattering();
  RadialCoefficients rc;
  rc.k = kin.q_mag;
  rc.lambda0 = kin.lambda0;
  rc.khat = kin.q_hat;
  rc.rho_A0 = radial_quadrature(RadialKind::A, 0, rc.k, rc.lambda0);
  rc.rho_B1 = radial_quadrature(RadialKind::B, 1, rc.k, rc.lambda0);
  try {
    rc.rho_A2 = radial_A_closed(2, rc.k, rc.lambda0);
  } catch (const Error &) {
    rc.rho_A2 = radial_quadrature(RadialKind::A, 2, rc.k, rc.lambda0);
  }
  try {
    rc.rho_B3 = radial_B_closed(3, rc.k, rc.lambda0);
  } catch (const Error &) {
    rc.rho_B3 = radial_quadrature(RadialKind::B, 3, rc.k, rc.lambda0);
  }

  const double theta = std::acos(std::clamp(rc.khat.z, -1.0, 1.0));
  const double phi = std::atan2(rc.khat.y, rc.khat.x);
  const auto fill = [&](LMCoefficients &out, int l, double scale) {
    for (int m = -l; m <= l; ++m)
      out[{l, m}] = i_pow(l) * scale * spherical_harmonic(l, m, theta, phi);
  };
  fill(rc.A, 0, rc.rho_A0);
  fill(rc.A, 2, rc.rho_A2);
  fill(rc.B, 1, rc.k * rc.rho_B1);
  fill(rc.B, 3, rc.k * rc.rho_B3);
  return rc;
}

} // namespace knotscatter
