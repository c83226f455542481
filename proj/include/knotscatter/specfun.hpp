#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "knotscatter/error.hpp"

namespace knotscatter {

/// Coefficients indexed by (l, m).
using LMCoefficients = std::map<std::pair<int, int>, std::complex<double>>;

inline double legendre_p(int n, double x) {
  if (n < 0)
    throw InvalidArgument("legendre_p: negative degree");
  if (n == 0)
    return 1.0;
  double p0 = 1.0, p1 = x;
  for (int k = 1; k < n; ++k) {
    const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

/// Y_lm(theta, phi), orthonormal, Condon-Shortley phase.
inline std::complex<double> spherical_harmonic(int l, int m, double theta,
                                               double phi) {
  if (l < 0 || std::abs(m) > l)
    throw InvalidArgument("spherical_harmonic: need |m| <= l (l=" +
                          std::to_string(l) + ", m=" + std::to_string(m) + ")");
  const int am = std::abs(m);
  const double x = std::cos(theta), s = std::sin(theta);
  // normalized associated Legendre, P(am, am) first
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int k = 1; k <= am; ++k)
    pmm *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  double plm = pmm;
  if (l > am) {
    double prev = pmm;
    double cur = std::sqrt(2.0 * am + 3.0) * x * pmm;
    for (int ll = am + 2; ll <= l; ++ll) {
      const double a = std::sqrt((4.0 * ll * ll - 1.0) /
                                 (static_cast<double>(ll) * ll - am * am));
      const double b =
          std::sqrt(((ll - 1.0) * (ll - 1.0) - am * am) /
                    (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      const double next = a * (x * cur - b * prev);
      prev = cur;
      cur = next;
    }
    plm = cur;
  }
  std::complex<double> y = plm * std::polar(1.0, am * phi);
  if (m < 0) {
    y = std::conj(y);
    if (am % 2)
      y = -y;
  }
  return y;
}

namespace detail {

/// Power series for j_l; fine for small x, usable up to x ~ 10 with some
/// cancellation.
inline double spherical_bessel_series(int l, double x) {
  double pref = 1.0;
  for (int k = 1; k <= l; ++k)
    pref *= x / (2.0 * k + 1.0);
  const double y = -0.5 * x * x;
  double term = 1.0, sum = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= y / (k * (2.0 * l + 2.0 * k + 1.0));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum))
      break;
  }
  return pref * sum;
}

inline double spherical_bessel_upward(int l, double x) {
  double j0 = std::sin(x) / x;
  if (l == 0)
    return j0;
  double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
  for (int n = 1; n < l; ++n) {
    const double j2 = (2.0 * n + 1.0) / x * j1 - j0;
    j0 = j1;
    j1 = j2;
  }
  return j1;
}

/// Miller's downward recurrence normalized by whichever of j_0, j_1 is larger.
inline double spherical_bessel_miller(int l, double x) {
  const int start = l + 30 + static_cast<int>(x);
  double jp1 = 0.0, j = 1e-300, jl = 0.0;
  double j_at1 = 0.0;
  for (int n = start; n > 0; --n) {
    const double jm1 = (2.0 * n + 1.0) / x * j - jp1;
    jp1 = j;
    j = jm1;
    if (n - 1 == l)
      jl = j;
    if (n - 1 == 1)
      j_at1 = j;
    if (std::abs(j) > 1e250) {
      j *= 1e-250;
      jp1 *= 1e-250;
      jl *= 1e-250;
      j_at1 *= 1e-250;
    }
  }
  if (l == 0)
    jl = j;
  const double t0 = std::sin(x) / x;
  const double t1 = std::sin(x) / (x * x) - std::cos(x) / x;
  return std::abs(t0) >= std::abs(t1) ? jl * (t0 / j) : jl * (t1 / j_at1);
}

} // namespace detail

inline constexpr int kMaxBesselOrder = 10;

inline double spherical_bessel_j(int l, double x) {
  if (l < 0 || l > kMaxBesselOrder)
    throw InvalidArgument("spherical_bessel_j: order must be in [0, 10]");
  if (!(x >= 0.0) || !std::isfinite(x))
    throw InvalidArgument("spherical_bessel_j: argument must be finite and >= 0");
  if (x == 0.0)
    return l == 0 ? 1.0 : 0.0;
  if (x < 0.5)
    return detail::spherical_bessel_series(l, x);
  if (x >= l)
    return detail::spherical_bessel_upward(l, x);
  return detail::spherical_bessel_miller(l, x);
}

namespace detail {

inline bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

} // namespace detail

/// Gamma(a) / Gamma(b).
inline double gamma_ratio(double a, double b) {
  if (detail::is_nonpositive_integer(a) || detail::is_nonpositive_integer(b))
    throw DegenerateClosedForm("gamma_ratio: pole at non-positive integer");
  if (std::abs(a) < 170.0 && std::abs(b) < 170.0)
    return std::tgamma(a) / std::tgamma(b);
  int sa = 1, sb = 1;
  const double la = boost::math::lgamma(a, &sa);
  const double lb = boost::math::lgamma(b, &sb);
  return sa * sb * std::exp(la - lb);
}

inline constexpr double kHyp1F2RelTol = 1e-14;
inline constexpr int kHyp1F2MaxTerms = 10000;
inline constexpr double kHyp1F2MaxAbsZ = 1e4;

namespace detail {

template <class T> struct SeriesResult {
  T value;
  T max_term;
};

template <class T>
SeriesResult<T> hyp1f2_series(const T &a, const T &b1, const T &b2,
                              const T &z, double rel_tol, int max_terms) {
  using std::abs;
  T term = 1, sum = 1, max_term = 1;
  for (int n = 0; n < max_terms; ++n) {
    term *= (a + n) * z / ((b1 + n) * (b2 + n) * (n + 1));
    sum += term;
    const T at = abs(term);
    if (at > max_term)
      max_term = at;
    if (at == 0)
      return {sum, max_term};
    const T ratio = abs((a + n + 1) * z / ((b1 + n + 1) * (b2 + n + 1) * (n + 2)));
    if (at <= rel_tol * abs(sum) && ratio < 0.5)
      return {sum, max_term};
  }
  throw NonConvergence("hyp1f2: series did not converge in " +
                       std::to_string(max_terms) + " terms");
}

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float150 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<150>>;
using Float500 = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<500>>;

/// Decimal digits needed to absorb the cancellation of a 1F2 series at
/// argument z, whose largest term grows like exp(2 sqrt|z|).
inline double hyp1f2_digits_needed(double z) {
  return 2.0 * std::sqrt(std::abs(z)) / std::numbers::ln10 + 20.0;
}

template <class T>
double hyp1f2_as(double a, double b1, double b2, double z) {
  const T r =
      hyp1f2_series<T>(T(a), T(b1), T(b2), T(z), kHyp1F2RelTol, kHyp1F2MaxTerms)
          .value;
  return static_cast<double>(r);
}

} // namespace detail

/// 1F2(a; b1, b2; z) by direct power series. Sums in double and switches to
/// extended precision when cancellation would eat the target accuracy.
inline double hyp1f2(double a, double b1, double b2, double z) {
  if (detail::is_nonpositive_integer(b1) || detail::is_nonpositive_integer(b2))
    throw InvalidArgument("hyp1f2: lower parameter at a pole");
  if (!std::isfinite(a) || !std::isfinite(z))
    throw InvalidArgument("hyp1f2: non-finite argument");
  if (std::abs(z) > kHyp1F2MaxAbsZ)
    throw InvalidArgument("hyp1f2: |z| > 1e4 is outside the supported range");
  const auto r =
      detail::hyp1f2_series<double>(a, b1, b2, z, kHyp1F2RelTol, kHyp1F2MaxTerms);
  const double loss = r.max_term / std::max(std::abs(r.value), 1e-300);
  if (loss * std::numeric_limits<double>::epsilon() < 0.1 * kHyp1F2RelTol)
    return r.value;
  const double digits = detail::hyp1f2_digits_needed(z) + std::log10(loss + 1.0);
  if (digits < 45)
    return detail::hyp1f2_as<detail::Float50>(a, b1, b2, z);
  return detail::hyp1f2_as<detail::Float150>(a, b1, b2, z);
}

/// <l1 m1; l2 m2 | L M> for integer angular momenta, from the Racah sum in
/// exact rational arithmetic.
inline double clebsch_gordan(int l1, int l2, int m1, int m2, int L, int M) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  if (l1 < 0 || l2 < 0 || L < 0)
    return 0.0;
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(M) > L)
    return 0.0;
  if (m1 + m2 != M)
    return 0.0;
  if (L < std::abs(l1 - l2) || L > l1 + l2)
    return 0.0;

  const auto fact = [](int n) {
    cpp_int f = 1;
    for (int k = 2; k <= n; ++k)
      f *= k;
    return f;
  };

  const cpp_rational pref =
      cpp_rational(cpp_int(2 * L + 1) * fact(L + l1 - l2) * fact(L - l1 + l2) *
                       fact(l1 + l2 - L),
                   fact(l1 + l2 + L + 1)) *
      cpp_rational(fact(L + M) * fact(L - M) * fact(l1 - m1) * fact(l1 + m1) *
                   fact(l2 - m2) * fact(l2 + m2));

  cpp_rational sum = 0;
  const int kmin = std::max({0, l2 - L - m1, l1 - L + m2});
  const int kmax = std::min({l1 + l2 - L, l1 - m1, l2 + m2});
  for (int k = kmin; k <= kmax; ++k) {
    const cpp_int den = fact(k) * fact(l1 + l2 - L - k) * fact(l1 - m1 - k) *
                        fact(l2 + m2 - k) * fact(L - l2 + m1 + k) *
                        fact(L - l1 - m2 + k);
    const cpp_rational t(cpp_int(1), den);
    if (k % 2)
      sum -= t;
    else
      sum += t;
  }
  if (sum == 0)
    return 0.0;
  const double sq = static_cast<double>(pref * sum * sum);
  return sum > 0 ? std::sqrt(sq) : -std::sqrt(sq);
}

/// int conj(Y_LM) Y_l1m1 Y_l2m2 dOmega.
inline double gaunt(int l1, int m1, int l2, int m2, int L, int M) {
  if (m1 + m2 != M)
    return 0.0;
  const double cg0 = clebsch_gordan(l1, l2, 0, 0, L, 0);
  if (cg0 == 0.0)
    return 0.0;
  return std::sqrt((2.0 * l1 + 1.0) * (2.0 * l2 + 1.0) /
                   (4.0 * std::numbers::pi * (2.0 * L + 1.0))) *
         cg0 * clebsch_gordan(l1, l2, m1, m2, L, M);
}

} // namespace knotscatter
