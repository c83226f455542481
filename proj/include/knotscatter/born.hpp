#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "knotscatter/angular.hpp"
#include "knotscatter/curves.hpp"
#include "knotscatter/error.hpp"
#include "knotscatter/kinematics.hpp"
#include "knotscatter/multipole.hpp"
#include "knotscatter/potential.hpp"
#include "knotscatter/quadrature.hpp"
#include "knotscatter/radial.hpp"

namespace knotscatter {

/// g = mu0 M e / (2 M c), hbar = 1.
struct CouplingConfig {
  double g = 1.0;
};

struct BornAmplitude {
  std::complex<double> v1, v2, v3, v4, total;

  static BornAmplitude from_parts(std::complex<double> a, std::complex<double> b,
                                  std::complex<double> c, std::complex<double> d) {
    return {a, b, c, d, a + b + c + d};
  }
  std::array<std::complex<double>, 5> parts() const {
    return {v1, v2, v3, v4, total};
  }
};

inline MomentCache &default_moment_cache() {
  static MomentCache cache;
  return cache;
}

inline std::pair<std::complex<double>, std::complex<double>>
vni_quadrupole(const QuadrupoleMoments &q, const ScatteringKinematics &kin,
               const RadialCoefficients &rc, double g) {
  const Vec3 &K = kin.K_vec;
  std::complex<double> v1 = 0.0;
  for (const auto &jk : kSortedPairs) {
    double w = 0.0;
    for (int i = 0; i < 3; ++i)
      w += 3.0 * K[i] * q.Q[i][jk[0]][jk[1]];
    if (w != 0.0)
      v1 += w * angular_bracket(DirectionCosineMonomial::from_indices({jk[0], jk[1]}),
                                rc.A);
  }
  const double wt = dot(K, q.Q_trace);
  const std::complex<double> v2 =
      -g * wt * angular_bracket(DirectionCosineMonomial{}, rc.A);
  return {-g * v1, v2};
}

inline std::pair<std::complex<double>, std::complex<double>>
vni_octopole(const OctopoleMoments &o, const ScatteringKinematics &kin,
             const RadialCoefficients &rc, double g) {
  const Vec3 &K = kin.K_vec;
  std::complex<double> v3 = 0.0, v4 = 0.0;
  for (const auto &t : kSortedTriples) {
    double w = 0.0;
    for (int i = 0; i < 3; ++i)
      w += K[i] * o.O[i][t[0]][t[1]][t[2]];
    if (w != 0.0)
      v3 += w * angular_bracket(
                    DirectionCosineMonomial::from_indices({t[0], t[1], t[2]}), rc.B);
  }
  for (int p = 0; p < 3; ++p) {
    double w = 0.0;
    for (int i = 0; i < 3; ++i)
      w += K[i] * o.O_contracted[i][p];
    if (w != 0.0)
      v4 += w * angular_bracket(DirectionCosineMonomial::from_indices({p}), rc.B);
  }
  return {-7.5 * g * v3, 1.5 * g * v4};
}

inline BornAmplitude born_amplitude(const MomentSet &m,
                                    const ScatteringKinematics &kin,
                                    const CouplingConfig &cfg = {}) {
  const RadialCoefficients rc = radial_coefficients(kin);
  const auto [v1, v2] = vni_quadrupole(m.quadrupole, kin, rc, cfg.g);
  const auto [v3, v4] = vni_octopole(m.octopole, kin, rc, cfg.g);
  return BornAmplitude::from_parts(v1, v2, v3, v4);
}

inline BornAmplitude born_amplitude(const KnotSpec &spec,
                                    const ScatteringKinematics &kin,
                                    const CouplingConfig &cfg = {},
                                    int n_samples = kDefaultCurveSamples) {
  return born_amplitude(*default_moment_cache().get(spec, n_samples), kin, cfg);
}

enum class PotentialSource { Multipole, BiotSavart };

struct BruteForceGrid {
  double r_max = 200.0;
  double max_panel = 2.0;
  int radial_order = 8;
  int phi_points = 16;
  double mu_density = 0.75; // mu nodes per unit q r
  int mu_min = 40;
  PotentialSource source = PotentialSource::Multipole;
  MultipoleOrder order = MultipoleOrder::Octopole;
  int curve_samples = kDefaultCurveSamples;
  bool include_tail = true;
};

namespace detail {

/// int_{-1}^{1} mu^n exp(i x mu) dmu for n <= 3.
inline std::complex<double> mu_moment_fourier(int n, double x) {
  const std::complex<double> I{0.0, 1.0};
  const double j0 = spherical_bessel_j(0, x), j1 = spherical_bessel_j(1, x);
  switch (n) {
  case 0: return 2.0 * j0;
  case 1: return 2.0 * I * j1;
  case 2: return (2.0 / 3.0) * (j0 - 2.0 * spherical_bessel_j(2, x));
  default: return (2.0 * I / 5.0) * (3.0 * j1 - 2.0 * spherical_bessel_j(3, x));
  }
}

/// Orthonormal (e1, e2) completing qhat to a right-handed frame.
inline std::pair<Vec3, Vec3> transverse_frame(const Vec3 &qhat) {
  const Vec3 seed = std::abs(qhat.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
  Vec3 e1 = cross(seed, qhat);
  e1 = e1 / norm(e1);
  return {e1, cross(qhat, e1)};
}

/// Coefficients of the phi-averaged angular factor as a cubic in mu, for the
/// r^-3 and r^-4 parts of K.A.
inline std::pair<std::array<double, 4>, std::array<double, 4>>
angular_cubics(const MomentSet &m, const ScatteringKinematics &kin,
               MultipoleOrder order, int phi_points) {
  const auto [e1, e2] = transverse_frame(kin.q_hat);
  // sample four mu nodes, solve for the cubic
  const std::array<double, 4> mus{-0.9, -0.3, 0.4, 0.8};
  std::array<double, 4> f3{}, f4{};
  for (int a = 0; a < 4; ++a) {
    const double mu = mus[a], s = std::sqrt(1.0 - mu * mu);
    for (int p = 0; p < phi_points; ++p) {
      const double ph = 2.0 * std::numbers::pi * p / phi_points;
      const Vec3 R = s * std::cos(ph) * e1 + s * std::sin(ph) * e2 + mu * kin.q_hat;
      const FieldPoint fp = FieldPoint::cartesian(R);
      const double quad =
          dot(kin.K_vec, multipole_potential(m, fp, MultipoleOrder::Quadrupole));
      f3[a] += quad / phi_points;
      if (order == MultipoleOrder::Octopole)
        f4[a] += (dot(kin.K_vec, multipole_potential(m, fp)) - quad) / phi_points;
    }
  }
  // Vandermonde solve for c0 + c1 mu + c2 mu^2 + c3 mu^3.
  const auto fit = [&](const std::array<double, 4> &f) {
    std::array<std::array<double, 5>, 4> M{};
    for (int a = 0; a < 4; ++a) {
      double pw = 1.0;
      for (int c = 0; c < 4; ++c, pw *= mus[a])
        M[a][c] = pw;
      M[a][4] = f[a];
    }
    for (int c = 0; c < 4; ++c) {
      int piv = c;
      for (int a = c + 1; a < 4; ++a)
        if (std::abs(M[a][c]) > std::abs(M[piv][c]))
          piv = a;
      std::swap(M[c], M[piv]);
      for (int a = 0; a < 4; ++a)
        if (a != c) {
          const double r = M[a][c] / M[c][c];
          for (int b = c; b < 5; ++b)
            M[a][b] -= r * M[c][b];
        }
    }
    std::array<double, 4> out{};
    for (int c = 0; c < 4; ++c)
      out[c] = M[c][4] / M[c][c];
    return out;
  };
  return {fit(f3), fit(f4)};
}

} // namespace detail

/// V_ni by direct volume quadrature of
///   -(g / 4 pi) int_{r > lambda0} exp(i q.r) K.A(r) d^3 r
/// over lambda0 < r < r_max, plus the r > r_max tail.
inline std::complex<double> vni_bruteforce(const KnotSpec &spec,
                                           const ScatteringKinematics &kin,
                                           const CouplingConfig &cfg = {},
                                           const BruteForceGrid &grid = {}) {
  if (grid.r_max < 30.0 * kin.lambda0)
    throw InvalidArgument("vni_bruteforce: r_max must be >= 30 lambda0");
  if (cfg.g == 0.0)
    return 0.0;
  const auto moments = default_moment_cache().get(spec, grid.curve_samples);
  const double q = kin.q_mag;
  const auto [e1, e2] = detail::transverse_frame(kin.q_hat);
  const auto rad_rule = gauss_legendre(grid.radial_order);

  const auto potential = [&](const FieldPoint &fp) {
    if (grid.source == PotentialSource::BiotSavart)
      return biot_savart_dipole_line(spec, fp, grid.curve_samples);
    return multipole_potential(*moments, fp, grid.order);
  };

  std::vector<double> cph(grid.phi_points), sph(grid.phi_points);
  for (int p = 0; p < grid.phi_points; ++p) {
    cph[p] = std::cos(2.0 * std::numbers::pi * p / grid.phi_points);
    sph[p] = std::sin(2.0 * std::numbers::pi * p / grid.phi_points);
  }
  const double wphi = 2.0 * std::numbers::pi / grid.phi_points;

  const double panel = std::min(grid.max_panel, std::numbers::pi / (2.0 * q));
  const int n_panels =
      static_cast<int>(std::ceil((grid.r_max - kin.lambda0) / panel));
  const double h = (grid.r_max - kin.lambda0) / n_panels;

  std::complex<double> body = 0.0;
  for (int ip = 0; ip < n_panels; ++ip) {
    const double lo = kin.lambda0 + ip * h;
    for (int ir = 0; ir < grid.radial_order; ++ir) {
      const double r = lo + 0.5 * h * (1.0 + rad_rule->nodes[ir]);
      const double wr = 0.5 * h * rad_rule->weights[ir];
      const int n_mu =
          grid.mu_min + static_cast<int>(std::ceil(grid.mu_density * q * r));
      const auto mu_rule = gauss_legendre(n_mu);
      std::complex<double> shell = 0.0;
      for (int im = 0; im < n_mu; ++im) {
        const double mu = mu_rule->nodes[im], s = std::sqrt(1.0 - mu * mu);
        double ring = 0.0;
        for (int p = 0; p < grid.phi_points; ++p) {
          const Vec3 x = r * (s * cph[p] * e1 + s * sph[p] * e2 + mu * kin.q_hat);
          ring += dot(kin.K_vec, potential(FieldPoint::cartesian(x)));
        }
        shell += mu_rule->weights[im] * wphi * ring *
                 std::polar(1.0, q * r * mu);
      }
      body += wr * r * r * shell;
    }
  }

  std::complex<double> tail = 0.0;
  if (grid.include_tail) {
    const auto [c3, c4] =
        detail::angular_cubics(*moments, kin, grid.order, grid.phi_points);
    const auto integrand = [&](double r) {
      std::complex<double> a3 = 0.0, a4 = 0.0;
      for (int n = 0; n < 4; ++n) {
        const auto F = detail::mu_moment_fourier(n, q * r);
        a3 += c3[n] * F;
        a4 += c4[n] * F;
      }
      return 2.0 * std::numbers::pi * (a3 / r + a4 / (r * r));
    };
    std::complex<double> prev{NAN, NAN};
    for (int n = 64; n <= 4096; n *= 2) {
      tail = oscillatory_tail(integrand, grid.r_max, std::numbers::pi / q, n, 16, 20);
      if (std::abs(tail - prev) < 1e-10 * std::max(1.0, std::abs(body)))
        break;
      if (n == 4096)
        throw NonConvergence("vni_bruteforce: radial tail did not converge");
      prev = tail;
    }
  }
  return -cfg.g / (4.0 * std::numbers::pi) * (body + tail);
}

/// Amplitude assembled from the unknot triad: p/2 times the radius-3 circle's
/// quadrupole part, minus q/2 times the two offset circles' octopole parts.
inline BornAmplitude triad_amplitude(int p, int q, const ScatteringKinematics &kin,
                                     const CouplingConfig &cfg = {},
                                     int n_samples = kDefaultCurveSamples) {
  if (p <= 0 || q <= 0 || std::gcd(p, q) != 1)
    throw InvalidArgument("triad_amplitude: p and q must be positive and coprime");
  const auto a = born_amplitude(KnotSpec::unknot_xy(), kin, cfg, n_samples);
  const auto b = born_amplitude(KnotSpec::unknot_xz(), kin, cfg, n_samples);
  const auto c = born_amplitude(KnotSpec::unknot_yz(), kin, cfg, n_samples);
  return BornAmplitude::from_parts(0.5 * p * a.v1, 0.5 * p * a.v2,
                                   -0.5 * q * (b.v3 + c.v3),
                                   -0.5 * q * (b.v4 + c.v4));
}

inline constexpr double kResidualFloor = 1e-300;

/// max over samples of  max_c |born_c - triad_c| / max(max_c |born_c|, floor)
/// with c running over v1..v4 and the total.
inline double factorization_residual(int p, int q,
                                     const std::vector<ScatteringKinematics> &kins,
                                     const CouplingConfig &cfg = {},
                                     int n_samples = kDefaultCurveSamples) {
  if (kins.empty())
    throw InvalidArgument("factorization_residual: need at least one sample");
  const KnotSpec knot = KnotSpec::torus(p, q);
  double worst = 0.0;
  for (const auto &kin : kins) {
    const auto b = born_amplitude(knot, kin, cfg, n_samples).parts();
    const auto t = triad_amplitude(p, q, kin, cfg, n_samples).parts();
    double diff = 0.0, scale = kResidualFloor;
    for (std::size_t c = 0; c < b.size(); ++c) {
      diff = std::max(diff, std::abs(b[c] - t[c]));
      scale = std::max(scale, std::abs(b[c]));
    }
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

/// Uniform double in [0, 1) from the top 53 bits, identical on every platform.
inline double uniform01(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// n on-shell kinematics with |k| uniform in [kmin, kmax] and both directions
/// uniform on the sphere; near-forward draws are redrawn. mt19937_64 seeded
/// with `seed`.
inline std::vector<ScatteringKinematics>
random_kinematics(std::uint64_t seed, int n, double kmin, double kmax,
                  double lambda0 = kDefaultLambda0) {
  if (n < 0 || !(kmin > 0.0) || !(kmax >= kmin))
    throw InvalidArgument("random_kinematics: need n >= 0 and 0 < kmin <= kmax");
  std::mt19937_64 rng(seed);
  std::vector<ScatteringKinematics> out;
  out.reserve(n);
  const auto direction = [&] {
    const double mu = 2.0 * uniform01(rng) - 1.0;
    const double ph = 2.0 * std::numbers::pi * uniform01(rng);
    const double s = std::sqrt(1.0 - mu * mu);
    return Vec3{s * std::cos(ph), s * std::sin(ph), mu};
  };
  while (static_cast<int>(out.size()) < n) {
    const double k = kmin + (kmax - kmin) * uniform01(rng);
    const Vec3 a = direction(), b = direction();
    if (norm(a - b) < 1e-3)
      continue;
    out.push_back(ScatteringKinematics::make(k * a, k * b, lambda0));
  }
  return out;
}

} // namespace knotscatter
