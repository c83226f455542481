#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

#include "knotscatter/curves.hpp"
#include "knotscatter/error.hpp"
#include "knotscatter/multipole.hpp"
#include "knotscatter/vec3.hpp"

namespace knotscatter {

/// Field point with its spherical coordinates, Cartesian position and
/// direction cosines.
struct FieldPoint {
  double r = 1.0;
  double theta = 0.0;
  double phi = 0.0;
  Vec3 position;
  Vec3 R; // unit vector (alpha, beta, gamma)

  static FieldPoint spherical(double r, double theta, double phi) {
    if (!(r > 0.0) || !std::isfinite(r))
      throw InvalidArgument("field point: r must be positive");
    FieldPoint p;
    p.r = r;
    p.theta = theta;
    p.phi = phi;
    p.R = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
           std::cos(theta)};
    p.position = r * p.R;
    return p;
  }

  static FieldPoint cartesian(const Vec3 &x) {
    const double r = norm(x);
    if (!(r > 0.0) || !std::isfinite(r))
      throw InvalidArgument("field point: position must be finite and non-zero");
    FieldPoint p;
    p.r = r;
    p.position = x;
    p.R = x / r;
    p.theta = std::acos(std::clamp(p.R.z, -1.0, 1.0));
    p.phi = std::atan2(x.y, x.x);
    return p;
  }
};

inline constexpr double kMinCurveDistance = 1e-6;

/// A(x) = prefactor * oint (dr'/dtau) x (x - r') / |x - r'|^3 dtau.
inline Vec3 biot_savart_dipole_line(const KnotSpec &spec, const FieldPoint &point,
                                    int n_samples = kDefaultCurveSamples,
                                    double prefactor = 1.0) {
  const auto pts = sample_curve(spec, n_samples);
  Vec3 sum{};
  double dmin = std::numeric_limits<double>::infinity();
  for (const auto &pt : pts) {
    const Vec3 d = point.position - pt.position;
    const double dist = norm(d);
    dmin = std::min(dmin, dist);
    sum += cross(pt.derivative, d) / (dist * dist * dist);
  }
  if (dmin <= kMinCurveDistance)
    throw InvalidArgument("biot_savart_dipole_line: field point lies on the curve");
  return (prefactor * 2.0 * std::numbers::pi / n_samples) * sum;
}

enum class MultipoleOrder { Quadrupole, Octopole };

/// Truncated far-field potential:
///   A^i = [sum_{j<=k} 3 Q^i_jk R_j R_k + Q^i] / r^3
///       + [15/2 sum_{j<=k<=l} O^i_jkl R_j R_k R_l - 3/2 sum_p O^i_p R_p] / r^4
inline Vec3 multipole_potential(const MomentSet &m, const FieldPoint &point,
                                MultipoleOrder order = MultipoleOrder::Octopole,
                                double prefactor = 1.0) {
  const Vec3 &R = point.R;
  const double r = point.r;
  Vec3 A{};
  for (int i = 0; i < 3; ++i) {
    double quad = m.quadrupole.Q_trace[i];
    for (const auto &jk : kSortedPairs)
      quad += 3.0 * m.quadrupole.Q[i][jk[0]][jk[1]] * R[jk[0]] * R[jk[1]];
    double val = quad / (r * r * r);
    if (order == MultipoleOrder::Octopole) {
      double oct = 0.0;
      for (const auto &t : kSortedTriples)
        oct += 7.5 * m.octopole.O[i][t[0]][t[1]][t[2]] * R[t[0]] * R[t[1]] *
               R[t[2]];
      for (int p = 0; p < 3; ++p)
        oct -= 1.5 * m.octopole.O_contracted[i][p] * R[p];
      val += oct / (r * r * r * r);
    }
    A[i] = prefactor * val;
  }
  return A;
}

} // namespace knotscatter
