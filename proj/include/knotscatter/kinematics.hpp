#pragma once

#include <cmath>
#include <string>

#include "knotscatter/error.hpp"
#include "knotscatter/vec3.hpp"

namespace knotscatter {

inline constexpr double kOnShellTolerance = 1e-12;
inline constexpr double kForwardTolerance = 1e-12;
inline constexpr double kDefaultLambda0 = 3.5;

inline Vec3 unit_from_angles(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
          std::cos(theta)};
}

/// Incoming and outgoing wave vectors plus the cutoff radius.
/// q = k_i - k_n is the momentum transfer, K = k_i + k_n the momentum sum.
struct ScatteringKinematics {
  Vec3 k_i;
  Vec3 k_n;
  double lambda0 = kDefaultLambda0;
  Vec3 q_vec;
  double q_mag = 0.0;
  Vec3 q_hat;
  Vec3 K_vec;

  static ScatteringKinematics make(const Vec3 &k_i, const Vec3 &k_n,
                                   double lambda0 = kDefaultLambda0) {
    const double ki = norm(k_i), kn = norm(k_n);
    if (!std::isfinite(ki) || !std::isfinite(kn) || ki <= 0.0)
      throw InvalidArgument("kinematics: wave vectors must be finite and non-zero");
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
      throw InvalidArgument("kinematics: lambda0 must be positive");
    if (std::abs(ki - kn) > kOnShellTolerance * ki)
      throw InvalidArgument("kinematics: |k_i| != |k_n| (off shell)");
    ScatteringKinematics kin;
    kin.k_i = k_i;
    kin.k_n = k_n;
    kin.lambda0 = lambda0;
    kin.q_vec = k_i - k_n;
    kin.q_mag = norm(kin.q_vec);
    if (kin.q_mag <= kForwardTolerance * ki)
      throw ForwardScattering();
    kin.q_hat = kin.q_vec / kin.q_mag;
    kin.K_vec = k_i + k_n;
    return kin;
  }

  static ScatteringKinematics from_angles(double k, double theta_i, double phi_i,
                                          double theta_n, double phi_n,
                                          double lambda0 = kDefaultLambda0) {
    if (!(k > 0.0) || !std::isfinite(k))
      throw InvalidArgument("kinematics: k must be positive");
    return make(k * unit_from_angles(theta_i, phi_i),
                k * unit_from_angles(theta_n, phi_n), lambda0);
  }

  /// The reversed process k_n -> k_i.
  ScatteringKinematics reversed() const { return make(k_n, k_i, lambda0); }
};

} // namespace knotscatter
