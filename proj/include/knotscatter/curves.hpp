#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "knotscatter/error.hpp"
#include "knotscatter/vec3.hpp"

namespace knotscatter {

/// Default number of equally spaced samples used for every line integral.
inline constexpr int kDefaultCurveSamples = 1024;

/// Minimum number of points accepted for a sampled (tabulated) curve.
inline constexpr int kMinSampledPoints = 8;

struct CurvePoint {
  Vec3 position;
  Vec3 derivative; ///< d r / d tau
};

/// (p,q) torus knot on the torus (rho - 2)^2 + z^2 = 1:
///   x = (2 + cos q t) cos p t,  y = (2 + cos q t) sin p t,  z = -sin q t.
struct TorusKnot {
  int p = 2;
  int q = 3;
};

/// Circle of radius 3 in the xy plane, counter-clockwise about +z.
struct UnknotXY {};
/// Unit circle in the xz plane centred on (2, 0, 0).
struct UnknotXZ {};
/// Unit circle in the yz plane centred on (0, 2, 0).
struct UnknotYZ {};

/// Closed curve through tabulated points at tau_j = 2 pi j / N, interpolated
/// by the unique real trigonometric polynomial of degree N/2 through them.
/// The last point must not repeat the first.
class SampledCurve {
public:
  explicit SampledCurve(std::vector<Vec3> points) {
    const auto n = static_cast<int>(points.size());
    if (n < kMinSampledPoints)
      throw InvalidArgument("sampled curve: too few samples (" +
                            std::to_string(n) + " < " +
                            std::to_string(kMinSampledPoints) + ")");
    for (const auto &p : points)
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
        throw InvalidArgument("sampled curve: non-finite coordinate");

    auto data = std::make_shared<Data>();
    data->points = std::move(points);
    const int half = n / 2;
    data->cos_coeff.assign(half + 1, Vec3{});
    data->sin_coeff.assign(half + 1, Vec3{});
    // Direct DFT; curves are at most a few thousand points.
    for (int k = 0; k <= half; ++k) {
      Vec3 c{}, s{};
      for (int j = 0; j < n; ++j) {
        const double arg = 2.0 * std::numbers::pi *
                           static_cast<double>((static_cast<long>(k) * j) % n) /
                           n;
        c += std::cos(arg) * data->points[j];
        s += std::sin(arg) * data->points[j];
      }
      const bool nyquist = (n % 2 == 0 && k == half);
      const double scale = (k == 0 || nyquist) ? 1.0 / n : 2.0 / n;
      data->cos_coeff[k] = scale * c;
      data->sin_coeff[k] = nyquist ? Vec3{} : scale * s;
    }
    data_ = std::move(data);
  }

  const std::vector<Vec3> &points() const { return data_->points; }
  int size() const { return static_cast<int>(data_->points.size()); }

  CurvePoint eval(double tau) const {
    CurvePoint out{data_->cos_coeff[0], Vec3{}};
    const double c1 = std::cos(tau), s1 = std::sin(tau);
    double ck = 1.0, sk = 0.0;
    const int half = static_cast<int>(data_->cos_coeff.size()) - 1;
    for (int k = 1; k <= half; ++k) {
      // (ck, sk) <- (cos k tau, sin k tau) by rotation, re-seeded
      // periodically to bound drift.
      if (k % 64 == 0) {
        ck = std::cos(k * tau);
        sk = std::sin(k * tau);
      } else {
        const double nc = ck * c1 - sk * s1;
        sk = sk * c1 + ck * s1;
        ck = nc;
      }
      const Vec3 &a = data_->cos_coeff[k];
      const Vec3 &b = data_->sin_coeff[k];
      out.position += ck * a + sk * b;
      out.derivative += static_cast<double>(k) * (ck * b - sk * a);
    }
    return out;
  }

private:
  struct Data {
    std::vector<Vec3> points;
    std::vector<Vec3> cos_coeff;
    std::vector<Vec3> sin_coeff;
  };
  std::shared_ptr<const Data> data_;
};

/// A closed curve: one of the analytic presets or a sampled curve.
/// Immutable; cheap to copy.
class KnotSpec {
public:
  using Variant =
      std::variant<TorusKnot, UnknotXY, UnknotXZ, UnknotYZ, SampledCurve>;

  static KnotSpec torus(int p, int q) {
    if (p <= 0 || q <= 0)
      throw InvalidArgument("torus knot: p and q must be positive");
    if (std::gcd(p, q) != 1)
      throw InvalidArgument("torus knot: p and q must be coprime (got " +
                            std::to_string(p) + "," + std::to_string(q) + ")");
    return KnotSpec(TorusKnot{p, q});
  }
  static KnotSpec unknot_xy() { return KnotSpec(UnknotXY{}); }
  static KnotSpec unknot_xz() { return KnotSpec(UnknotXZ{}); }
  static KnotSpec unknot_yz() { return KnotSpec(UnknotYZ{}); }
  static KnotSpec sampled(std::vector<Vec3> points) {
    return KnotSpec(SampledCurve(std::move(points)));
  }

  const Variant &variant() const { return v_; }

  /// Short human-readable label, e.g. "torus:2,3" or "sampled:64".
  std::string label() const {
    struct Visitor {
      std::string operator()(const TorusKnot &t) const {
        return "torus:" + std::to_string(t.p) + "," + std::to_string(t.q);
      }
      std::string operator()(const UnknotXY &) const { return "unknot-xy"; }
      std::string operator()(const UnknotXZ &) const { return "unknot-xz"; }
      std::string operator()(const UnknotYZ &) const { return "unknot-yz"; }
      std::string operator()(const SampledCurve &s) const {
        return "sampled:" + std::to_string(s.size());
      }
    };
    return std::visit(Visitor{}, v_);
  }

private:
  explicit KnotSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

inline CurvePoint eval_curve(const KnotSpec &spec, double tau) {
  if (!std::isfinite(tau))
    throw InvalidArgument("eval_curve: non-finite parameter");
  struct Visitor {
    double t;
    CurvePoint operator()(const TorusKnot &k) const {
      const double p = k.p, q = k.q;
      const double cp = std::cos(p * t), sp = std::sin(p * t);
      const double cq = std::cos(q * t), sq = std::sin(q * t);
      const double rho = 2.0 + cq, drho = -q * sq;
      return {{rho * cp, rho * sp, -sq},
              {drho * cp - p * rho * sp, drho * sp + p * rho * cp, -q * cq}};
    }
    CurvePoint operator()(const UnknotXY &) const {
      const double c = std::cos(t), s = std::sin(t);
      return {{3.0 * c, 3.0 * s, 0.0}, {-3.0 * s, 3.0 * c, 0.0}};
    }
    CurvePoint operator()(const UnknotXZ &) const {
      const double c = std::cos(t), s = std::sin(t);
      return {{2.0 + c, 0.0, s}, {-s, 0.0, c}};
    }
    CurvePoint operator()(const UnknotYZ &) const {
      const double c = std::cos(t), s = std::sin(t);
      return {{0.0, 2.0 + c, s}, {0.0, -s, c}};
    }
    CurvePoint operator()(const SampledCurve &s) const { return s.eval(t); }
  };
  return std::visit(Visitor{tau}, spec.variant());
}

/// The curve at the n equally spaced nodes tau_j = 2 pi j / n.
inline std::vector<CurvePoint> sample_curve(const KnotSpec &spec, int n) {
  if (n < kMinSampledPoints)
    throw InvalidArgument("curve quadrature needs at least " +
                          std::to_string(kMinSampledPoints) + " samples");
  std::vector<CurvePoint> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j)
    out.push_back(eval_curve(spec, 2.0 * std::numbers::pi * j / n));
  return out;
}

/// Periodic trapezoidal rule for  int_0^{2 pi} f(point, tau) d tau.
/// Spectrally accurate for smooth periodic integrands.
template <class F>
double curve_integral(const KnotSpec &spec, F &&integrand,
                      int n_samples = kDefaultCurveSamples) {
  if (n_samples < kMinSampledPoints)
    throw InvalidArgument("curve quadrature needs at least " +
                          std::to_string(kMinSampledPoints) + " samples");
  const double h = 2.0 * std::numbers::pi / n_samples;
  double sum = 0.0;
  for (int j = 0; j < n_samples; ++j) {
    const double tau = h * j;
    sum += integrand(eval_curve(spec, tau), tau);
  }
  return sum * h;
}

/// Largest |r(tau)| over n_samples nodes.
inline double min_enclosing_radius(const KnotSpec &spec,
                                   int n_samples = kDefaultCurveSamples) {
  if (n_samples < 64)
    throw InvalidArgument("min_enclosing_radius needs at least 64 samples");
  double r = 0.0;
  for (const auto &pt : sample_curve(spec, n_samples))
    r = std::max(r, norm(pt.position));
  return r;
}

} // namespace knotscatter
