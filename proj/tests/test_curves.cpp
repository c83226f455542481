#include <gtest/gtest.h>

#include <numeric>

#include "test_util.hpp"

using namespace kst;

namespace {

std::vector<KnotSpec> analytic_presets() {
  std::vector<KnotSpec> out{KnotSpec::unknot_xy(), KnotSpec::unknot_xz(),
                            KnotSpec::unknot_yz()};
  for (int p = 1; p <= 7; ++p)
    for (int q = 1; q <= 7; ++q)
      if (std::gcd(p, q) == 1)
        out.push_back(KnotSpec::torus(p, q));
  return out;
}

void expect_vec_near(const Vec3 &a, const Vec3 &b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

} // namespace

TEST(Curves, PresetPositions) {
  expect_vec_near(eval_curve(KnotSpec::torus(2, 3), 0.0).position, {3, 0, 0}, 1e-15);
  expect_vec_near(eval_curve(KnotSpec::unknot_xy(), pi / 2).position, {0, 3, 0}, 1e-15);
  expect_vec_near(eval_curve(KnotSpec::unknot_xz(), pi).position, {1, 0, 0}, 1e-15);
  expect_vec_near(eval_curve(KnotSpec::unknot_yz(), 0.0).position, {0, 3, 0}, 1e-15);
}

TEST(Curves, SampledReproducesGenerator) {
  std::vector<Vec3> pts;
  for (const auto &cp : sample_curve(KnotSpec::unknot_xz(), 64))
    pts.push_back(cp.position);
  const auto s = KnotSpec::sampled(pts);
  expect_vec_near(eval_curve(s, pi).position, {1, 0, 0}, 1e-10);
  std::mt19937_64 rng(7);
  for (int n = 0; n < 20; ++n) {
    const double t = 2 * pi * uniform01(rng);
    const auto a = eval_curve(s, t), b = eval_curve(KnotSpec::unknot_xz(), t);
    expect_vec_near(a.position, b.position, 1e-12);
    expect_vec_near(a.derivative, b.derivative, 1e-11);
  }
}

TEST(Curves, AnalyticDerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(11);
  for (const auto &spec : analytic_presets())
    for (int n = 0; n < 10; ++n) {
      const double t = 2 * pi * uniform01(rng), h = 1e-5;
      const Vec3 fd = (eval_curve(spec, t + h).position - eval_curve(spec, t - h).position) /
                      (2 * h);
      const Vec3 d = eval_curve(spec, t).derivative;
      EXPECT_LE(norm(fd - d), 1e-6 * norm(d)) << spec.label();
    }
}

TEST(Curves, Periodicity) {
  auto specs = analytic_presets();
  specs.push_back(random_curve(3));
  std::mt19937_64 rng(5);
  for (const auto &spec : specs)
    for (int n = 0; n < 10; ++n) {
      const double t = 2 * pi * uniform01(rng);
      const auto a = eval_curve(spec, t), b = eval_curve(spec, t + 2 * pi);
      EXPECT_LE(norm(a.position - b.position), 1e-12) << spec.label();
      EXPECT_LE(norm(a.derivative - b.derivative), 1e-11) << spec.label();
    }
}

TEST(Curves, CurveIntegralExamples) {
  for (const auto &spec : {KnotSpec::torus(2, 3), KnotSpec::unknot_yz(), random_curve(1)})
    EXPECT_NEAR(curve_integral(spec, [](const CurvePoint &, double) { return 1.0; }, 64),
                2 * pi, 1e-13);
  EXPECT_NEAR(curve_integral(
                  KnotSpec::unknot_xy(),
                  [](const CurvePoint &p, double) { return p.position.y * p.derivative.x; },
                  512),
              -9 * pi, 1e-10);
  EXPECT_NEAR(curve_integral(
                  KnotSpec::torus(2, 3),
                  [](const CurvePoint &p, double) { return p.position.z * p.derivative.y; },
                  1024),
              0.0, 1e-12);
}

TEST(Curves, Closure) {
  auto specs = analytic_presets();
  specs.push_back(random_curve(9));
  for (const auto &spec : specs)
    for (int c = 0; c < 3; ++c)
      EXPECT_NEAR(curve_integral(spec, [c](const CurvePoint &p, double) {
                    return p.derivative[c];
                  }),
                  0.0, 1e-12)
          << spec.label();
}

TEST(Curves, QuadratureConvergesOnDoubling) {
  const auto f = [](const CurvePoint &p, double) {
    const Vec3 &r = p.position, &d = p.derivative;
    return r.x * r.y * d.z + r.z * r.z * d.x - r.y * d.y * r.x * r.x;
  };
  for (const auto &spec : analytic_presets())
    EXPECT_LT(std::abs(curve_integral(spec, f, 1024) - curve_integral(spec, f, 512)), 1e-10)
        << spec.label();
}

TEST(Curves, MinEnclosingRadius) {
  EXPECT_NEAR(min_enclosing_radius(KnotSpec::torus(2, 3)), 3.0, 1e-9);
  EXPECT_NEAR(min_enclosing_radius(KnotSpec::unknot_xy()), 3.0, 1e-12);
  EXPECT_NEAR(min_enclosing_radius(KnotSpec::unknot_xz()), 3.0, 1e-12);
  EXPECT_THROW(min_enclosing_radius(KnotSpec::unknot_xy(), 32), InvalidArgument);
}

TEST(Curves, Preconditions) {
  EXPECT_THROW(KnotSpec::torus(2, 4), InvalidArgument);
  EXPECT_THROW(KnotSpec::torus(0, 1), InvalidArgument);
  EXPECT_THROW(KnotSpec::sampled(std::vector<Vec3>(7, Vec3{1, 0, 0})), InvalidArgument);
  EXPECT_THROW(KnotSpec::sampled({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), InvalidArgument);
  std::vector<Vec3> bad(8, Vec3{1, 0, 0});
  bad[3].y = std::nan("");
  EXPECT_THROW(KnotSpec::sampled(bad), InvalidArgument);
  EXPECT_THROW(eval_curve(KnotSpec::unknot_xy(), INFINITY), InvalidArgument);
  EXPECT_THROW(sample_curve(KnotSpec::unknot_xy(), 4), InvalidArgument);
  EXPECT_EQ(KnotSpec::torus(3, 4).label(), "torus:3,4");
}
