#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace kst;

namespace {

/// Y_lm tabulated on the default sphere rule, l <= 4.
struct YTable {
  std::vector<SphereNode> nodes = sphere_rule();
  std::map<std::pair<int, int>, std::vector<std::complex<double>>> y;
  YTable() {
    for (int l = 0; l <= 4; ++l)
      for (int m = -l; m <= l; ++m)
        for (const auto &n : nodes)
          y[{l, m}].push_back(spherical_harmonic(l, m, n.theta, n.phi));
  }
};

const YTable &ytable() {
  static const YTable t;
  return t;
}

} // namespace

TEST(Legendre, Values) {
  for (double x : {-1.0, -0.4, 0.0, 0.7, 1.0})
    EXPECT_EQ(legendre_p(0, x), 1.0);
  EXPECT_DOUBLE_EQ(legendre_p(1, 0.3), 0.3);
  EXPECT_DOUBLE_EQ(legendre_p(2, 0.5), -0.125);
  for (int n = 0; n <= 8; ++n) {
    EXPECT_EQ(legendre_p(n, 1.0), 1.0);
    EXPECT_EQ(legendre_p(n, -1.0), n % 2 ? -1.0 : 1.0);
  }
}

TEST(SphericalHarmonic, Values) {
  EXPECT_NEAR(spherical_harmonic(0, 0, 0.7, 1.1).real(), 1 / std::sqrt(4 * pi), 1e-15);
  EXPECT_NEAR(spherical_harmonic(1, 0, 0.0, 0.3).real(), std::sqrt(3 / (4 * pi)), 1e-15);
  // Condon-Shortley: Y_11 = -sqrt(3/8pi) sin(theta) e^{i phi}
  const auto y11 = spherical_harmonic(1, 1, 0.9, 0.4);
  EXPECT_NEAR(std::abs(y11 - (-std::sqrt(3 / (8 * pi)) * std::sin(0.9) *
                              std::polar(1.0, 0.4))),
              0.0, 1e-15);
  EXPECT_THROW(spherical_harmonic(1, 2, 0.1, 0.1), InvalidArgument);
}

TEST(SphericalHarmonic, Orthonormal) {
  const auto &t = ytable();
  for (const auto &[a, ya] : t.y)
    for (const auto &[b, yb] : t.y) {
      std::complex<double> s = 0;
      for (std::size_t n = 0; n < t.nodes.size(); ++n)
        s += t.nodes[n].weight * std::conj(ya[n]) * yb[n];
      EXPECT_NEAR(std::abs(s - (a == b ? 1.0 : 0.0)), 0.0, 1e-12);
    }
}

TEST(SphericalBessel, ReferenceValues) {
  // mpmath, 40 digits
  struct Ref {
    int l;
    double x, v;
  };
  const Ref refs[] = {
      {0, 0.1, 0.99833416646828152307},     {0, 1, 0.84147098480789650665},
      {0, 5, -0.19178485493262769378},      {0, 50, -0.0052474970740785757183},
      {0, 500, -0.00093554361064495225264}, {1, 0.1, 0.033300011902557569726},
      {1, 1, 0.30116867893975678925},       {1, 5, -0.095089408079170791649},
      {1, 50, -0.019404270511323836996},    {1, 500, 0.0017658274596416660198},
      {2, 0.1, 0.00066619060844556870586},  {2, 1, 0.062035052011373861102},
      {2, 5, 0.13473121008512521879},       {2, 50, 0.0040832408433991454985},
      {2, 500, 0.00094613857540280224876},  {3, 0.1, 9.5185197208655670454e-6},
      {3, 1, 0.0090065811171125162594},     {3, 5, 0.22982061816429601044},
      {3, 50, 0.019812594595663751546},     {3, 500, -0.0017563660738876379973},
  };
  for (const auto &r : refs)
    EXPECT_NEAR(spherical_bessel_j(r.l, r.x), r.v, 1e-12 * std::abs(r.v))
        << "l=" << r.l << " x=" << r.x;
}

TEST(SphericalBessel, OriginAndRoutes) {
  for (int l = 0; l <= 10; ++l)
    EXPECT_EQ(spherical_bessel_j(l, 0.0), l == 0 ? 1.0 : 0.0);
  EXPECT_NEAR(spherical_bessel_j(0, 1.0), std::sin(1.0), 1e-15);
  const double s = detail::spherical_bessel_series(2, 5.0);
  const double r = detail::spherical_bessel_miller(2, 5.0);
  EXPECT_NEAR(s, r, 1e-12 * std::abs(r));
  const double x = 5.0;
  const double closed = (3 / (x * x * x) - 1 / x) * std::sin(x) - 3 * std::cos(x) / (x * x);
  EXPECT_NEAR(spherical_bessel_j(2, x), closed, 1e-14);
  EXPECT_THROW(spherical_bessel_j(11, 1.0), InvalidArgument);
  EXPECT_THROW(spherical_bessel_j(1, -1.0), InvalidArgument);
}

TEST(GammaRatio, Values) {
  EXPECT_NEAR(gamma_ratio(3, 2), 2.0, 1e-14);
  EXPECT_NEAR(gamma_ratio(0.5, 1), std::sqrt(pi), 1e-14);
  EXPECT_NEAR(gamma_ratio(1.25, 1.75), 0.98622503972954629744, 1e-15);
  EXPECT_THROW(gamma_ratio(0.0, 1.0), DegenerateClosedForm);
  EXPECT_THROW(gamma_ratio(1.0, -2.0), DegenerateClosedForm);
}

TEST(Hyp1F2, Values) {
  EXPECT_EQ(hyp1f2(0.3, 1.2, 2.5, 0.0), 1.0);
  EXPECT_NEAR(hyp1f2(1, 2, 1.5, -1), 0.7080734182735711935, 1e-15);
  // a = b1 collapses to 0F1(; l + 3/2; -x^2/4) = Gamma(l+3/2) (2/x)^l j_l(x) / sqrt(pi)/2
  for (double x : {0.5, 2.0, 7.0, 20.0})
    for (int l = 0; l <= 3; ++l) {
      const double f01 = hyp1f2(0.7, 0.7, l + 1.5, -x * x / 4);
      const double jl = std::sqrt(pi) / 2 * std::pow(x / 2, l) / std::tgamma(l + 1.5) * f01;
      EXPECT_NEAR(jl, spherical_bessel_j(l, x), 1e-12) << "l=" << l << " x=" << x;
    }
}

TEST(Hyp1F2, Rejections) {
  EXPECT_THROW(hyp1f2(1, -1, 2, 0.5), InvalidArgument);
  EXPECT_THROW(hyp1f2(1, 2, 0, 0.5), InvalidArgument);
  EXPECT_THROW(hyp1f2(1, 2, 3, -2e4), InvalidArgument);
}

TEST(ClebschGordan, WorkedExamples) {
  EXPECT_NEAR(clebsch_gordan(1, 1, 0, 0, 0, 0), -1 / std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(clebsch_gordan(1, 1, 0, 0, 2, 0), std::sqrt(2.0 / 3), 1e-15);
  EXPECT_EQ(clebsch_gordan(1, 1, 0, 0, 1, 0), 0.0);
  EXPECT_EQ(clebsch_gordan(1, 1, 1, 0, 2, 0), 0.0);
  EXPECT_EQ(clebsch_gordan(1, 1, 0, 0, 3, 0), 0.0);
}

TEST(ClebschGordan, Orthogonality) {
  for (int l1 = 0; l1 <= 3; ++l1)
    for (int l2 = 0; l2 <= 3; ++l2)
      for (int L = std::abs(l1 - l2); L <= l1 + l2; ++L)
        for (int Lp = std::abs(l1 - l2); Lp <= l1 + l2; ++Lp)
          for (int M = -L; M <= L; ++M) {
            double s = 0;
            for (int m1 = -l1; m1 <= l1; ++m1) {
              const int m2 = M - m1;
              if (std::abs(m2) <= l2 && std::abs(M) <= Lp)
                s += clebsch_gordan(l1, l2, m1, m2, L, M) *
                     clebsch_gordan(l1, l2, m1, m2, Lp, M);
            }
            EXPECT_NEAR(s, (L == Lp && std::abs(M) <= Lp) ? 1.0 : 0.0, 1e-13);
          }
}

TEST(Gaunt, MatchesSphereQuadrature) {
  const auto &t = ytable();
  for (int l1 = 0; l1 <= 4; ++l1)
    for (int l2 = 0; l2 <= 4; ++l2)
      for (int L = 0; L <= 4; ++L)
        for (int m1 = -l1; m1 <= l1; ++m1)
          for (int m2 = -l2; m2 <= l2; ++m2) {
            const int M = m1 + m2;
            if (std::abs(M) > L)
              continue;
            const auto &a = t.y.at({l1, m1}), &b = t.y.at({l2, m2}), &c = t.y.at({L, M});
            std::complex<double> s = 0;
            for (std::size_t n = 0; n < t.nodes.size(); ++n)
              s += t.nodes[n].weight * std::conj(c[n]) * a[n] * b[n];
            EXPECT_NEAR(std::abs(s - gaunt(l1, m1, l2, m2, L, M)), 0.0, 1e-11)
                << l1 << m1 << l2 << m2 << L << M;
          }
  EXPECT_EQ(gaunt(1, 1, 1, 0, 2, 0), 0.0);
  EXPECT_NEAR(gaunt(1, 0, 1, 0, 0, 0), 1 / std::sqrt(4 * pi), 1e-15);
}

TEST(Gaunt, PublishedPairIntegrals) {
  for (const auto &row : tables::pair_integrals())
    for (int L = 0; L <= 2; ++L)
      for (int M = -L; M <= L; ++M) {
        std::complex<double> printed = 0;
        for (const auto &term : row.terms)
          if (term.l == L && term.m == M)
            printed += term.coeff;
        EXPECT_NEAR(std::abs(printed - gaunt(1, row.m1, 1, row.m2, L, M)), 0.0, 1e-15)
            << row.m1 << "," << row.m2 << " -> " << L << "," << M;
      }
  EXPECT_NEAR(gaunt(1, 1, 1, -1, 0, 0), -1 / std::sqrt(4 * pi), 1e-15);
}

TEST(Gaunt, ProductLinearizationPointwise) {
  std::mt19937_64 rng(38);
  for (int n = 0; n < 100; ++n) {
    const double th = std::acos(2 * uniform01(rng) - 1), ph = 2 * pi * uniform01(rng);
    for (int l1 = 0; l1 <= 2; ++l1)
      for (int l2 = 0; l2 <= 2; ++l2)
        for (int m1 = -l1; m1 <= l1; ++m1)
          for (int m2 = -l2; m2 <= l2; ++m2) {
            const int M = m1 + m2;
            std::complex<double> rhs = 0;
            for (int L = std::max(std::abs(l1 - l2), std::abs(M)); L <= l1 + l2; ++L)
              rhs += gaunt(l1, m1, l2, m2, L, M) * spherical_harmonic(L, M, th, ph);
            const auto lhs = spherical_harmonic(l1, m1, th, ph) * spherical_harmonic(l2, m2, th, ph);
            EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-12);
          }
  }
}

TEST(TripleProducts, PublishedIdentitiesPointwise) {
  EXPECT_LE(diagnostics::triple_identity_residual(2024, 100), 1e-12);
  EXPECT_EQ(tables::triple_identities().size(), 10u);
}
