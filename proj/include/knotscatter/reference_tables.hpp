#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

namespace knotscatter::tables {

// Published angular brackets  sum_lm C(l,m) int Y*_lm (monomial) dOmega,
// stored as the coefficient multiplying each C(l,m). Kept as data for the
// discrepancy report; nothing in the amplitude pipeline reads them.

struct Term {
  int l;
  int m;
  std::complex<double> coeff;
};

struct Bracket {
  std::array<int, 3> exponents; // powers of R1, R2, R3
  std::vector<Term> terms;
};

/// int Y*_lm Y_1a Y_1b dOmega, keyed by (a, b).
struct PairIntegral {
  int m1;
  int m2;
  std::vector<Term> terms;
};

/// Y_1a Y_1b Y_1c = sum of terms.
struct TripleIdentity {
  std::array<int, 3> ms;
  std::vector<Term> terms;
};

namespace detail {
inline constexpr double pi = std::numbers::pi;
inline const std::complex<double> I{0.0, 1.0};
inline double sq(double x) { return std::sqrt(x); }
} // namespace detail

inline const std::vector<PairIntegral> &pair_integrals() {
  using namespace detail;
  static const std::vector<PairIntegral> t{
      {0, 0, {{0, 0, 1.0 / sq(4 * pi)}, {2, 0, 1.0 / sq(5 * pi)}}},
      {-1, -1, {{2, -2, sq(3 / (10 * pi))}}},
      {1, 1, {{2, 2, sq(3 / (10 * pi))}}},
      {0, 1, {{2, 1, sq(3 / (20 * pi))}}},
      {0, -1, {{2, -1, sq(3 / (20 * pi))}}},
      {1, -1, {{2, 0, 1.0 / sq(20 * pi)}, {0, 0, -1.0 / sq(4 * pi)}}},
  };
  return t;
}

/// Brackets of every direction-cosine monomial of degree <= 3, as printed in
/// the angular reduction tables. Even degrees contract against A, odd
/// degrees against B.
inline const std::vector<Bracket> &bracket_table() {
  using namespace detail;
  const double c = std::pow(2 * pi / 3, 1.5);
  const double d = std::pow(4 * pi / 3, 1.5);
  const double t33 = 3 / (2 * pi) * sq(3.0 / 70);
  const double t9 = 9 / (10 * pi), t9b = 9 / (10 * pi) * sq(1.0 / 14);
  const double t3 = 3 / (10 * pi), t3b = 3 / (10 * pi) * sq(1.0 / 14);
  static const std::vector<Bracket> t{
      {{0, 0, 0}, {{0, 0, sq(4 * pi)}}},
      {{2, 0, 0},
       {{2, -2, sq(2 * pi / 15)},
        {2, 2, sq(2 * pi / 15)},
        {2, 0, -2.0 / 3 * sq(pi / 5)},
        {0, 0, 2 * sq(pi) / 3}}},
      {{0, 2, 0},
       {{2, -2, -sq(2 * pi / 15)},
        {2, 2, -sq(2 * pi / 15)},
        {2, 0, -2.0 / 3 * sq(pi / 5)},
        {0, 0, 2 * sq(pi) / 3}}},
      {{0, 0, 2}, {{0, 0, 2.0 / 3 * sq(pi)}, {2, 0, 4.0 / 3 * sq(pi / 5)}}},
      {{1, 1, 0},
       {{2, -2, I * (2 * pi / 3) * sq(3 / (10 * pi))},
        {2, 2, -I * (2 * pi / 3) * sq(3 / (10 * pi))}}},
      {{1, 0, 1}, {{2, -1, sq(2 * pi / 15)}, {2, 1, -sq(2 * pi / 15)}}},
      {{0, 1, 1}, {{2, -1, I * sq(2 * pi / 15)}, {2, 1, I * sq(2 * pi / 15)}}},

      {{1, 0, 0}, {{1, -1, sq(2 * pi / 3)}, {1, 1, -sq(2 * pi / 3)}}},
      {{0, 1, 0}, {{1, -1, I * sq(2 * pi / 3)}, {1, 1, I * sq(2 * pi / 3)}}},
      {{0, 0, 1}, {{1, 0, sq(4 * pi / 3)}}},

      {{3, 0, 0},
       {{3, -3, c * t33},
        {1, -1, c * t9},
        {3, -1, -c * t9b},
        {1, 1, -c * t9},
        {3, 1, c * 9.0 / (10 * pi * sq(14))},
        {3, 3, -c * t33}}},
      {{0, 3, 0},
       {{3, -3, -I * c * t33},
        {1, -1, I * c * t9},
        {3, -1, -I * c * t9b},
        {1, 1, I * c * t9},
        {3, 1, -I * c * 9.0 / (10 * pi * sq(14))},
        {3, 3, -I * c * t33}}},
      {{0, 0, 3}, {{1, 0, d * 9.0 / (20 * pi)}, {3, 0, d * 3.0 / (10 * pi) * sq(3.0 / 7)}}},
      {{1, 2, 0},
       {{3, -3, -c * t33},
        {1, -1, c * t3},
        {3, -1, -c * t3b},
        {1, 1, -c * t3},
        {3, 1, c * 3.0 / (10 * pi * sq(14))},
        {3, 3, c * t33}}},
      {{2, 1, 0},
       {{3, -3, I * c * t33},
        {1, -1, I * c * t3},
        {3, -1, -I * c * t3b},
        {1, 1, I * c * t3},
        {3, 1, -I * c * 3.0 / (10 * pi * sq(14))},
        {3, 3, I * c * t33}}},
      {{1, 0, 2},
       {{1, -1, 0.2 * sq(2 * pi / 3)},
        {3, -1, 0.8 * sq(pi / 21)},
        {1, 1, -0.2 * sq(2 * pi / 3)},
        {3, 1, -0.8 * sq(pi / 21)}}},
      {{2, 0, 1},
       {{3, -2, sq(2 * pi / 105)},
        {1, 0, 0.4 * sq(pi / 3)},
        {3, 0, -0.4 * sq(pi / 7)},
        {3, 2, sq(2 * pi / 105)}}},
      {{0, 2, 1},
       {{3, -2, -sq(2 * pi / 105)},
        {1, 0, 0.4 * sq(pi / 3)},
        {3, 0, -0.4 * sq(pi / 7)},
        {3, 2, -sq(2 * pi / 105)}}},
      {{0, 1, 2},
       {{1, -1, I * 0.2 * sq(2 * pi / 3)},
        {3, -1, I * 0.8 * sq(pi / 21)},
        {1, 1, I * 0.2 * sq(2 * pi / 3)},
        {3, 1, I * 0.8 * sq(pi / 21)}}},
      {{1, 1, 1}, {{3, -2, I * sq(2 * pi / 105)}, {3, 2, -I * sq(2 * pi / 105)}}},
  };
  return t;
}

/// The same brackets as they appear inside the assembled octopole matrix
/// element, where one coefficient is printed differently.
inline const std::vector<Bracket> &assembled_octopole_table() {
  static const std::vector<Bracket> t = [] {
    std::vector<Bracket> out;
    for (const auto &b : bracket_table()) {
      const int deg = b.exponents[0] + b.exponents[1] + b.exponents[2];
      if (deg != 3)
        continue;
      out.push_back(b);
      if (b.exponents == std::array<int, 3>{1, 0, 2})
        for (auto &term : out.back().terms)
          if (term.l == 1 && term.m == 1)
            term.coeff = -4.0 * std::numbers::pi / (3.0 * std::sqrt(10.0));
    }
    return out;
  }();
  return t;
}

inline const std::vector<TripleIdentity> &triple_identities() {
  using namespace detail;
  static const std::vector<TripleIdentity> t{
      {{0, 1, 1}, {{3, 2, 3 / (2 * pi * sq(70))}}},
      {{1, 1, 1}, {{3, 3, 3 / (2 * pi) * sq(3.0 / 70)}}},
      {{-1, 1, 1}, {{1, 1, -3 / (10 * pi)}, {3, 1, 3 / (10 * pi * sq(14))}}},
      {{-1, -1, -1}, {{3, -3, 3 / (2 * pi) * sq(3.0 / 70)}}},
      {{1, -1, -1}, {{1, -1, -3 / (10 * pi)}, {3, -1, 3 / (10 * pi) * sq(1.0 / 14)}}},
      {{0, -1, -1}, {{3, -2, 3 / (2 * pi) * sq(1.0 / 70)}}},
      {{-1, 0, 0}, {{1, -1, 3 / (20 * pi)}, {3, -1, 3 / (10 * pi) * sq(2.0 / 7)}}},
      {{1, 0, 0}, {{1, 1, 3 / (20 * pi)}, {3, 1, 3 / (10 * pi) * sq(2.0 / 7)}}},
      {{0, 0, 0}, {{1, 0, 9 / (20 * pi)}, {3, 0, 3 / (10 * pi) * sq(3.0 / 7)}}},
      {{0, -1, 1}, {{1, 0, -3 / (20 * pi)}, {3, 0, 3 / (20 * pi) * sq(3.0 / 7)}}},
  };
  return t;
}

} // namespace knotscatter::tables
