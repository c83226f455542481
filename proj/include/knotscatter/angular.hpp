#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "knotscatter/error.hpp"
#include "knotscatter/quadrature.hpp"
#include "knotscatter/reference_tables.hpp"
#include "knotscatter/specfun.hpp"
#include "knotscatter/vec3.hpp"

namespace knotscatter {

/// R1^n1 R2^n2 R3^n3 in the direction cosines of a unit vector.
struct DirectionCosineMonomial {
  std::array<int, 3> exponents{0, 0, 0};

  int degree() const { return exponents[0] + exponents[1] + exponents[2]; }

  double eval(const Vec3 &R) const {
    return std::pow(R.x, exponents[0]) * std::pow(R.y, exponents[1]) *
           std::pow(R.z, exponents[2]);
  }
  double eval(double theta, double phi) const {
    return eval(Vec3{std::sin(theta) * std::cos(phi),
                     std::sin(theta) * std::sin(phi), std::cos(theta)});
  }

  /// "1", "R1", "R1R3R3", ...
  std::string label() const {
    std::string s;
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < exponents[i]; ++k)
        s += "R" + std::to_string(i + 1);
    return s.empty() ? "1" : s;
  }

  /// Monomial R_j R_k (R_l ...) from 0-based indices.
  static DirectionCosineMonomial from_indices(std::initializer_list<int> idx) {
    DirectionCosineMonomial m;
    for (int i : idx)
      ++m.exponents.at(i);
    return m;
  }

  friend bool operator<(const DirectionCosineMonomial &a,
                        const DirectionCosineMonomial &b) {
    return a.exponents < b.exponents;
  }
  friend bool operator==(const DirectionCosineMonomial &a,
                         const DirectionCosineMonomial &b) = default;
};

/// monomial = sum c_lm Y_lm
struct HarmonicExpansion {
  LMCoefficients terms;

  std::complex<double> eval(double theta, double phi) const {
    std::complex<double> s = 0.0;
    for (const auto &[lm, c] : terms)
      s += c * spherical_harmonic(lm.first, lm.second, theta, phi);
    return s;
  }
};

inline constexpr double kExpansionDropTol = 1e-15;

namespace detail {

inline HarmonicExpansion degree_one(int axis) {
  const double s = std::sqrt(2.0 * std::numbers::pi / 3.0);
  const std::complex<double> I{0.0, 1.0};
  HarmonicExpansion e;
  switch (axis) {
  case 0:
    e.terms[{1, -1}] = s;
    e.terms[{1, 1}] = -s;
    break;
  case 1:
    e.terms[{1, -1}] = I * s;
    e.terms[{1, 1}] = I * s;
    break;
  default:
    e.terms[{1, 0}] = std::sqrt(4.0 * std::numbers::pi / 3.0);
  }
  return e;
}

/// Product of two expansions, relinearized through Gaunt coefficients.
inline HarmonicExpansion multiply(const HarmonicExpansion &a,
                                  const HarmonicExpansion &b) {
  HarmonicExpansion out;
  for (const auto &[lm1, c1] : a.terms)
    for (const auto &[lm2, c2] : b.terms) {
      const auto [l1, m1] = lm1;
      const auto [l2, m2] = lm2;
      const int M = m1 + m2;
      for (int L = std::abs(l1 - l2); L <= l1 + l2; ++L) {
        if (std::abs(M) > L)
          continue;
        const double g = gaunt(l1, m1, l2, m2, L, M);
        if (g != 0.0)
          out.terms[{L, M}] += c1 * c2 * g;
      }
    }
  std::erase_if(out.terms,
                [](const auto &kv) { return std::abs(kv.second) < kExpansionDropTol; });
  return out;
}

inline HarmonicExpansion build_expansion(const DirectionCosineMonomial &mono) {
  HarmonicExpansion e;
  e.terms[{0, 0}] = std::sqrt(4.0 * std::numbers::pi);
  for (int axis = 0; axis < 3; ++axis)
    for (int k = 0; k < mono.exponents[axis]; ++k)
      e = multiply(e, degree_one(axis));
  return e;
}

inline std::vector<DirectionCosineMonomial> all_monomials(int max_degree) {
  std::vector<DirectionCosineMonomial> out;
  for (int a = 0; a <= max_degree; ++a)
    for (int b = 0; a + b <= max_degree; ++b)
      for (int c = 0; a + b + c <= max_degree; ++c)
        out.push_back({{a, b, c}});
  return out;
}

} // namespace detail

inline constexpr int kMaxMonomialDegree = 3;

/// Every monomial of degree <= 3 (20 of them).
inline std::vector<DirectionCosineMonomial> all_monomials() {
  return detail::all_monomials(kMaxMonomialDegree);
}

inline const HarmonicExpansion &
monomial_expansion(const DirectionCosineMonomial &mono) {
  for (int e : mono.exponents)
    if (e < 0)
      throw InvalidArgument("monomial exponents must be non-negative");
  if (mono.degree() > kMaxMonomialDegree)
    throw InvalidArgument("monomial degree > 3 is not supported");
  static const std::map<DirectionCosineMonomial, HarmonicExpansion> table = [] {
    std::map<DirectionCosineMonomial, HarmonicExpansion> t;
    for (const auto &m : all_monomials())
      t.emplace(m, detail::build_expansion(m));
    return t;
  }();
  return table.at(mono);
}

/// sum_lm coeffs(l,m) int conj(Y_lm) mono dOmega, using the exact expansion.
inline std::complex<double> angular_bracket(const DirectionCosineMonomial &mono,
                                            const LMCoefficients &coeffs) {
  std::complex<double> s = 0.0;
  for (const auto &[lm, c] : monomial_expansion(mono).terms) {
    const auto it = coeffs.find(lm);
    if (it == coeffs.end())
      throw InvalidArgument("angular_bracket: missing coefficient for (l,m) = (" +
                            std::to_string(lm.first) + "," +
                            std::to_string(lm.second) + ") in " + mono.label());
    s += it->second * c;
  }
  return s;
}

/// Same bracket by direct sphere quadrature of every integral with l <= l_max.
inline std::complex<double>
sphere_quadrature_bracket(const DirectionCosineMonomial &mono,
                          const LMCoefficients &coeffs, int l_max = 3) {
  if (l_max < 3)
    throw InvalidArgument("sphere_quadrature_bracket: l_max must be >= 3");
  const auto &rule = sphere_rule();
  std::complex<double> total = 0.0;
  for (const auto &[lm, c] : coeffs) {
    if (lm.first > l_max)
      continue;
    std::complex<double> integral = 0.0;
    for (const auto &node : rule)
      integral += node.weight *
                  std::conj(spherical_harmonic(lm.first, lm.second, node.theta,
                                               node.phi)) *
                  mono.eval(node.theta, node.phi);
    total += c * integral;
  }
  return total;
}

struct Discrepancy {
  std::string monomial;
  int l = 0;
  int m = 0;
  std::complex<double> paper_value;
  std::complex<double> computed_value;
  std::string source;
};

inline constexpr double kDiscrepancyTol = 1e-11;

namespace detail {

inline void compare_brackets(const std::vector<tables::Bracket> &published,
                             const std::string &source,
                             std::vector<Discrepancy> &out) {
  for (const auto &b : published) {
    const DirectionCosineMonomial mono{b.exponents};
    LMCoefficients printed;
    for (const auto &t : b.terms)
      printed[{t.l, t.m}] += t.coeff;
    LMCoefficients computed = monomial_expansion(mono).terms;
    LMCoefficients keys = printed;
    for (const auto &[lm, c] : computed)
      keys[lm];
    for (const auto &[lm, unused] : keys) {
      const auto p = printed.count(lm) ? printed[lm] : std::complex<double>{};
      const auto c = computed.count(lm) ? computed[lm] : std::complex<double>{};
      if (std::abs(p - c) > kDiscrepancyTol)
        out.push_back({mono.label(), lm.first, lm.second, p, c, source});
    }
  }
}

} // namespace detail

/// Every printed bracket coefficient that disagrees with the Gaunt
/// construction.
inline std::vector<Discrepancy> discrepancy_report() {
  std::vector<Discrepancy> out;
  detail::compare_brackets(tables::bracket_table(), "bracket-table", out);
  detail::compare_brackets(tables::assembled_octopole_table(),
                           "assembled-octopole", out);
  return out;
}

} // namespace knotscatter
