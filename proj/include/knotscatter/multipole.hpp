#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <tuple>

#include "knotscatter/curves.hpp"

namespace knotscatter {

using Matrix3 = std::array<std::array<double, 3>, 3>;
using Tensor3 = std::array<Matrix3, 3>;
using Tensor4 = std::array<Tensor3, 3>;

// Index convention: i is the vector-potential component (x, y, z), and the
// lower indices j, k, l, p label the direction cosines (alpha, beta, gamma).
// All indices are 0-based and no summation convention is implied anywhere.

struct QuadrupoleMoments {
  /// K = ( int z dy, int x dz, int y dx ).
  Vec3 K;
  /// Q[i][j][k], symmetric in (j,k). Off-diagonal entries are the
  /// coefficients of R_j R_k with j < k counted once.
  Tensor3 Q{};
  /// Q^i = -2 K^i, minus the trace of Q[i].
  Vec3 Q_trace;
};

struct OctopoleMoments {
  /// Curve-integrated O[i][j][k][l], totally symmetric in (j,k,l). Entries are
  /// the coefficients of the monomial R_j R_k R_l with each distinct monomial
  /// counted once.
  Tensor4 O{};
  /// O_contracted[i][p] = sum_m (1 + 2 delta_pm) O[i][p][m][m].
  Matrix3 O_contracted{};
};

struct MomentSet {
  QuadrupoleMoments quadrupole;
  OctopoleMoments octopole;
};

/// Quadrupole tensor entry from the three scalars K:
///   0 when i, j, k are all distinct, otherwise
///   delta_jk K^i (1 - delta_ij) - delta_ik K^j (1 - delta_ij)
///     - delta_ij K^k (1 - delta_ik).
inline double quadrupole_entry(const Vec3 &K, int i, int j, int k) {
  if (i != j && j != k && i != k)
    return 0.0;
  const auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  return d(j, k) * K[i] * (1.0 - d(i, j)) - d(i, k) * K[j] * (1.0 - d(i, j)) -
         d(i, j) * K[k] * (1.0 - d(i, k));
}

inline QuadrupoleMoments quadrupole_from_K(const Vec3 &K) {
  QuadrupoleMoments out;
  out.K = K;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        out.Q[i][j][k] = quadrupole_entry(K, i, j, k);
  for (int i = 0; i < 3; ++i)
    out.Q_trace[i] = -2.0 * K[i];
  return out;
}

inline QuadrupoleMoments quadrupole_moments(const KnotSpec &spec,
                                            int n_samples = kDefaultCurveSamples) {
  Vec3 K{};
  const double h = 2.0 * std::numbers::pi / n_samples;
  for (const auto &pt : sample_curve(spec, n_samples)) {
    const Vec3 &r = pt.position;
    const Vec3 &d = pt.derivative;
    K += Vec3{r.z * d.y, r.x * d.z, r.y * d.x};
  }
  return quadrupole_from_K(h * K);
}

/// Octopole integrand O^i_{jkl} at one curve point, for sorted j <= k <= l.
///
/// Five branches keyed on the coincidence pattern of (i; j, k, l). With sorted
/// lower indices the patterns partition as: all lower equal; all lower
/// distinct; i outside {j,k,l}; i equal to the singleton lower index; i equal
/// to the doubled lower index.
inline double octopole_integrand(int i, int j, int k, int l,
                                 const CurvePoint &pt) {
  const Vec3 &r = pt.position;
  const Vec3 &d = pt.derivative;
  const auto eps = levi_civita;
  const auto delta = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  if (j == k && k == l) {
    double s = 0.0;
    for (int m = 0; m < 3; ++m)
      s += eps(j, i, m) * r[j] * r[j] * d[m];
    return s;
  }
  if (j != k && k != l && j != l) {
    double s = 0.0;
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n)
        s += 2.0 * eps(i, m, n) * r[i] * r[m] * d[m];
    return s;
  }
  if (i != j && i != k && i != l) {
    return delta(j, k) * (eps(k, l, i) * r[k] * r[k] * d[k] -
                          2.0 * eps(i, k, l) * r[k] * r[l] * d[l]) +
           delta(k, l) * (2.0 * eps(i, j, l) * r[j] * r[l] * d[j] -
                          eps(j, k, i) * r[k] * r[k] * d[k]);
  }
  if ((i == j && k == l) || (i == l && j == k)) {
    double s = 0.0;
    for (int m = 0; m < 3; ++m)
      s += 2.0 * (delta(i, l) * eps(j, l, m) * r[j] * r[l] * d[m] -
                  delta(i, j) * eps(i, k, m) * r[i] * r[k] * d[m]);
    return s;
  }
  // i == k, with exactly one of j == k, k == l.
  double s = 0.0;
  for (int m = 0; m < 3; ++m)
    s += r[k] * r[k] *
         (delta(k, l) * eps(j, k, m) * d[m] - delta(j, k) * eps(j, l, m) * d[m]);
  return s;
}

/// The ten sorted lower-index triples j <= k <= l.
inline constexpr std::array<std::array<int, 3>, 10> kSortedTriples{{{0, 0, 0},
                                                                   {0, 0, 1},
                                                                   {0, 0, 2},
                                                                   {0, 1, 1},
                                                                   {0, 1, 2},
                                                                   {0, 2, 2},
                                                                   {1, 1, 1},
                                                                   {1, 1, 2},
                                                                   {1, 2, 2},
                                                                   {2, 2, 2}}};

/// The six sorted lower-index pairs j <= k.
inline constexpr std::array<std::array<int, 2>, 6> kSortedPairs{
    {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};

/// Fills the symmetric completion and the contraction from the independent
/// sorted entries already stored in `oct.O`.
inline void complete_octopole(OctopoleMoments &oct) {
  for (int i = 0; i < 3; ++i)
    for (const auto &t : kSortedTriples) {
      const double v = oct.O[i][t[0]][t[1]][t[2]];
      std::array<int, 3> perm = t;
      do {
        oct.O[i][perm[0]][perm[1]][perm[2]] = v;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  for (int i = 0; i < 3; ++i)
    for (int p = 0; p < 3; ++p) {
      double s = 0.0;
      for (int m = 0; m < 3; ++m)
        s += (1.0 + 2.0 * (p == m)) * oct.O[i][p][m][m];
      oct.O_contracted[i][p] = s;
    }
}

inline OctopoleMoments octopole_moments(const KnotSpec &spec,
                                        int n_samples = kDefaultCurveSamples) {
  OctopoleMoments out;
  const double h = 2.0 * std::numbers::pi / n_samples;
  for (const auto &pt : sample_curve(spec, n_samples))
    for (int i = 0; i < 3; ++i)
      for (const auto &t : kSortedTriples)
        out.O[i][t[0]][t[1]][t[2]] += octopole_integrand(i, t[0], t[1], t[2], pt);
  for (int i = 0; i < 3; ++i)
    for (const auto &t : kSortedTriples)
      out.O[i][t[0]][t[1]][t[2]] *= h;
  complete_octopole(out);
  return out;
}

/// Total dipole moment  oint dr/dtau dtau  (zero for any closed curve).
inline Vec3 dipole_moment(const KnotSpec &spec,
                          int n_samples = kDefaultCurveSamples) {
  Vec3 s{};
  for (const auto &pt : sample_curve(spec, n_samples))
    s += pt.derivative;
  return (2.0 * std::numbers::pi / n_samples) * s;
}

inline MomentSet compute_moments(const KnotSpec &spec,
                                 int n_samples = kDefaultCurveSamples) {
  return {quadrupole_moments(spec, n_samples), octopole_moments(spec, n_samples)};
}

/// Thread-safe memo of moment sets keyed by curve and sample count.
/// Sampled curves are keyed by identity of their shared point data; the cache
/// holds a copy of the spec so the identity stays valid.
class MomentCache {
public:
  std::shared_ptr<const MomentSet> get(const KnotSpec &spec,
                                       int n_samples = kDefaultCurveSamples) {
    const Key key = make_key(spec, n_samples);
    {
      std::shared_lock lock(mutex_);
      if (auto it = entries_.find(key); it != entries_.end())
        return it->second.moments;
    }
    auto moments =
        std::make_shared<const MomentSet>(compute_moments(spec, n_samples));
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.try_emplace(key, Entry{spec, moments});
    return it->second.moments;
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

private:
  using Key = std::tuple<std::string, const void *, int>;
  struct Entry {
    KnotSpec spec;
    std::shared_ptr<const MomentSet> moments;
  };

  static Key make_key(const KnotSpec &spec, int n) {
    const void *identity = nullptr;
    if (const auto *s = std::get_if<SampledCurve>(&spec.variant()))
      identity = s->points().data();
    return {spec.label(), identity, n};
  }

  mutable std::shared_mutex mutex_;
  std::map<Key, Entry> entries_;
};

} // namespace knotscatter
