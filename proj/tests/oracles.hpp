#pragma once
// Independent reference computations for the tests. Nothing here calls into
// the library's arithmetic: bicomplex numbers are modelled as 2x2 complex
// matrices [[q1, -q2], [q2, q1]] and as real 4-vectors with an explicit
// basis multiplication table.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "bhm/bicomplex.hpp"
#include "bhm/geometry.hpp"

namespace oracle {

using C = std::complex<double>;
using R4 = std::array<double, 4>;
using bhm::Bicomplex;

// Basis (1, i1, i2, j): e_a e_b = sign[a][b] e_{idx[a][b]}.
inline R4 mul4(const R4& a, const R4& b) {
  static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
  R4 r{};
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) r[idx[x][y]] += sgn[x][y] * a[x] * b[y];
  return r;
}

inline R4 r4(const Bicomplex& q) { return {q.q1.real(), q.q1.imag(), q.q2.real(), q.q2.imag()}; }
inline Bicomplex b4(const R4& r) { return {C(r[0], r[1]), C(r[2], r[3])}; }

inline Bicomplex mul(const Bicomplex& a, const Bicomplex& b) { return b4(mul4(r4(a), r4(b))); }
inline Bicomplex add(const Bicomplex& a, const Bicomplex& b) { return {a.q1 + b.q1, a.q2 + b.q2}; }
inline Bicomplex sub(const Bicomplex& a, const Bicomplex& b) { return {a.q1 - b.q1, a.q2 - b.q2}; }
inline Bicomplex scale(C s, const Bicomplex& a) { return {s * a.q1, s * a.q2}; }

/// Inverse through the 2x2 complex matrix [[q1, -q2], [q2, q1]].
inline Bicomplex inv(const Bicomplex& q) {
  const C det = q.q1 * q.q1 + q.q2 * q.q2;
  return {q.q1 / det, -q.q2 / det};
}
inline Bicomplex div(const Bicomplex& a, const Bicomplex& b) { return mul(a, inv(b)); }

inline double dist(const Bicomplex& a, const Bicomplex& b) {
  return std::sqrt(std::norm(a.q1 - b.q1) + std::norm(a.q2 - b.q2));
}
inline double mag(const Bicomplex& a) { return std::sqrt(std::norm(a.q1) + std::norm(a.q2)); }

inline const Bicomplex kOne{1.0, 0.0};
inline const Bicomplex kI1{C(0, 1), 0.0};
inline const Bicomplex kI2{0.0, 1.0};
inline const Bicomplex kJ{0.0, C(0, 1)};
/// Idempotents computed from their definition (1 -+ j)/2.
inline Bicomplex idem_a() { return scale(0.5, sub(kOne, kJ)); }
inline Bicomplex idem_b() { return scale(0.5, add(kOne, kJ)); }

/// Durand-Kerner iteration for all roots of sum c_k x^k (ascending order).
inline std::vector<C> durand_kerner(std::vector<C> c) {
  while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  const std::size_t n = c.size() - 1;
  std::vector<C> r(n);
  if (n == 0) return r;
  const C lead = c.back();
  for (auto& x : c) x /= lead;
  auto p = [&](C x) {
    C s = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) s = s * x + c[k];
    return s;
  };
  for (std::size_t k = 0; k < n; ++k) r[k] = std::pow(C(0.4, 0.9), static_cast<double>(k));
  for (int it = 0; it < 2000; ++it) {
    double change = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      C den = 1.0;
      for (std::size_t m = 0; m < n; ++m)
        if (m != k) den *= r[k] - r[m];
      const C d = p(r[k]) / den;
      r[k] -= d;
      change = std::max(change, std::abs(d));
    }
    if (change < 1e-15) break;
  }
  return r;
}

/// Closed-form radial solutions q = (-z1 + eps sqrt(z^2)) / (z2 - z3 i2),
/// eps in {1, -1, j, -j}.
inline std::array<Bicomplex, 4> radial_roots(const bhm::CVec3& z) {
  const C s = std::sqrt(z[0] * z[0] + z[1] * z[1] + z[2] * z[2]);
  const Bicomplex den{z[1], -z[2]};
  const Bicomplex eps[4] = {kOne, scale(-1.0, kOne), kJ, scale(-1.0, kJ)};
  std::array<Bicomplex, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = div(add(Bicomplex(-z[0], 0.0), mul(eps[k], Bicomplex(s, 0.0))), den);
  return out;
}

/// Deterministic random source for tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  double normal() { return std::normal_distribution<double>()(g_); }
  C complex(double r = 1.0) { return {r * normal(), r * normal()}; }
  Bicomplex bicomplex(double r = 1.0) { return {complex(r), complex(r)}; }
  bhm::CVec3 cvec3(double r = 1.0) { return {{complex(r), complex(r), complex(r)}}; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }
  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

}  // namespace oracle
