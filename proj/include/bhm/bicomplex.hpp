#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <iosfwd>

namespace bhm {

// Complex numbers are C[i1] throughout; the imaginary unit of std::complex is i1.
using Complex = std::complex<double>;

inline constexpr double kIdentityTol = 1e-12;

// Scale-invariant zero test used for units, poles and chart denominators:
// |value| <= tol * max(1, scale).
inline bool negligible(double magnitude, double scale, double tol = kIdentityTol) {
  return magnitude <= tol * std::max(1.0, scale);
}

/// Hyperbolic (split-complex) number x + y j with j^2 = 1.
struct Hyperbolic {
  double x = 0.0;
  double y = 0.0;

  constexpr Hyperbolic() = default;
  constexpr Hyperbolic(double x_, double y_ = 0.0) : x(x_), y(y_) {}

  friend constexpr Hyperbolic operator+(Hyperbolic a, Hyperbolic b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Hyperbolic operator-(Hyperbolic a, Hyperbolic b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Hyperbolic operator-(Hyperbolic a) { return {-a.x, -a.y}; }
  friend constexpr Hyperbolic operator*(Hyperbolic a, Hyperbolic b) {
    return {a.x * b.x + a.y * b.y, a.x * b.y + a.y * b.x};
  }
  friend constexpr bool operator==(Hyperbolic a, Hyperbolic b) = default;
};

/// Bicomplex number q1 + q2 i2 with q1, q2 in C[i1]. The product i1 i2 is j.
struct Bicomplex {
  Complex q1{};
  Complex q2{};

  Bicomplex() = default;
  Bicomplex(double r) : q1(r) {}  // NOLINT: reals embed implicitly
  Bicomplex(Complex a, Complex b) : q1(a), q2(b) {}

  /// From real coordinates in the basis (1, i1, i2, j).
  static Bicomplex from_real4(double x1, double x2, double x3, double x4) {
    return {Complex(x1, x2), Complex(x3, x4)};
  }
  std::array<double, 4> real4() const { return {q1.real(), q1.imag(), q2.real(), q2.imag()}; }

  static Bicomplex i1() { return {Complex(0, 1), 0.0}; }
  static Bicomplex i2() { return {0.0, 1.0}; }
  static Bicomplex j() { return {0.0, Complex(0, 1)}; }

  Bicomplex& operator+=(const Bicomplex& o) { q1 += o.q1; q2 += o.q2; return *this; }
  Bicomplex& operator-=(const Bicomplex& o) { q1 -= o.q1; q2 -= o.q2; return *this; }
  Bicomplex& operator*=(const Bicomplex& o) {
    const Complex a = q1 * o.q1 - q2 * o.q2;
    q2 = q1 * o.q2 + q2 * o.q1;
    q1 = a;
    return *this;
  }

  friend Bicomplex operator+(Bicomplex a, const Bicomplex& b) { return a += b; }
  friend Bicomplex operator-(Bicomplex a, const Bicomplex& b) { return a -= b; }
  friend Bicomplex operator*(Bicomplex a, const Bicomplex& b) { return a *= b; }
  friend Bicomplex operator-(const Bicomplex& a) { return {-a.q1, -a.q2}; }
  friend Bicomplex operator*(Complex s, const Bicomplex& a) { return {s * a.q1, s * a.q2}; }
  friend Bicomplex operator*(const Bicomplex& a, Complex s) { return {s * a.q1, s * a.q2}; }
  friend Bicomplex operator*(double s, const Bicomplex& a) { return {s * a.q1, s * a.q2}; }
  friend Bicomplex operator*(const Bicomplex& a, double s) { return {s * a.q1, s * a.q2}; }
  friend bool operator==(const Bicomplex& a, const Bicomplex& b) = default;

  /// Division; throws ZeroDivisor when the divisor is not a unit.
  friend Bicomplex operator/(const Bicomplex& a, const Bicomplex& b);
};

/// q* = q1 - q2 i2.
inline Bicomplex conj_star(const Bicomplex& q) { return {q.q1, -q.q2}; }

/// CN(q) = q1^2 + q2^2 = q q*.
inline Complex complex_norm(const Bicomplex& q) { return q.q1 * q.q1 + q.q2 * q.q2; }

/// sqrt(|q1|^2 + |q2|^2), the Euclidean norm on R^4.
inline double real_norm(const Bicomplex& q) { return std::sqrt(std::norm(q.q1) + std::norm(q.q2)); }

/// True when |CN(q)| <= tol * max(1, |q|^2), i.e. q is treated as a zero divisor.
bool is_zero_divisor(const Bicomplex& q, double tol = kIdentityTol);

/// q^-1 = q* / CN(q); throws ZeroDivisor outside the unit group.
Bicomplex inverse(const Bicomplex& q, double tol = kIdentityTol);

/// Coefficients of q = z a + w b over the idempotents a = (1-j)/2, b = (1+j)/2.
struct RinglebPair {
  Complex e_part{};  // z, coefficient of a
  Complex f_part{};  // w, coefficient of b
  friend bool operator==(const RinglebPair&, const RinglebPair&) = default;
};

inline RinglebPair ringleb_decompose(const Bicomplex& q) {
  const Complex i(0, 1);
  return {q.q1 + i * q.q2, q.q1 - i * q.q2};
}

inline Bicomplex ringleb_recompose(const RinglebPair& v) {
  const Complex i(0, 1);
  return {0.5 * (v.e_part + v.f_part), 0.5 * i * (v.f_part - v.e_part)};
}

/// a = (1-j)/2 and b = (1+j)/2.
inline Bicomplex idempotent_a() { return {0.5, Complex(0, -0.5)}; }
inline Bicomplex idempotent_b() { return {0.5, Complex(0, 0.5)}; }

/// x + y i  ->  x + y i2 (default embedding of C).
inline Bicomplex embed_complex(Complex z) { return {z.real(), z.imag()}; }
/// x + y i  ->  x + y i1.
inline Bicomplex embed_complex_i1(Complex z) { return {z, 0.0}; }
/// x + y j  ->  x + (y i1) i2.
inline Bicomplex embed_hyperbolic(Hyperbolic h) { return {h.x, Complex(0, h.y)}; }

std::ostream& operator<<(std::ostream& os, const Bicomplex& q);
std::ostream& operator<<(std::ostream& os, const Hyperbolic& h);

}  // namespace bhm
