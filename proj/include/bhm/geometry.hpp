#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <variant>

#include "bhm/bicomplex.hpp"
#include "bhm/holo_fn.hpp"

namespace bhm {

// ---------------------------------------------------------------------------
// Vectors

/// Complex 3-vector with the complex-bilinear (not Hermitian) inner product.
struct CVec3 {
  std::array<Complex, 3> c{};

  Complex& operator[](std::size_t i) { return c[i]; }
  const Complex& operator[](std::size_t i) const { return c[i]; }

  friend CVec3 operator+(const CVec3& a, const CVec3& b) { return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}; }
  friend CVec3 operator-(const CVec3& a, const CVec3& b) { return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}; }
  friend CVec3 operator-(const CVec3& a) { return {{-a[0], -a[1], -a[2]}}; }
  friend CVec3 operator*(Complex s, const CVec3& a) { return {{s * a[0], s * a[1], s * a[2]}}; }
  friend CVec3 operator/(const CVec3& a, Complex s) { return {{a[0] / s, a[1] / s, a[2] / s}}; }
  friend bool operator==(const CVec3&, const CVec3&) = default;
};

inline Complex dot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Complex square(const CVec3& a) { return dot(a, a); }
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return {{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]}};
}
/// Hermitian length sqrt(sum |ck|^2).
double norm(const CVec3& a);
/// Largest component modulus.
double max_abs(const CVec3& a);

/// Bicomplex 3-vector.
struct BVec3 {
  std::array<Bicomplex, 3> c{};

  Bicomplex& operator[](std::size_t i) { return c[i]; }
  const Bicomplex& operator[](std::size_t i) const { return c[i]; }

  /// u + v i2 from two complex vectors.
  static BVec3 from_parts(const CVec3& u, const CVec3& v) {
    return {{Bicomplex(u[0], v[0]), Bicomplex(u[1], v[1]), Bicomplex(u[2], v[2])}};
  }
  /// Embeds z in C^3 as z + 0 i2.
  static BVec3 embed(const CVec3& z) { return from_parts(z, CVec3{}); }
  CVec3 u() const { return {{c[0].q1, c[1].q1, c[2].q1}}; }
  CVec3 v() const { return {{c[0].q2, c[1].q2, c[2].q2}}; }
  /// Ringleb coordinate vectors Z (coefficient of a) and W (coefficient of b).
  CVec3 ringleb_e() const;
  CVec3 ringleb_f() const;
  static BVec3 from_ringleb(const CVec3& e, const CVec3& f);

  friend BVec3 operator+(const BVec3& a, const BVec3& b) { return {{a[0] + b[0], a[1] + b[1], a[2] + b[2]}}; }
  friend BVec3 operator-(const BVec3& a, const BVec3& b) { return {{a[0] - b[0], a[1] - b[1], a[2] - b[2]}}; }
  friend BVec3 operator*(const Bicomplex& s, const BVec3& a) { return {{s * a[0], s * a[1], s * a[2]}}; }
  friend bool operator==(const BVec3&, const BVec3&) = default;
};

/// <p, q>_B = sum pk qk.
inline Bicomplex inner_B(const BVec3& p, const BVec3& q) { return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]; }
inline Bicomplex square_B(const BVec3& q) { return inner_B(q, q); }
inline BVec3 star(const BVec3& q) { return {{conj_star(q[0]), conj_star(q[1]), conj_star(q[2])}}; }
/// CN(xi) = xi xi* = sum CN(xi_k) = u^2 + v^2.
inline Complex complex_norm_vec(const BVec3& q) {
  return complex_norm(q[0]) + complex_norm(q[1]) + complex_norm(q[2]);
}
BVec3 cross_B(const BVec3& p, const BVec3& q);
double real_norm(const BVec3& q);

// ---------------------------------------------------------------------------
// Model spaces

enum class Space { S2C, Q1B, Q2C };
enum class ChartId { G, Gcheck, L, K };

std::string_view chart_name(ChartId c);
/// Parses "G", "Gcheck", "L", "K"; throws InvalidInput otherwise.
ChartId parse_chart(std::string_view name);
std::string_view space_name(Space s);
Space parse_space(std::string_view name);

/// Point of the complexified 2-sphere z1^2 + z2^2 + z3^2 = 1.
struct S2CPoint {
  CVec3 z;
};

/// Point of the bicomplex quadric Q1_B: a null bicomplex 3-vector outside the
/// fattened origin, up to bicomplex units. Stored normalized: each Ringleb
/// coordinate vector has its largest component equal to 1.
class QuadricPointB {
 public:
  /// Validates xi^2 = 0 and xi not in N; throws InvalidInput otherwise.
  static QuadricPointB from(const BVec3& xi, double tol = 1e-9);
  const BVec3& xi() const { return xi_; }

 private:
  BVec3 xi_;
};

/// Point of the complex quadric zeta0^2 = zeta1^2 + zeta2^2 + zeta3^2 in CP^3,
/// stored with its largest coordinate scaled to 1.
class QuadricPointC {
 public:
  static QuadricPointC from(const std::array<Complex, 4>& zeta, double tol = 1e-9);
  const std::array<Complex, 4>& zeta() const { return zeta_; }
  Complex operator[](std::size_t i) const { return zeta_[i]; }

 private:
  std::array<Complex, 4> zeta_{};
};

/// Point of CP^2, stored normalized.
class CP2Point {
 public:
  static CP2Point from(const CVec3& v);
  const CVec3& coords() const { return v_; }

 private:
  CVec3 v_;
};

using ModelPoint = std::variant<S2CPoint, QuadricPointB, QuadricPointC>;

/// Projective equality. Q1_B compares Ringleb coordinate vectors, each up to a
/// nonzero complex factor; Q2_C and CP^2 compare all 2x2 minors.
bool same_point(const QuadricPointB& a, const QuadricPointB& b, double tol = 1e-8);
bool same_point(const QuadricPointC& a, const QuadricPointC& b, double tol = 1e-8);
bool same_point(const CP2Point& a, const CP2Point& b, double tol = 1e-8);
bool same_point(const S2CPoint& a, const S2CPoint& b, double tol = 1e-8);
/// Complex proportionality of two vectors of equal length via 2x2 minors.
bool proportional(std::span<const Complex> a, std::span<const Complex> b, double tol);

// ---------------------------------------------------------------------------
// Charts. Every chart takes a bicomplex value; S2C charts need
// CN(value) != -1, Q1B and Q2C charts are total.

S2CPoint s2c_chart(ChartId c, const Bicomplex& value);
QuadricPointB q1b_chart(ChartId c, const Bicomplex& value);
QuadricPointC q2c_chart(ChartId c, const Bicomplex& value);
ModelPoint chart_to_point(Space s, ChartId c, const Bicomplex& value);

/// Chart inverses; OutOfDomain off the chart's image.
Bicomplex s2c_chart_inverse(ChartId c, const S2CPoint& p);
Bicomplex q1b_chart_inverse(ChartId c, const QuadricPointB& p);
/// The second fraction form of the Q1B inverse (e.g. (xi2 + xi3 i2)/xi1 for
/// chart G); agrees with q1b_chart_inverse where both are defined.
Bicomplex q1b_chart_inverse_alt(ChartId c, const QuadricPointB& p);
Bicomplex q2c_chart_inverse(ChartId c, const QuadricPointC& p);
Bicomplex point_to_chart(ChartId c, const ModelPoint& p);

/// Transition value_from -> value_to as a rational HoloFn; compositions pass
/// through the standard chart G.
HoloFn transition_fn(ChartId from, ChartId to);
/// Evaluates the transition; OutOfDomain when a denominator is not a unit.
Bicomplex transition(ChartId from, ChartId to, const Bicomplex& value);

/// |CN(xi1)^2 - CN(xi2 - xi3 i2) CN(xi2 + xi3 i2)|.
double fundamental_identity_check(const BVec3& xi);

QuadricPointC s2c_to_q2c(const S2CPoint& p);
/// u x v / u^2 for xi = u + v i2; DegenerateDirection when CN(xi) ~ 0.
S2CPoint q1b_star_to_s2c(const QuadricPointB& p, double tol = 1e-10);
/// Null complex vector xi_C with xi = lambda xi_C for a null direction
/// (CN(xi) = 0); InvalidInput otherwise.
CVec3 complex_representative(const BVec3& xi, double tol = 1e-9);
/// True when CN(xi) is negligible relative to |xi|^2.
bool is_null_direction(const QuadricPointB& p, double tol = 1e-10);

/// phi[xi] = [CN(xi), (xi x xi*) i2], or [0, xi_C] for null directions.
QuadricPointC phi_compactify(const QuadricPointB& p, double tol = 1e-10);
/// Inverse of phi, evaluated in the best-conditioned of the charts G, Gcheck, L, K.
QuadricPointB psi_decompactify(const QuadricPointC& p);
/// The chart whose denominator zeta0 + zeta1, zeta0 - zeta1, zeta0 + zeta2,
/// zeta0 + zeta3 has the largest modulus.
ChartId best_q2c_chart(const QuadricPointC& p);

/// [zeta1, zeta2, zeta3]; InvalidInput if all three vanish.
CP2Point forget_orientation(const QuadricPointC& p);
CP2Point forget_orientation(const QuadricPointB& p);

}  // namespace bhm
