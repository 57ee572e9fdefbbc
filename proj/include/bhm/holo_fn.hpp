#pragma once

#include <utility>

#include "bhm/bicomplex.hpp"
#include "bhm/expr.hpp"

namespace bhm {

/// Bicomplex-holomorphic function of one bicomplex variable, stored in
/// Ringleb form: psi(z a + w b) = f1(z) a + f2(w) b with f1, f2 holomorphic
/// single-variable expressions in x0.
class HoloFn {
 public:
  HoloFn() = default;  // the zero function
  HoloFn(Expr f1, Expr f2) : f1_(std::move(f1)), f2_(std::move(f2)) {}

  /// Extension of a holomorphic f : C -> C, i.e. f1 = f2 = f.
  static HoloFn extension(const Expr& f) { return {f, f}; }
  static HoloFn identity() { return extension(Expr::variable(0)); }
  static HoloFn constant(const Bicomplex& c);

  const Expr& f1() const { return f1_; }
  const Expr& f2() const { return f2_; }

  /// Throws PoleEncountered when either component hits a pole.
  Bicomplex operator()(const Bicomplex& q, double tol = kIdentityTol) const;

  /// The bicomplex derivative, (f1', f2') in Ringleb form.
  HoloFn derivative() const { return {f1_.derivative(0), f2_.derivative(0)}; }

  /// (*this) o inner, by substitution in each idempotent component.
  HoloFn compose(const HoloFn& inner) const;

  /// The i2-decomposition psi = psi1(q1, q2) + psi2(q1, q2) i2 as two-variable
  /// expressions in x0 = q1, x1 = q2.
  std::pair<Expr, Expr> i2_components() const;

  bool has_variables() const { return f1_.has_variables() || f2_.has_variables(); }

  friend HoloFn operator+(const HoloFn& a, const HoloFn& b) { return {a.f1_ + b.f1_, a.f2_ + b.f2_}; }
  friend HoloFn operator-(const HoloFn& a, const HoloFn& b) { return {a.f1_ - b.f1_, a.f2_ - b.f2_}; }
  friend HoloFn operator*(const HoloFn& a, const HoloFn& b) { return {a.f1_ * b.f1_, a.f2_ * b.f2_}; }
  friend HoloFn operator/(const HoloFn& a, const HoloFn& b) { return {a.f1_ / b.f1_, a.f2_ / b.f2_}; }
  friend HoloFn operator-(const HoloFn& a) { return {-a.f1_, -a.f2_}; }
  friend HoloFn operator*(const Bicomplex& c, const HoloFn& a) { return constant(c) * a; }

 private:
  Expr f1_;
  Expr f2_;
};

inline HoloFn pow(const HoloFn& a, int n) {
  return {Expr::power(a.f1(), n), Expr::power(a.f2(), n)};
}

/// Residual of the bicomplex Cauchy-Riemann equations
///   d psi1/d q1 = d psi2/d q2,   d psi1/d q2 = -d psi2/d q1
/// for a pair of two-variable expressions at q; the larger of the two
/// equation magnitudes.
double cr_residual(const Expr& psi1, const Expr& psi2, const Bicomplex& q);

inline double cr_residual(const HoloFn& psi, const Bicomplex& q) {
  const auto [p1, p2] = psi.i2_components();
  return cr_residual(p1, p2, q);
}

}  // namespace bhm
