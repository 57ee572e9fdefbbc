#include "bhm/holo_fn.hpp"

#include <algorithm>
#include <array>

namespace bhm {

HoloFn HoloFn::constant(const Bicomplex& c) {
  const RinglebPair r = ringleb_decompose(c);
  return {Expr::constant(r.e_part), Expr::constant(r.f_part)};
}

Bicomplex HoloFn::operator()(const Bicomplex& q, double tol) const {
  const RinglebPair r = ringleb_decompose(q);
  return ringleb_recompose({f1_.eval(r.e_part, tol), f2_.eval(r.f_part, tol)});
}

HoloFn HoloFn::compose(const HoloFn& inner) const {
  const std::array<Expr, 1> e{inner.f1()};
  const std::array<Expr, 1> f{inner.f2()};
  return {f1_.substitute(e), f2_.substitute(f)};
}

std::pair<Expr, Expr> HoloFn::i2_components() const {
  const Expr q1 = Expr::variable(0);
  const Expr q2 = Expr::variable(1);
  const Expr i = Expr::constant(Complex(0, 1));
  const std::array<Expr, 1> z{q1 + i * q2};
  const std::array<Expr, 1> w{q1 - i * q2};
  const Expr a = f1_.substitute(z);
  const Expr b = f2_.substitute(w);
  const Expr half = Expr::constant(0.5);
  return {half * (a + b), Expr::constant(Complex(0, 0.5)) * (b - a)};
}

double cr_residual(const Expr& psi1, const Expr& psi2, const Bicomplex& q) {
  const std::array<Complex, 2> at{q.q1, q.q2};
  const Complex d11 = psi1.derivative(0).eval(at);
  const Complex d12 = psi1.derivative(1).eval(at);
  const Complex d21 = psi2.derivative(0).eval(at);
  const Complex d22 = psi2.derivative(1).eval(at);
  return std::max(std::abs(d11 - d22), std::abs(d12 + d21));
}

}  // namespace bhm
