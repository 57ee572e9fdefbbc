#pragma once

#include <vector>

#include "bhm/bicomplex.hpp"
#include "bhm/expr.hpp"

namespace bhm {

/// Dense complex polynomial, coefficients in ascending degree.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Complex> coeffs) : c_(std::move(coeffs)) {}

  static Polynomial constant(Complex c) { return Polynomial({c}); }
  static Polynomial monomial(Complex c, int degree);

  const std::vector<Complex>& coeffs() const { return c_; }
  Complex coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Complex{}; }
  /// Index of the highest stored coefficient, -1 for the empty polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  double max_abs_coeff() const;
  bool is_zero(double tol = kIdentityTol) const;

  /// Drops leading coefficients with |c| <= tol * max|c| (degree drop).
  Polynomial trimmed(double tol = kIdentityTol) const;

  Complex operator()(Complex x) const;
  Polynomial derivative() const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

 private:
  std::vector<Complex> c_;
};

/// Expands a variable-x0 expression into a polynomial. Throws NotPolynomial
/// for division by non-constants, negative powers of non-constants, or
/// variables other than x0.
Polynomial to_polynomial(const Expr& e);

struct PolyRoot {
  Complex value;
  int multiplicity = 1;
};

/// All roots of a nonzero polynomial (after trimming), clustered into
/// multiplicities. Companion-matrix eigenvalues followed by Newton polishing.
/// A nonzero constant has no roots; the zero polynomial throws
/// DegenerateAllComponents.
std::vector<PolyRoot> polynomial_roots(const Polynomial& p, double tol = kIdentityTol);

}  // namespace bhm
