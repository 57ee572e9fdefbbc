#include "bhm/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "bhm/error.hpp"

namespace bhm {

Polynomial Polynomial::monomial(Complex c, int degree) {
  std::vector<Complex> v(static_cast<std::size_t>(degree) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const Complex& c : c_) m = std::max(m, std::abs(c));
  return m;
}

bool Polynomial::is_zero(double tol) const {
  // Absolute test: coefficients are built from O(1) data in every caller.
  return max_abs_coeff() <= tol;
}

Polynomial Polynomial::trimmed(double tol) const {
  const double scale = max_abs_coeff();
  std::vector<Complex> v = c_;
  while (!v.empty() && std::abs(v.back()) <= tol * scale) v.pop_back();
  return Polynomial(std::move(v));
}

Complex Polynomial::operator()(Complex x) const {
  Complex r{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial();
  std::vector<Complex> v(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) v[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(v));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  std::vector<Complex> v(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(static_cast<int>(k)) - b.coeff(static_cast<int>(k));
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return Polynomial();
  std::vector<Complex> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t k = 0; k < b.c_.size(); ++k) v[i + k] += a.c_[i] * b.c_[k];
  return Polynomial(std::move(v));
}

Polynomial to_polynomial(const Expr& e) {
  using Op = Expr::Op;
  switch (e.op()) {
    case Op::Const:
      return Polynomial::constant(e.value());
    case Op::Var:
      if (e.var_index() != 0) fail(ErrorCode::NotPolynomial, "polynomial expected in x0 only");
      return Polynomial::monomial(1.0, 1);
    case Op::Add:
      return to_polynomial(e.arg(0)) + to_polynomial(e.arg(1));
    case Op::Sub:
      return to_polynomial(e.arg(0)) - to_polynomial(e.arg(1));
    case Op::Mul:
      return to_polynomial(e.arg(0)) * to_polynomial(e.arg(1));
    case Op::Div: {
      const Polynomial den = to_polynomial(e.arg(1)).trimmed(0.0);
      if (den.degree() != 0) fail(ErrorCode::NotPolynomial, "division by a non-constant");
      const Polynomial num = to_polynomial(e.arg(0));
      return num * Polynomial::constant(1.0 / den.coeff(0));
    }
    case Op::Pow: {
      if (e.exponent() < 0) fail(ErrorCode::NotPolynomial, "negative power of a non-constant");
      const Polynomial base = to_polynomial(e.arg(0));
      Polynomial r = Polynomial::constant(1.0);
      for (int k = 0; k < e.exponent(); ++k) r = r * base;
      return r;
    }
  }
  fail(ErrorCode::NotPolynomial, "unsupported node");
}

namespace {

Complex newton_polish(const Polynomial& p, const Polynomial& dp, Complex x) {
  double best = std::abs(p(x));
  for (int it = 0; it < 8 && best > 0.0; ++it) {
    const Complex d = dp(x);
    if (d == Complex(0.0)) break;
    const Complex next = x - p(x) / d;
    const double r = std::abs(p(next));
    if (!(r < best)) break;
    x = next;
    best = r;
  }
  return x;
}

}  // namespace

std::vector<PolyRoot> polynomial_roots(const Polynomial& input, double tol) {
  const Polynomial p = input.trimmed(tol);
  if (p.degree() < 0 || input.is_zero(tol))
    fail(ErrorCode::DegenerateAllComponents, "polynomial vanishes identically");
  const int n = p.degree();
  if (n == 0) return {};

  std::vector<Complex> raw;
  if (n == 1) {
    raw.push_back(-p.coeff(0) / p.coeff(1));
  } else {
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    const Complex lead = p.coeff(n);
    for (int k = 0; k < n; ++k) companion(0, k) = -p.coeff(n - 1 - k) / lead;
    for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) fail(ErrorCode::InvalidInput, "eigenvalue iteration did not converge");
    const Polynomial dp = p.derivative();
    for (int k = 0; k < n; ++k) raw.push_back(newton_polish(p, dp, solver.eigenvalues()(k)));
  }

  // Repeated roots come back as a cluster spread by ~eps^(1/m); merge
  // clusters and replace them by their centroid.
  constexpr double kClusterRadius = 1e-5;
  std::vector<PolyRoot> out;
  std::vector<bool> used(raw.size(), false);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    Complex sum = raw[i];
    int count = 1;
    for (std::size_t k = i + 1; k < raw.size(); ++k) {
      if (!used[k] && std::abs(raw[k] - raw[i]) <= kClusterRadius * std::max(1.0, std::abs(raw[i]))) {
        used[k] = true;
        sum += raw[k];
        ++count;
      }
    }
    out.push_back({sum / static_cast<double>(count), count});
  }
  return out;
}

}  // namespace bhm
