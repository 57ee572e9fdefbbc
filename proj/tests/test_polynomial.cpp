#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "bhm/error.hpp"
#include "bhm/polynomial.hpp"
#include "oracles.hpp"

using namespace bhm;
using oracle::C;

namespace {

/// Greedy matching distance between two root multisets.
double match(std::vector<C> a, std::vector<C> b) {
  double worst = 0.0;
  for (const C& r : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](C u, C v) { return std::abs(u - r) < std::abs(v - r); });
    worst = std::max(worst, std::abs(*it - r));
    b.erase(it);
  }
  return worst;
}

std::vector<C> expand(const std::vector<PolyRoot>& roots) {
  std::vector<C> v;
  for (const auto& r : roots)
    for (int m = 0; m < r.multiplicity; ++m) v.push_back(r.value);
  return v;
}

}  // namespace

TEST_CASE("roots agree with durand-kerner") {
  oracle::Rng rng(31);
  for (int n = 0; n < 200; ++n) {
    const int deg = rng.integer(1, 8);
    std::vector<C> c(deg + 1);
    for (auto& x : c) x = rng.complex();
    const auto roots = polynomial_roots(Polynomial(c));
    const auto ref = oracle::durand_kerner(c);
    REQUIRE(expand(roots).size() == ref.size());
    CHECK(match(expand(roots), ref) < 1e-8);
    for (const auto& r : roots) CHECK(std::abs(Polynomial(c)(r.value)) < 1e-9 * std::max(1.0, std::pow(std::abs(r.value), deg)));
  }
}

TEST_CASE("repeated roots are clustered") {
  // (x - 1)^2 (x + 2i)
  const Polynomial p = Polynomial({-1.0, 1.0}) * Polynomial({-1.0, 1.0}) * Polynomial({C(0, 2), 1.0});
  const auto roots = polynomial_roots(p);
  REQUIRE(roots.size() == 2);
  int total = 0;
  for (const auto& r : roots) {
    total += r.multiplicity;
    if (r.multiplicity == 2) CHECK(std::abs(r.value - 1.0) < 1e-7);
    else CHECK(std::abs(r.value - C(0, -2)) < 1e-10);
  }
  CHECK(total == 3);
}

TEST_CASE("degenerate polynomials") {
  CHECK(polynomial_roots(Polynomial::constant(2.0)).empty());
  CHECK_THROWS_AS(polynomial_roots(Polynomial({0.0, 0.0})), Error);
  ErrorCode code = ErrorCode::Ok;
  try {
    polynomial_roots(Polynomial());
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::DegenerateAllComponents);
  // Leading coefficient below threshold drops the degree.
  const auto r = polynomial_roots(Polynomial({2.0, 1.0, 1e-20}));
  REQUIRE(r.size() == 1);
  CHECK(std::abs(r[0].value + 2.0) < 1e-12);
}

TEST_CASE("expansion of expressions") {
  const Expr x = Expr::variable(0);
  const Expr e = Expr::power(x + Expr::constant(1.0), 3) - Expr::constant(C(0, 1)) * x / Expr::constant(2.0);
  const Polynomial p = to_polynomial(e);
  CHECK(p.degree() == 3);
  CHECK(std::abs(p.coeff(0) - 1.0) < 1e-15);
  CHECK(std::abs(p.coeff(1) - C(3.0, -0.5)) < 1e-15);
  CHECK(std::abs(p.coeff(2) - 3.0) < 1e-15);
  CHECK(std::abs(p.coeff(3) - 1.0) < 1e-15);
  CHECK_THROWS_AS(to_polynomial(Expr::constant(1.0) / x), Error);
  CHECK_THROWS_AS(to_polynomial(Expr::power(x, -2)), Error);
  CHECK_THROWS_AS(to_polynomial(Expr::variable(1)), Error);
  // Division by a constant expression is fine.
  CHECK(to_polynomial(x / (Expr::constant(1.0) + Expr::constant(1.0))).coeff(1) == C(0.5));
}

TEST_CASE("arithmetic") {
  const Polynomial a({1.0, 2.0}), b({C(0, 1), 0.0, 1.0});
  const C t(0.4, -1.1);
  CHECK(std::abs((a * b)(t) - a(t) * b(t)) < 1e-14);
  CHECK(std::abs((a + b)(t) - (a(t) + b(t))) < 1e-14);
  CHECK(std::abs((a - b)(t) - (a(t) - b(t))) < 1e-14);
  CHECK(std::abs(b.derivative()(t) - 2.0 * t) < 1e-14);
}
