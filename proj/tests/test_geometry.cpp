#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bhm/error.hpp"
#include "bhm/geometry.hpp"
#include "oracles.hpp"

using namespace bhm;
using oracle::C;

namespace {

const Bicomplex one = 1.0, i1 = Bicomplex::i1(), i2 = Bicomplex::i2(), j = Bicomplex::j();
const ChartId kCharts[4] = {ChartId::G, ChartId::Gcheck, ChartId::L, ChartId::K};

double cdist(const CVec3& a, const CVec3& b) { return norm(a - b); }

// ---- oracles from the defining formulas ---------------------------------

/// Value of the standard chart G corresponding to value v of chart c, by
/// inverting the transition formulas Gcheck = 1/G, L = (G - 1) i2/(G + 1),
/// K = (G - i2)/(G + i2).
Bicomplex to_standard(ChartId c, const Bicomplex& v) {
  using namespace oracle;
  switch (c) {
    case ChartId::G: return v;
    case ChartId::Gcheck: return inv(v);
    case ChartId::L: return div(add(kI2, v), sub(kI2, v));
    case ChartId::K: return div(mul(kI2, add(kOne, v)), sub(kOne, v));
  }
  return v;
}

/// Complexified stereographic projection (1 - CN(G), 2 G1, 2 G2)/(1 + CN(G)).
CVec3 stereo(const Bicomplex& g) {
  const C cn = g.q1 * g.q1 + g.q2 * g.q2;
  return CVec3{{(1.0 - cn), 2.0 * g.q1, 2.0 * g.q2}} / (1.0 + cn);
}

/// [ -2G, 1 - G^2, (1 + G^2) i2 ] by oracle arithmetic.
BVec3 q1b_standard(const Bicomplex& g) {
  using namespace oracle;
  const Bicomplex g2 = mul(g, g);
  return {{scale(-2.0, g), sub(kOne, g2), mul(add(kOne, g2), kI2)}};
}

/// [1 + CN(G), 1 - CN(G), 2 G1, 2 G2].
std::array<C, 4> q2c_standard(const Bicomplex& g) {
  const C cn = g.q1 * g.q1 + g.q2 * g.q2;
  return {1.0 + cn, 1.0 - cn, 2.0 * g.q1, 2.0 * g.q2};
}

/// Random point of Q2_C; at_infinity forces zeta0 = 0.
std::array<C, 4> random_q2c(oracle::Rng& rng, bool at_infinity) {
  std::array<C, 4> z{rng.complex(), rng.complex(), rng.complex(), rng.complex()};
  if (at_infinity) {
    z[0] = 0.0;
    z[3] = C(0, 1) * std::sqrt(z[1] * z[1] + z[2] * z[2]);
  } else {
    z[0] = std::sqrt(z[1] * z[1] + z[2] * z[2] + z[3] * z[3]);
  }
  return z;
}

/// Standard-chart value with CN(G) = -1 (a null direction of Q1_B).
Bicomplex null_value(oracle::Rng& rng) {
  const C g1 = rng.complex();
  return {g1, std::sqrt(-1.0 - g1 * g1)};
}

}  // namespace

TEST_CASE("vector algebra examples") {
  const BVec3 xi{{0.0, 1.0, i2}};
  CHECK(square_B(xi) == Bicomplex());
  CHECK(complex_norm_vec(xi) == C(2.0));
  const BVec3 e1{{1.0, 0.0, 0.0}};
  CHECK(square_B(e1) == Bicomplex(1.0));
  CHECK(complex_norm_vec(e1) == C(1.0));
  const BVec3 n{{0.0, one + j, (one + j) * i2}};
  CHECK(complex_norm_vec(n) == C(0.0));
  // CN(xi) = u^2 + v^2 and CN(lambda xi) = CN(lambda) CN(xi).
  oracle::Rng rng(41);
  for (int k = 0; k < 100; ++k) {
    const BVec3 p = BVec3::from_parts(rng.cvec3(), rng.cvec3());
    const Bicomplex lam = rng.bicomplex();
    CHECK(std::abs(complex_norm_vec(p) - (square(p.u()) + square(p.v()))) < 1e-12 * 10);
    CHECK(std::abs(complex_norm_vec(lam * p) - complex_norm(lam) * complex_norm_vec(p)) < 1e-11 * 10);
    const CVec3 u = rng.cvec3(), v = rng.cvec3();
    CHECK(std::abs(dot(cross(u, v), u)) < 1e-13 * 10);
    const BVec3 q = BVec3::from_parts(rng.cvec3(), rng.cvec3());
    CHECK(oracle::dist(inner_B(p, q), inner_B(q, p)) < 1e-14);
  }
}

TEST_CASE("chart formulas") {
  const auto s = std::get<S2CPoint>(chart_to_point(Space::S2C, ChartId::G, 0.0));
  CHECK(cdist(s.z, CVec3{{1.0, 0.0, 0.0}}) < 1e-15);
  const auto c = std::get<QuadricPointC>(chart_to_point(Space::Q2C, ChartId::G, i1));
  CHECK(same_point(c, QuadricPointC::from({0.0, 1.0, C(0, 1), 0.0})));
  const auto b = std::get<QuadricPointB>(chart_to_point(Space::Q1B, ChartId::G, 1.0));
  CHECK(same_point(b, QuadricPointB::from({{1.0, 0.0, -i2}})));
  CHECK(same_point(b, QuadricPointB::from({{-2.0, 0.0, 2.0 * i2}})));
}

TEST_CASE("chart inverse examples") {
  CHECK(oracle::mag(s2c_chart_inverse(ChartId::G, S2CPoint{{{1.0, 0.0, 0.0}}})) < 1e-15);
  const QuadricPointB b = QuadricPointB::from({{-2.0, 0.0, 2.0 * i2}});
  CHECK(oracle::dist(q1b_chart_inverse(ChartId::G, b), 1.0) < 1e-14);
  CHECK(oracle::dist(q1b_chart_inverse_alt(ChartId::G, b), 1.0) < 1e-14);
  CHECK(oracle::mag(q2c_chart_inverse(ChartId::G, QuadricPointC::from({1.0, 1.0, 0.0, 0.0}))) < 1e-15);
}

TEST_CASE("transition examples") {
  CHECK(oracle::dist(transition(ChartId::G, ChartId::K, 1.0), -i2) < 1e-14);
  const auto p1 = s2c_chart(ChartId::G, 1.0), p2 = s2c_chart(ChartId::K, -i2);
  CHECK(cdist(p1.z, CVec3{{0.0, 1.0, 0.0}}) < 1e-14);
  CHECK(cdist(p2.z, CVec3{{0.0, 1.0, 0.0}}) < 1e-14);
  CHECK(oracle::dist(transition(ChartId::G, ChartId::Gcheck, 2.0), 0.5) < 1e-15);
  CHECK(oracle::dist(transition(ChartId::G, ChartId::L, 0.0), -i2) < 1e-15);
  // Outside the overlap.
  CHECK_THROWS_AS(transition(ChartId::G, ChartId::Gcheck, 0.0), Error);
  CHECK_THROWS_AS(transition(ChartId::G, ChartId::K, -i2), Error);
}

TEST_CASE("S2C charts off their domain") {
  ErrorCode code = ErrorCode::Ok;
  try {
    s2c_chart(ChartId::G, i1);  // CN = -1
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::OutOfDomain);
}

TEST_CASE("fundamental identity") {
  const Bicomplex g = one + i2;
  CHECK(fundamental_identity_check(q1b_standard(g)) <= 1e-10);
  CHECK(fundamental_identity_check({{0.0, 1.0, i2}}) == 0.0);
  CHECK(fundamental_identity_check({{0.0, 0.0, 0.0}}) == 0.0);
}

TEST_CASE("sphere to quadric") {
  CHECK(same_point(s2c_to_q2c({{{1.0, 0.0, 0.0}}}), QuadricPointC::from({1.0, 1.0, 0.0, 0.0})));
  CHECK(same_point(s2c_to_q2c({{{0.0, 1.0, 0.0}}}), QuadricPointC::from({1.0, 0.0, 1.0, 0.0})));
  const Bicomplex g = one + i2;
  CHECK(same_point(q2c_chart(ChartId::G, g), s2c_to_q2c(s2c_chart(ChartId::G, g))));
  CHECK(same_point(q2c_chart(ChartId::G, g), QuadricPointC::from(q2c_standard(g))));
}

TEST_CASE("Q1B* to the sphere") {
  const auto s = q1b_star_to_s2c(QuadricPointB::from({{0.0, 1.0, i2}}));
  CHECK(cdist(s.z, CVec3{{1.0, 0.0, 0.0}}) < 1e-14);
  const Bicomplex lam = 2.0 + i2;
  const auto t = q1b_star_to_s2c(QuadricPointB::from(lam * BVec3{{0.0, 1.0, i2}}));
  CHECK(cdist(t.z, CVec3{{1.0, 0.0, 0.0}}) < 1e-14);
  // A null direction: an embedded null complex vector has CN(xi) = 0.
  const BVec3 xi{{1.0, i1, 0.0}};
  ErrorCode code = ErrorCode::Ok;
  try {
    q1b_star_to_s2c(QuadricPointB::from(xi));
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::DegenerateDirection);
}

TEST_CASE("complex representatives") {
  struct Case {
    BVec3 xi;
    CVec3 expect;
    Bicomplex lambda;
  };
  const Case cases[] = {
      {(one + j) * BVec3{{1.0, i1, 0.0}}, {{1.0, C(0, 1), 0.0}}, one + j},
      {BVec3{{0.0, one + j, i1 * (one + j)}}, {{0.0, 1.0, C(0, 1)}}, one + j},
      {(one - j) * BVec3{{0.0, 1.0, i1}}, {{0.0, 1.0, C(0, 1)}}, one - j},
      // A point of Q1_B proper (outside the fattened origin) with CN = 0.
      {BVec3{{-2.0 * i1, 2.0, 0.0}}, {{C(0, -1), 1.0, 0.0}}, 2.0},
  };
  for (const Case& c : cases) {
    const CVec3 r = complex_representative(c.xi);
    CHECK(std::abs(square(r)) < 1e-12);
    const std::array<C, 3> a{r[0], r[1], r[2]}, b{c.expect[0], c.expect[1], c.expect[2]};
    CHECK(proportional(a, b, 1e-12));
    // xi = lambda' xi_C for some lambda' in the same class as lambda: compare
    // xi with lambda * expect componentwise in ratio.
    const BVec3 rebuilt = c.lambda * BVec3::embed(c.expect);
    for (std::size_t k = 0; k < 3; ++k) CHECK(oracle::dist(rebuilt[k], c.xi[k]) < 1e-14);
  }
  CHECK_THROWS_AS(complex_representative(BVec3{{0.0, 1.0, i2}}), Error);  // CN = 2
}

TEST_CASE("phi examples") {
  const auto p = phi_compactify(QuadricPointB::from({{0.0, 1.0, i2}}));
  CHECK(same_point(p, QuadricPointC::from({1.0, 1.0, 0.0, 0.0})));
  CHECK(same_point(p, QuadricPointC::from(q2c_standard(0.0))));
  const auto inf = phi_compactify(q1b_chart(ChartId::G, i1));
  CHECK(same_point(inf, QuadricPointC::from({0.0, 1.0, C(0, 1), 0.0})));
  const auto scaled = phi_compactify(QuadricPointB::from(3.0 * BVec3{{0.0, 1.0, i2}}));
  CHECK(same_point(scaled, p));
}

TEST_CASE("psi examples") {
  const auto a = psi_decompactify(QuadricPointC::from({1.0, 1.0, 0.0, 0.0}));
  CHECK(same_point(a, QuadricPointB::from({{0.0, 1.0, i2}})));
  CHECK(same_point(a, QuadricPointB::from({{0.0, 4.0, 4.0 * i2}})));
  const auto b = psi_decompactify(QuadricPointC::from({0.0, 1.0, C(0, 1), 0.0}));
  CHECK(is_null_direction(b));
  const CVec3 r = complex_representative(b.xi());
  CHECK(proportional(std::array<C, 3>{r[0], r[1], r[2]}, std::array<C, 3>{1.0, C(0, 1), 0.0}, 1e-10));
  const auto c = QuadricPointC::from({1.0, 0.0, 1.0, 0.0});
  CHECK(same_point(phi_compactify(psi_decompactify(c)), c));
}

TEST_CASE("forget orientation") {
  const auto a = forget_orientation(QuadricPointC::from({1.0, 1.0, 0.0, 0.0}));
  const auto b = forget_orientation(QuadricPointC::from({-1.0, 1.0, 0.0, 0.0}));
  CHECK(same_point(a, b));
  CHECK(same_point(a, CP2Point::from({{1.0, 0.0, 0.0}})));
  CHECK(same_point(forget_orientation(QuadricPointC::from({0.0, 1.0, C(0, 1), 0.0})), CP2Point::from({{1.0, C(0, 1), 0.0}})));
  CHECK(same_point(forget_orientation(QuadricPointC::from({1.0, 0.0, 1.0, 0.0})), CP2Point::from({{0.0, 1.0, 0.0}})));
}

TEST_CASE("chart round trips in all spaces") {
  oracle::Rng rng(42);
  for (ChartId c : kCharts) {
    for (int n = 0; n < 200; ++n) {
      const Bicomplex v = rng.bicomplex();
      for (Space s : {Space::S2C, Space::Q1B, Space::Q2C}) {
        const Bicomplex back = point_to_chart(c, chart_to_point(s, c, v));
        CHECK(oracle::dist(back, v) <= 1e-10 * std::max(1.0, oracle::mag(v)));
      }
      // The two inverse fraction forms of Q1B agree.
      const QuadricPointB p = q1b_chart(c, v);
      CHECK(oracle::dist(q1b_chart_inverse(c, p), q1b_chart_inverse_alt(c, p)) <= 1e-10 * std::max(1.0, oracle::mag(v)));
    }
  }
}

TEST_CASE("charts match the defining formulas through the standard chart") {
  oracle::Rng rng(43);
  for (ChartId c : kCharts) {
    for (int n = 0; n < 100; ++n) {
      const Bicomplex v = rng.bicomplex();
      const Bicomplex g = to_standard(c, v);
      CHECK(cdist(s2c_chart(c, v).z, stereo(g)) <= 1e-10 * std::max(1.0, norm(stereo(g))));
      CHECK(same_point(q1b_chart(c, v), QuadricPointB::from(q1b_standard(g))));
      CHECK(same_point(q2c_chart(c, v), QuadricPointC::from(q2c_standard(g))));
    }
  }
}

TEST_CASE("transition coherence for every chart pair") {
  oracle::Rng rng(44);
  for (ChartId a : kCharts)
    for (ChartId b : kCharts)
      for (int n = 0; n < 50; ++n) {
        const Bicomplex v = rng.bicomplex();
        const Bicomplex w = transition(a, b, v);
        for (Space s : {Space::S2C, Space::Q1B, Space::Q2C}) {
          const ModelPoint p = chart_to_point(s, a, v), q = chart_to_point(s, b, w);
          if (s == Space::S2C) CHECK(same_point(std::get<S2CPoint>(p), std::get<S2CPoint>(q)));
          if (s == Space::Q1B) CHECK(same_point(std::get<QuadricPointB>(p), std::get<QuadricPointB>(q)));
          if (s == Space::Q2C) CHECK(same_point(std::get<QuadricPointC>(p), std::get<QuadricPointC>(q)));
        }
        // Ringleb-diagonal: each component of the transition depends only on
        // its own idempotent coordinate.
        const HoloFn t = transition_fn(a, b);
        const RinglebPair rv = ringleb_decompose(v), rw = ringleb_decompose(w);
        CHECK(std::abs(t.f1().eval(rv.e_part) - rw.e_part) <= 1e-10 * std::max(1.0, std::abs(rw.e_part)));
        CHECK(std::abs(t.f2().eval(rv.f_part) - rw.f_part) <= 1e-10 * std::max(1.0, std::abs(rw.f_part)));
      }
  // G -> K directly and through the sphere.
  for (int n = 0; n < 50; ++n) {
    const Bicomplex g = rng.bicomplex();
    const Bicomplex k = transition(ChartId::G, ChartId::K, g);
    CHECK(oracle::dist(k, s2c_chart_inverse(ChartId::K, s2c_chart(ChartId::G, g))) <= 1e-10 * std::max(1.0, oracle::mag(k)));
  }
}

TEST_CASE("phi and psi are inverse") {
  oracle::Rng rng(45);
  for (int n = 0; n < 300; ++n) {
    const auto zc = QuadricPointC::from(random_q2c(rng, n % 5 == 0));
    CHECK(same_point(phi_compactify(psi_decompactify(zc)), zc));
    const QuadricPointB xb = n % 5 == 1 ? q1b_chart(ChartId::G, null_value(rng)) : q1b_chart(kCharts[n % 4], rng.bicomplex());
    CHECK(same_point(psi_decompactify(phi_compactify(xb)), xb));
  }
}

TEST_CASE("phi factors through the sphere on Q1B*") {
  oracle::Rng rng(46);
  for (int n = 0; n < 100; ++n) {
    const QuadricPointB x = q1b_chart(ChartId::G, rng.bicomplex());
    CHECK(same_point(phi_compactify(x), s2c_to_q2c(q1b_star_to_s2c(x))));
    CHECK(same_point(forget_orientation(x), forget_orientation(phi_compactify(x))));
  }
}

TEST_CASE("projective equality is an equivalence on random representatives") {
  oracle::Rng rng(47);
  for (int n = 0; n < 100; ++n) {
    const BVec3 xi = q1b_standard(rng.bicomplex());
    const Bicomplex l1 = rng.bicomplex(), l2 = rng.bicomplex();
    const auto a = QuadricPointB::from(xi), b = QuadricPointB::from(l1 * xi), c = QuadricPointB::from(l2 * (l1 * xi));
    CHECK(same_point(a, a));
    CHECK(same_point(a, b));
    CHECK(same_point(b, a));
    CHECK(same_point(b, c));
    CHECK(same_point(a, c));
    CHECK(!same_point(a, QuadricPointB::from(q1b_standard(rng.bicomplex()))));
    const auto z = random_q2c(rng, false);
    const C s = rng.complex();
    CHECK(same_point(QuadricPointC::from(z), QuadricPointC::from({s * z[0], s * z[1], s * z[2], s * z[3]})));
  }
}

TEST_CASE("model point validation") {
  CHECK_THROWS_AS(QuadricPointB::from({{1.0, 0.0, 0.0}}), Error);              // not null
  CHECK_THROWS_AS(QuadricPointB::from({{one + j, 0.0, 0.0}}), Error);          // in the fattened origin
  CHECK_THROWS_AS(QuadricPointC::from({1.0, 0.0, 0.0, 0.0}), Error);           // off the quadric
  CHECK_THROWS_AS(forget_orientation(QuadricPointC::from({0.0, 0.0, 0.0, 0.0})), Error);
  CHECK(parse_chart("Gcheck") == ChartId::Gcheck);
  CHECK_THROWS_AS(parse_chart("X"), Error);
  CHECK(chart_name(ChartId::K) == "K");
}
