#include "bhm/geometry.hpp"

#include <algorithm>

#include "bhm/error.hpp"

namespace bhm {

namespace {

const Complex kI(0, 1);

template <std::size_t N>
std::size_t argmax_abs(const std::array<Complex, N>& v) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < N; ++k)
    if (std::abs(v[k]) > std::abs(v[best])) best = k;
  return best;
}

template <std::size_t N>
std::array<Complex, N> normalized(std::array<Complex, N> v) {
  const Complex s = v[argmax_abs(v)];
  for (Complex& x : v) x /= s;
  return v;
}

double norm_of(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Maps the evaluation-time errors of rational formulas to chart-domain errors.
template <class F>
auto in_domain(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ZeroDivisor || e.code() == ErrorCode::PoleEncountered)
      fail(ErrorCode::OutOfDomain, std::string(what) + ": " + e.what());
    throw;
  }
}

Complex checked_ratio(Complex num, Complex den, double scale, const char* what) {
  if (negligible(std::abs(den), scale)) fail(ErrorCode::OutOfDomain, std::string(what) + ": point outside chart");
  return num / den;
}

}  // namespace

// ---------------------------------------------------------------------------

double norm(const CVec3& a) { return norm_of(a.c); }
double max_abs(const CVec3& a) { return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])}); }

CVec3 BVec3::ringleb_e() const {
  return {{ringleb_decompose(c[0]).e_part, ringleb_decompose(c[1]).e_part, ringleb_decompose(c[2]).e_part}};
}
CVec3 BVec3::ringleb_f() const {
  return {{ringleb_decompose(c[0]).f_part, ringleb_decompose(c[1]).f_part, ringleb_decompose(c[2]).f_part}};
}
BVec3 BVec3::from_ringleb(const CVec3& e, const CVec3& f) {
  return {{ringleb_recompose({e[0], f[0]}), ringleb_recompose({e[1], f[1]}), ringleb_recompose({e[2], f[2]})}};
}

BVec3 cross_B(const BVec3& p, const BVec3& q) {
  return {{p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]}};
}

double real_norm(const BVec3& q) {
  return std::sqrt(std::norm(q[0].q1) + std::norm(q[0].q2) + std::norm(q[1].q1) + std::norm(q[1].q2) +
                   std::norm(q[2].q1) + std::norm(q[2].q2));
}

std::string_view chart_name(ChartId c) {
  switch (c) {
    case ChartId::G: return "G";
    case ChartId::Gcheck: return "Gcheck";
    case ChartId::L: return "L";
    case ChartId::K: return "K";
  }
  return "?";
}

ChartId parse_chart(std::string_view name) {
  for (ChartId c : {ChartId::G, ChartId::Gcheck, ChartId::L, ChartId::K})
    if (chart_name(c) == name) return c;
  fail(ErrorCode::InvalidInput, "unknown chart '" + std::string(name) + "'");
}

std::string_view space_name(Space s) {
  switch (s) {
    case Space::S2C: return "S2C";
    case Space::Q1B: return "Q1B";
    case Space::Q2C: return "Q2C";
  }
  return "?";
}

Space parse_space(std::string_view name) {
  for (Space s : {Space::S2C, Space::Q1B, Space::Q2C})
    if (space_name(s) == name) return s;
  fail(ErrorCode::InvalidInput, "unknown space '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Points

QuadricPointB QuadricPointB::from(const BVec3& xi, double tol) {
  const double s = real_norm(xi);
  if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorCode::InvalidInput, "quadric point needs a finite nonzero vector");
  CVec3 e = xi.ringleb_e();
  CVec3 f = xi.ringleb_f();
  if (max_abs(e) <= tol * s || max_abs(f) <= tol * s)
    fail(ErrorCode::InvalidInput, "vector lies in the fattened origin");
  e.c = normalized(e.c);
  f.c = normalized(f.c);
  if (std::abs(square(e)) > tol || std::abs(square(f)) > tol)
    fail(ErrorCode::InvalidInput, "vector is not null (xi^2 != 0)");
  QuadricPointB p;
  p.xi_ = BVec3::from_ringleb(e, f);
  return p;
}

QuadricPointC QuadricPointC::from(const std::array<Complex, 4>& zeta, double tol) {
  const double s = norm_of(zeta);
  if (!(s > 0.0) || !std::isfinite(s)) fail(ErrorCode::InvalidInput, "homogeneous coordinates must not all vanish");
  QuadricPointC p;
  p.zeta_ = normalized(zeta);
  const auto& z = p.zeta_;
  if (std::abs(z[0] * z[0] - z[1] * z[1] - z[2] * z[2] - z[3] * z[3]) > tol)
    fail(ErrorCode::InvalidInput, "point is not on the complex quadric");
  return p;
}

CP2Point CP2Point::from(const CVec3& v) {
  if (!(max_abs(v) > 0.0)) fail(ErrorCode::InvalidInput, "projective point needs a nonzero vector");
  CP2Point p;
  p.v_.c = normalized(v.c);
  return p;
}

bool proportional(std::span<const Complex> a, std::span<const Complex> b, double tol) {
  if (a.size() != b.size()) return false;
  const double na = norm_of(a);
  const double nb = norm_of(b);
  if (!(na > 0.0) || !(nb > 0.0)) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = i + 1; k < a.size(); ++k)
      if (std::abs(a[i] * b[k] - a[k] * b[i]) > tol * na * nb) return false;
  return true;
}

bool same_point(const QuadricPointB& a, const QuadricPointB& b, double tol) {
  const CVec3 ae = a.xi().ringleb_e(), be = b.xi().ringleb_e();
  const CVec3 af = a.xi().ringleb_f(), bf = b.xi().ringleb_f();
  return proportional(ae.c, be.c, tol) && proportional(af.c, bf.c, tol);
}

bool same_point(const QuadricPointC& a, const QuadricPointC& b, double tol) {
  return proportional(a.zeta(), b.zeta(), tol);
}

bool same_point(const CP2Point& a, const CP2Point& b, double tol) {
  return proportional(a.coords().c, b.coords().c, tol);
}

bool same_point(const S2CPoint& a, const S2CPoint& b, double tol) {
  return norm(a.z - b.z) <= tol * std::max(1.0, norm(a.z));
}

// ---------------------------------------------------------------------------
// Charts

S2CPoint s2c_chart(ChartId c, const Bicomplex& x) {
  const Complex C = complex_norm(x);
  const Complex den = 1.0 + C;
  if (negligible(std::abs(den), std::abs(C)))
    fail(ErrorCode::OutOfDomain, "S2C chart: CN(value) = -1");
  const Complex g1 = x.q1, g2 = x.q2;
  CVec3 z;
  switch (c) {
    case ChartId::G: z = {{1.0 - C, 2.0 * g1, 2.0 * g2}}; break;
    case ChartId::Gcheck: z = {{C - 1.0, 2.0 * g1, -2.0 * g2}}; break;
    case ChartId::L: z = {{-2.0 * g2, 1.0 - C, -2.0 * g1}}; break;
    case ChartId::K: z = {{-2.0 * g1, -2.0 * g2, 1.0 - C}}; break;
  }
  return {z / den};
}

Bicomplex s2c_chart_inverse(ChartId c, const S2CPoint& p) {
  const CVec3& z = p.z;
  const double s = norm(z);
  switch (c) {
    case ChartId::G: {
      const Complex d = 1.0 + z[0];
      return {checked_ratio(z[1], d, s, "S2C chart G"), z[2] / d};
    }
    case ChartId::Gcheck: {
      const Complex d = 1.0 - z[0];
      return {checked_ratio(z[1], d, s, "S2C chart Gcheck"), -z[2] / d};
    }
    case ChartId::L: {
      const Complex d = 1.0 + z[1];
      return {checked_ratio(-z[2], d, s, "S2C chart L"), -z[0] / d};
    }
    case ChartId::K: {
      const Complex d = 1.0 + z[2];
      return {checked_ratio(-z[0], d, s, "S2C chart K"), -z[1] / d};
    }
  }
  fail(ErrorCode::InvalidInput, "bad chart");
}

QuadricPointB q1b_chart(ChartId c, const Bicomplex& x) {
  const Bicomplex i2 = Bicomplex::i2();
  const Bicomplex x2 = x * x;
  BVec3 xi;
  switch (c) {
    case ChartId::G: xi = {{-2.0 * x, 1.0 - x2, (1.0 + x2) * i2}}; break;
    case ChartId::Gcheck: xi = {{-2.0 * x, x2 - 1.0, (x2 + 1.0) * i2}}; break;
    case ChartId::L: xi = {{(1.0 + x2) * i2, 2.0 * x, 1.0 - x2}}; break;
    case ChartId::K: xi = {{1.0 - x2, (1.0 + x2) * i2, 2.0 * x}}; break;
  }
  return QuadricPointB::from(xi);
}

Bicomplex q1b_chart_inverse(ChartId c, const QuadricPointB& p) {
  const BVec3& x = p.xi();
  const Bicomplex i2 = Bicomplex::i2();
  return in_domain("Q1B chart", [&]() -> Bicomplex {
    switch (c) {
      case ChartId::G: return -x[0] / (x[1] - x[2] * i2);
      case ChartId::Gcheck: return x[0] / (x[1] + x[2] * i2);
      case ChartId::L: return x[1] / (x[2] - x[0] * i2);
      case ChartId::K: return x[2] / (x[0] - x[1] * i2);
    }
    fail(ErrorCode::InvalidInput, "bad chart");
  });
}

Bicomplex q1b_chart_inverse_alt(ChartId c, const QuadricPointB& p) {
  const BVec3& x = p.xi();
  const Bicomplex i2 = Bicomplex::i2();
  return in_domain("Q1B chart (second form)", [&]() -> Bicomplex {
    switch (c) {
      case ChartId::G: return (x[1] + x[2] * i2) / x[0];
      case ChartId::Gcheck: return -(x[1] - x[2] * i2) / x[0];
      case ChartId::L: return -(x[2] + x[0] * i2) / x[1];
      case ChartId::K: return -(x[0] + x[1] * i2) / x[2];
    }
    fail(ErrorCode::InvalidInput, "bad chart");
  });
}

QuadricPointC q2c_chart(ChartId c, const Bicomplex& x) {
  const Complex C = complex_norm(x);
  const Complex g1 = x.q1, g2 = x.q2;
  std::array<Complex, 4> z{};
  switch (c) {
    case ChartId::G: z = {1.0 + C, 1.0 - C, 2.0 * g1, 2.0 * g2}; break;
    case ChartId::Gcheck: z = {1.0 + C, C - 1.0, 2.0 * g1, -2.0 * g2}; break;
    case ChartId::L: z = {1.0 + C, -2.0 * g2, 1.0 - C, -2.0 * g1}; break;
    case ChartId::K: z = {1.0 + C, -2.0 * g1, -2.0 * g2, 1.0 - C}; break;
  }
  return QuadricPointC::from(z);
}

Bicomplex q2c_chart_inverse(ChartId c, const QuadricPointC& p) {
  const auto& z = p.zeta();
  const double s = norm_of(z);
  switch (c) {
    case ChartId::G: {
      const Complex d = z[0] + z[1];
      return {checked_ratio(z[2], d, s, "Q2C chart G"), z[3] / d};
    }
    case ChartId::Gcheck: {
      const Complex d = z[0] - z[1];
      return {checked_ratio(z[2], d, s, "Q2C chart Gcheck"), -z[3] / d};
    }
    case ChartId::L: {
      const Complex d = z[0] + z[2];
      return {checked_ratio(-z[3], d, s, "Q2C chart L"), -z[1] / d};
    }
    case ChartId::K: {
      const Complex d = z[0] + z[3];
      return {checked_ratio(-z[1], d, s, "Q2C chart K"), -z[2] / d};
    }
  }
  fail(ErrorCode::InvalidInput, "bad chart");
}

ModelPoint chart_to_point(Space s, ChartId c, const Bicomplex& value) {
  switch (s) {
    case Space::S2C: return s2c_chart(c, value);
    case Space::Q1B: return q1b_chart(c, value);
    case Space::Q2C: return q2c_chart(c, value);
  }
  fail(ErrorCode::InvalidInput, "bad space");
}

Bicomplex point_to_chart(ChartId c, const ModelPoint& p) {
  struct Visitor {
    ChartId c;
    Bicomplex operator()(const S2CPoint& x) const { return s2c_chart_inverse(c, x); }
    Bicomplex operator()(const QuadricPointB& x) const { return q1b_chart_inverse(c, x); }
    Bicomplex operator()(const QuadricPointC& x) const { return q2c_chart_inverse(c, x); }
  };
  return std::visit(Visitor{c}, p);
}

// ---------------------------------------------------------------------------
// Transitions

namespace {

HoloFn to_standard(ChartId from) {
  const HoloFn x = HoloFn::identity();
  const HoloFn one = HoloFn::constant(1.0);
  const HoloFn i2 = HoloFn::constant(Bicomplex::i2());
  switch (from) {
    case ChartId::G: return x;
    case ChartId::Gcheck: return one / x;
    case ChartId::L: return (one - x * i2) / (one + x * i2);
    case ChartId::K: return (one + x) * i2 / (one - x);
  }
  return x;
}

HoloFn from_standard(ChartId to) {
  const HoloFn x = HoloFn::identity();
  const HoloFn one = HoloFn::constant(1.0);
  const HoloFn i2 = HoloFn::constant(Bicomplex::i2());
  switch (to) {
    case ChartId::G: return x;
    case ChartId::Gcheck: return one / x;
    case ChartId::L: return (x - one) * i2 / (x + one);
    case ChartId::K: return (x - i2) / (x + i2);
  }
  return x;
}

}  // namespace

HoloFn transition_fn(ChartId from, ChartId to) {
  if (from == to) return HoloFn::identity();
  if (from == ChartId::G) return from_standard(to);
  if (to == ChartId::G) return to_standard(from);
  return from_standard(to).compose(to_standard(from));
}

Bicomplex transition(ChartId from, ChartId to, const Bicomplex& value) {
  const HoloFn f = transition_fn(from, to);
  return in_domain("transition", [&] { return f(value); });
}

// ---------------------------------------------------------------------------

double fundamental_identity_check(const BVec3& xi) {
  const Bicomplex i2 = Bicomplex::i2();
  const Complex lhs = complex_norm(xi[0]) * complex_norm(xi[0]);
  const Complex rhs = complex_norm(xi[1] - xi[2] * i2) * complex_norm(xi[1] + xi[2] * i2);
  return std::abs(lhs - rhs);
}

QuadricPointC s2c_to_q2c(const S2CPoint& p) { return QuadricPointC::from({1.0, p.z[0], p.z[1], p.z[2]}); }

bool is_null_direction(const QuadricPointB& p, double tol) {
  const double s = real_norm(p.xi());
  return std::abs(complex_norm_vec(p.xi())) <= tol * s * s;
}

S2CPoint q1b_star_to_s2c(const QuadricPointB& p, double tol) {
  if (is_null_direction(p, tol)) fail(ErrorCode::DegenerateDirection, "CN(xi) vanishes: null direction");
  const BVec3& xi = p.xi();
  return {(2.0 * cross(xi.u(), xi.v())) / complex_norm_vec(xi)};
}

CVec3 complex_representative(const BVec3& xi, double tol) {
  const double s = real_norm(xi);
  if (!(s > 0.0)) fail(ErrorCode::InvalidInput, "complex representative of the zero vector");
  const Bicomplex sq = square_B(xi);
  if (real_norm(sq) > tol * s * s) fail(ErrorCode::InvalidInput, "vector is not null (xi^2 != 0)");
  if (std::abs(complex_norm_vec(xi)) > tol * s * s)
    fail(ErrorCode::InvalidInput, "CN(xi) != 0: not a null direction");
  const CVec3 u = xi.u();
  const CVec3 v = xi.v();
  CVec3 r = norm(u) >= norm(v) ? u : v;
  r.c = normalized(r.c);
  return r;
}

QuadricPointC phi_compactify(const QuadricPointB& p, double tol) {
  const BVec3& xi = p.xi();
  if (is_null_direction(p, tol)) {
    const CVec3 r = complex_representative(xi, 1e-8);
    return QuadricPointC::from({0.0, r[0], r[1], r[2]});
  }
  const CVec3 w = 2.0 * cross(xi.u(), xi.v());
  return QuadricPointC::from({complex_norm_vec(xi), w[0], w[1], w[2]});
}

ChartId best_q2c_chart(const QuadricPointC& p) {
  const auto& z = p.zeta();
  const std::array<std::pair<double, ChartId>, 4> cand{{{std::abs(z[0] + z[1]), ChartId::G},
                                                        {std::abs(z[0] - z[1]), ChartId::Gcheck},
                                                        {std::abs(z[0] + z[2]), ChartId::L},
                                                        {std::abs(z[0] + z[3]), ChartId::K}}};
  return std::max_element(cand.begin(), cand.end(), [](auto& a, auto& b) { return a.first < b.first; })->second;
}

QuadricPointB psi_decompactify(const QuadricPointC& p) {
  const ChartId c = best_q2c_chart(p);
  return q1b_chart(c, q2c_chart_inverse(c, p));
}

CP2Point forget_orientation(const QuadricPointC& p) {
  const auto& z = p.zeta();
  const CVec3 v{{z[1], z[2], z[3]}};
  if (max_abs(v) <= kIdentityTol * std::abs(z[0]))
    fail(ErrorCode::InvalidInput, "[zeta1, zeta2, zeta3] vanishes");
  return CP2Point::from(v);
}

CP2Point forget_orientation(const QuadricPointB& p) { return forget_orientation(phi_compactify(p)); }

}  // namespace bhm
