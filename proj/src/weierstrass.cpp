#include "bhm/weierstrass.hpp"

#include <algorithm>
#include <limits>
#include <tuple>

#include "bhm/error.hpp"
#include "bhm/polynomial.hpp"

namespace bhm {

BVec3 direction_triple(const Bicomplex& g) {
  const Bicomplex g2 = g * g;
  return {{-2.0 * g, 1.0 - g2, (1.0 + g2) * Bicomplex::i2()}};
}

XiResult xi_from_gh(const WeierstrassData& data, const Bicomplex& q) {
  const BVec3 t = direction_triple(data.G(q));
  const Bicomplex two_h = 2.0 * data.H(q);
  if (is_zero_divisor(two_h)) return {t, false};
  return {inverse(two_h) * t, true};
}

std::string_view fibre_tag_name(FibreTag t) {
  switch (t) {
    case FibreTag::NonNullLine: return "NonNullLine";
    case FibreTag::DegeneratePlane: return "DegeneratePlane";
    case FibreTag::Empty: return "Empty";
  }
  return "?";
}

FibreDescription fibre_at(const WeierstrassData& data, const Bicomplex& q, double tol) {
  const Bicomplex g = data.G(q);
  const Bicomplex h = data.H(q);
  const Complex C = complex_norm(g);
  FibreDescription f;
  if (!negligible(std::abs(1.0 + C), std::abs(C), tol)) {
    // u.z = 2 H1, v.z = 2 H2 with u.v = 0 and u^2 = v^2 = (1 + CN(G))^2.
    const BVec3 t = direction_triple(g);
    const CVec3 u = t.u(), v = t.v();
    const Complex uu = square(u);
    f.tag = FibreTag::NonNullLine;
    f.direction = cross(u, v) / uu;
    f.base = (2.0 * h.q1 * u + 2.0 * h.q2 * v) / uu;
    return f;
  }
  // CN(G) = -1: both equations are multiples of n.z with n = (1, G1, G2) null,
  // -2 G1 n.z = 2 H1 and -2 G2 n.z = 2 H2.
  const Complex d = g.q1 * h.q1 + g.q2 * h.q2;
  // Consistency of the pair, i.e. (H1, H2) proportional to (G1, G2).
  constexpr double kConsistencyTol = 1e-8;
  const double scale = std::max({1.0, std::abs(h.q1), std::abs(h.q2)});
  if (std::abs(g.q1 * d + h.q1) <= kConsistencyTol * scale && std::abs(g.q2 * d + h.q2) <= kConsistencyTol * scale) {
    f.tag = FibreTag::DegeneratePlane;
    f.normal = {{1.0, g.q1, g.q2}};
    f.offset = d;
  }
  return f;
}

CVec3 plane_base_point(const FibreDescription& f) {
  const CVec3& n = f.normal;
  const CVec3 nbar{{std::conj(n[0]), std::conj(n[1]), std::conj(n[2])}};
  return (f.offset / (norm(n) * norm(n))) * nbar;
}

double fibre_residual(const FibreDescription& f, const CVec3& z) {
  switch (f.tag) {
    case FibreTag::NonNullLine:
      return norm(cross(z - f.base, f.direction)) / std::max(1.0, norm(f.direction));
    case FibreTag::DegeneratePlane:
      return std::abs(dot(f.normal, z) - f.offset) / norm(f.normal);
    case FibreTag::Empty:
      break;
  }
  return std::numeric_limits<double>::infinity();
}

CVec3 sample_fibre(const FibreDescription& f, Complex t, Complex s) {
  switch (f.tag) {
    case FibreTag::NonNullLine:
      return f.base + t * f.direction;
    case FibreTag::DegeneratePlane: {
      const CVec3& n = f.normal;
      const CVec3 m = cross(n, CVec3{{std::conj(n[0]), std::conj(n[1]), std::conj(n[2])}});
      return plane_base_point(f) + t * n + s * m;
    }
    case FibreTag::Empty:
      break;
  }
  fail(ErrorCode::InvalidInput, "cannot sample an empty fibre");
}

HoloFn congruence_fn(const WeierstrassData& data, const CVec3& z) {
  const HoloFn one = HoloFn::constant(1.0);
  const HoloFn g2 = data.G * data.G;
  return Bicomplex(-2.0 * z[0], 0.0) * data.G + Bicomplex(z[1], 0.0) * (one - g2) +
         Bicomplex(0.0, z[2]) * (one + g2) - Bicomplex(2.0) * data.H;
}

Bicomplex congruence_residual(const WeierstrassData& data, const Bicomplex& q, const CVec3& z) {
  return inner_B(direction_triple(data.G(q)), BVec3::embed(z)) - 2.0 * data.H(q);
}

namespace {

// Magnitude of the terms of p' at x, the scale for deciding p'(x) ~ 0.
double derivative_scale(const Polynomial& dp, Complex x) {
  double s = 0.0, xp = 1.0;
  for (const Complex& c : dp.coeffs()) {
    s += std::abs(c) * xp;
    xp *= std::abs(x);
  }
  return s;
}

}  // namespace

std::vector<CongruenceSolution> solve_phi(const WeierstrassData& data, const CVec3& z, double tol) {
  const HoloFn F = congruence_fn(data, z);
  const Polynomial p1 = to_polynomial(F.f1());
  const Polynomial p2 = to_polynomial(F.f2());
  const double zero_tol = kIdentityTol * std::max(1.0, norm(z));
  if (p1.is_zero(zero_tol) || p2.is_zero(zero_tol))
    fail(ErrorCode::DegenerateAllComponents, "a Ringleb component of the congruence vanishes identically");
  const auto r1 = polynomial_roots(p1);
  const auto r2 = polynomial_roots(p2);
  const Polynomial d1 = p1.derivative(), d2 = p2.derivative();

  std::vector<CongruenceSolution> out;
  out.reserve(r1.size() * r2.size());
  for (const PolyRoot& a : r1) {
    for (const PolyRoot& b : r2) {
      CongruenceSolution s;
      s.roots = {a.value, b.value};
      s.q = ringleb_recompose(s.roots);
      s.multiplicity = a.multiplicity * b.multiplicity;
      const Complex fa = d1(a.value), fb = d2(b.value);
      s.dF_dq = ringleb_recompose({fa, fb});
      const bool za = a.multiplicity > 1 || negligible(std::abs(fa), derivative_scale(d1, a.value), 1e-10);
      const bool zb = b.multiplicity > 1 || negligible(std::abs(fb), derivative_scale(d2, b.value), 1e-10);
      s.partially_degenerate = za != zb;
      if (!za && !zb) {
        const BVec3 t = direction_triple(data.G(s.q));
        const CVec3 te = t.ringleb_e(), tf = t.ringleb_f();
        s.gradient = BVec3::from_ringleb((-1.0 / fa) * te, (-1.0 / fb) * tf);
        s.has_gradient = true;
        const double gn = real_norm(s.gradient);
        s.degenerate = gn > tol && std::abs(complex_norm_vec(s.gradient)) <= tol * gn * gn;
      }
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end(), [](const CongruenceSolution& x, const CongruenceSolution& y) {
    const auto key = [](const CongruenceSolution& s) {
      return std::make_tuple(s.roots.e_part.real(), s.roots.e_part.imag(), s.roots.f_part.real(),
                             s.roots.f_part.imag());
    };
    return key(x) < key(y);
  });
  return out;
}

ImplicitSecondOrder implicit_second_order(const WeierstrassData& data, const CVec3& z,
                                          const CongruenceSolution& sol) {
  if (!sol.has_gradient) fail(ErrorCode::DegeneratePoint, "implicit derivatives need dF/dq to be a unit");
  const HoloFn F = congruence_fn(data, z);
  const HoloFn dF = F.derivative();
  const Bicomplex fq = dF(sol.q);
  const Bicomplex fqq = dF.derivative()(sol.q);
  const Bicomplex g = data.G(sol.q);
  const Bicomplex dg = data.G.derivative()(sol.q);
  // d/dq of T(G(q)).
  const BVec3 dt{{-2.0 * dg, -2.0 * g * dg, 2.0 * g * dg * Bicomplex::i2()}};
  const Bicomplex inv = inverse(fq);
  ImplicitSecondOrder r;
  r.laplacian = 0.0;
  for (int i = 0; i < 3; ++i) {
    const Bicomplex p = sol.gradient[i];
    r.second[i] = -(fqq * p * p + 2.0 * dt[i] * p) * inv;
    r.laplacian += r.second[i];
    r.laplacian_scale += real_norm(r.second[i]);
    r.nullness_scale += real_norm(p * p);
  }
  r.nullness = square_B(sol.gradient);
  return r;
}

double ImplicitSecondOrder::laplacian_residual() const {
  return real_norm(laplacian) / std::max(1.0, laplacian_scale);
}

double ImplicitSecondOrder::nullness_residual() const {
  return real_norm(nullness) / std::max(1.0, nullness_scale);
}

CVec3 gauss_map(const BVec3& gradient, double tol) {
  const double n = real_norm(gradient);
  const Complex cn = complex_norm_vec(gradient);
  if (!(n > 0.0) || std::abs(cn) <= tol * n * n)
    fail(ErrorCode::DegeneratePoint, "CN(grad) vanishes: degenerate point");
  return (2.0 * cross(gradient.u(), gradient.v())) / cn;
}

CVec3 fibre_position(const WeierstrassData&, const Bicomplex&, const FibreDescription& fibre) {
  if (fibre.tag != FibreTag::NonNullLine) fail(ErrorCode::InvalidInput, "fibre position needs a non-null line");
  return fibre.base;
}

CVec3 fibre_position_differential(const WeierstrassData& data, const Bicomplex& q) {
  const Bicomplex g = data.G(q);
  const Bicomplex h = data.H(q);
  const Complex C = complex_norm(g);
  const Complex den = 1.0 + C;
  if (negligible(std::abs(den), std::abs(C), 1e-10))
    fail(ErrorCode::OutOfDomain, "inverse stereographic chart undefined at CN(G) = -1");
  const Complex dC = 2.0 * (g.q1 * h.q1 + g.q2 * h.q2);
  const Complex d2 = den * den;
  return {{-2.0 * dC / d2, 2.0 * h.q1 / den - 2.0 * g.q1 * dC / d2, 2.0 * h.q2 / den - 2.0 * g.q2 * dC / d2}};
}

BVec3 xi_from_fibre(const FibreDescription& fibre, double tol) {
  if (fibre.tag != FibreTag::NonNullLine) fail(ErrorCode::InvalidInput, "reconstruction needs non-null fibres");
  const CVec3& c = fibre.base;
  const Complex cc = square(c);
  if (std::abs(cc) <= tol * std::max(1.0, norm(c) * norm(c)))
    fail(ErrorCode::InvalidInput, "c^2 vanishes: fibre meets a null cone direction through the origin");
  const CVec3 jc = cross(fibre.direction, c);
  return BVec3::from_parts(c / cc, jc / cc);
}

std::vector<BVec3> xi_from_fibres(const std::vector<std::pair<Bicomplex, FibreDescription>>& samples, double tol) {
  std::vector<BVec3> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(xi_from_fibre(s.second, tol));
  return out;
}

}  // namespace bhm
