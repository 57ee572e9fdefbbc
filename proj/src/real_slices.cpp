#include "bhm/real_slices.hpp"

#include <algorithm>

#include "bhm/error.hpp"

namespace bhm {

namespace {

const Complex kI(0, 1);

double magnitude(const SliceValue& v) {
  if (const auto* c = std::get_if<Complex>(&v)) return std::abs(*c);
  const Hyperbolic& h = std::get<Hyperbolic>(v);
  return std::hypot(h.x, h.y);
}

template <class T>
struct Ops;

template <>
struct Ops<Complex> {
  static Complex scale(double s, Complex a) { return s * a; }
};

template <>
struct Ops<Hyperbolic> {
  static Hyperbolic scale(double s, Hyperbolic a) { return {s * a.x, s * a.y}; }
};

// Shared stencil arithmetic for Complex and Hyperbolic codomains.
template <class T>
WaveResidual wave_residual_impl(const std::array<double, 3>& signs, const std::function<T(const RealPoint&)>& f,
                                const RealPoint& x, double h) {
  const T f0 = f(x);
  T lap{}, nul{};
  double lap_scale = 0.0, nul_scale = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    auto at = [&](double s) {
      RealPoint y = x;
      y[k] += s * h;
      return f(y);
    };
    const T p1 = at(1), m1 = at(-1), p2 = at(2), m2 = at(-2);
    const T d1 = Ops<T>::scale(1.0 / (12.0 * h), (Ops<T>::scale(8.0, p1 - m1) - (p2 - m2)));
    const T d2 = Ops<T>::scale(1.0 / (12.0 * h * h),
                               Ops<T>::scale(16.0, p1 + m1) - (p2 + m2) - Ops<T>::scale(30.0, f0));
    lap = lap + Ops<T>::scale(signs[k], d2);
    nul = nul + Ops<T>::scale(signs[k], d1 * d1);
    lap_scale += magnitude(SliceValue(d2));
    nul_scale += magnitude(SliceValue(d1 * d1));
  }
  WaveResidual r;
  r.harmonic_abs = magnitude(SliceValue(lap));
  r.null_abs = magnitude(SliceValue(nul));
  r.harmonic = r.harmonic_abs / std::max(1.0, lap_scale);
  r.null = r.null_abs / std::max(1.0, nul_scale);
  return r;
}

}  // namespace

std::string_view slice_name(SliceKind k) {
  switch (k) {
    case SliceKind::Euclidean: return "euclidean";
    case SliceKind::MinkowskiToC: return "minkowski_c";
    case SliceKind::MinkowskiToD: return "minkowski_d";
  }
  return "?";
}

SliceKind parse_slice(std::string_view name) {
  for (SliceKind k : {SliceKind::Euclidean, SliceKind::MinkowskiToC, SliceKind::MinkowskiToD})
    if (slice_name(k) == name) return k;
  fail(ErrorCode::InvalidInput, "unknown slice '" + std::string(name) + "'");
}

CVec3 embed_domain(SliceKind kind, const RealPoint& x) {
  switch (kind) {
    case SliceKind::Euclidean: return {{x[0], x[1], x[2]}};
    case SliceKind::MinkowskiToC: return {{x[0], Complex(0, x[1]), Complex(0, x[2])}};
    case SliceKind::MinkowskiToD: return {{x[2], Complex(0, x[0]), -x[1]}};
  }
  return {};
}

WeierstrassData slice_data(SliceKind kind, const HoloFn& g, const HoloFn& h) {
  if (kind == SliceKind::Euclidean) return {g, h};
  const Bicomplex i1 = Bicomplex::i1();
  return {i1 * g, i1 * h};
}

SliceValue project_codomain(SliceKind kind, const Bicomplex& q, double tol) {
  if (kind == SliceKind::MinkowskiToD) {
    if (std::abs(q.q1.imag()) > tol || std::abs(q.q2.real()) > tol)
      fail(ErrorCode::NotInSlice, "value is not a hyperbolic number x + (y i1) i2");
    return Hyperbolic(q.q1.real(), q.q2.imag());
  }
  if (std::abs(q.q1.imag()) > tol || std::abs(q.q2.imag()) > tol)
    fail(ErrorCode::NotInSlice, "value is not in C[i2]");
  return Complex(q.q1.real(), q.q2.real());
}

double default_real_step(const RealPoint& x) {
  return 1e-3 * std::max(1.0, std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
}

WaveResidual wave_residual(SliceKind kind, const MapR3B& phi, const RealPoint& x, double h) {
  if (h <= 0.0) h = default_real_step(x);
  const std::array<double, 3> signs =
      kind == SliceKind::Euclidean ? std::array<double, 3>{1, 1, 1} : std::array<double, 3>{-1, 1, 1};
  // NotInSlice from any stencil sample propagates: the branch must stay in
  // the codomain throughout.
  if (kind == SliceKind::MinkowskiToD) {
    const std::function<Hyperbolic(const RealPoint&)> f = [&](const RealPoint& y) {
      return std::get<Hyperbolic>(project_codomain(kind, phi(y)));
    };
    return wave_residual_impl<Hyperbolic>(signs, f, x, h);
  }
  const std::function<Complex(const RealPoint&)> f = [&](const RealPoint& y) {
    return std::get<Complex>(project_codomain(kind, phi(y)));
  };
  return wave_residual_impl<Complex>(signs, f, x, h);
}

MapR3B tracked_slice_branch(SliceKind kind, const WeierstrassData& data, const Bicomplex& q, double grad_norm,
                            double h) {
  const TrackedBranch branch(data, q, 20.0 * h * std::max(1.0, grad_norm));
  return [kind, branch](const RealPoint& y) { return branch(embed_domain(kind, y)); };
}

WaveResidual wave_residual_on_branch(SliceKind kind, const WeierstrassData& data, const RealPoint& x,
                                     const CongruenceSolution& solution, double h) {
  // The five-point stencil reaches 2h, so take a third of the complex step.
  if (h <= 0.0) h = branch_fd_step(data, embed_domain(kind, x), solution) / 3.0;
  const double g = solution.has_gradient ? real_norm(solution.gradient) : 1.0;
  return wave_residual(kind, tracked_slice_branch(kind, data, solution.q, g, h), x, h);
}

std::vector<SliceSolution> solve_on_slice(SliceKind kind, const WeierstrassData& data, const RealPoint& x) {
  std::vector<SliceSolution> out;
  for (const CongruenceSolution& s : solve_phi(data, embed_domain(kind, x))) {
    try {
      out.push_back({s, project_codomain(kind, s.q)});
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInSlice) throw;
    }
  }
  return out;
}

CompactificationReport slice_compactification_check(SliceKind kind, const std::vector<RealPoint>& directions) {
  CompactificationReport rep;
  for (const RealPoint& x : directions) {
    const CVec3 z = embed_domain(kind, x);
    rep.sphere_residual = std::max(rep.sphere_residual, std::abs(square(z) - 1.0));
    const std::array<Complex, 4> zeta = s2c_to_q2c(S2CPoint{z}).zeta();
    std::array<Complex, 4> eta{};
    switch (kind) {
      case SliceKind::Euclidean: eta = zeta; break;
      case SliceKind::MinkowskiToC: eta = {zeta[0], zeta[1], -kI * zeta[2], -kI * zeta[3]}; break;
      case SliceKind::MinkowskiToD: eta = {zeta[0], -kI * zeta[2], zeta[1], zeta[3]}; break;
    }
    // zeta carries an arbitrary complex scale from normalization; realification
    // is linear, so dividing by the largest coordinate removes it.
    const Complex scale = *std::max_element(eta.begin(), eta.end(),
                                            [](Complex a, Complex b) { return std::abs(a) < std::abs(b); });
    for (Complex& e : eta) e /= scale;
    std::array<double, 4> real{};
    for (std::size_t k = 0; k < 4; ++k) {
      rep.imaginary_residual = std::max(rep.imaginary_residual, std::abs(eta[k].imag()));
      real[k] = eta[k].real();
    }
    double defect = 0.0;
    const double e0 = real[0] * real[0], e1 = real[1] * real[1], e2 = real[2] * real[2], e3 = real[3] * real[3];
    switch (kind) {
      case SliceKind::Euclidean: defect = e0 - e1 - e2 - e3; break;
      case SliceKind::MinkowskiToC: defect = e0 - e1 + e2 + e3; break;
      case SliceKind::MinkowskiToD: defect = e0 - e2 - e3 + e1; break;
    }
    rep.quadric_residual = std::max(rep.quadric_residual, std::abs(defect));
    rep.eta.push_back(real);
    ++rep.samples;
  }
  return rep;
}

}  // namespace bhm
