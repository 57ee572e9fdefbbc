#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bhm/error.hpp"
#include "bhm/verify.hpp"
#include "oracles.hpp"

using namespace bhm;
using oracle::C;

namespace {

const Bicomplex one = 1.0, i1 = Bicomplex::i1(), i2 = Bicomplex::i2(), j = Bicomplex::j();
const WeierstrassData kRadial{HoloFn::identity(), HoloFn()};

/// Orthogonal projection z2 + z3 i2, written directly in components.
Bicomplex projection(const CVec3& z) { return {z[1], z[2]}; }

const CongruenceSolution& root_near(const std::vector<CongruenceSolution>& sols, const Bicomplex& q) {
  const CongruenceSolution* best = &sols.front();
  for (const auto& s : sols)
    if (oracle::dist(s.q, q) < oracle::dist(best->q, q)) best = &s;
  return *best;
}

double bdist(const BVec3& a, const BVec3& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i) s += std::norm(a[i].q1 - b[i].q1) + std::norm(a[i].q2 - b[i].q2);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("classification examples") {
  const PointClassification z = classify_point(BVec3{});
  CHECK(z.kind == PointClass::ZeroDifferential);
  CHECK(z.lambda == C(0.0));
  const PointClassification r = classify_point(BVec3{{0.0, 1.0, i2}});
  CHECK(r.kind == PointClass::Regular);
  CHECK(r.lambda == C(2.0));
  CHECK(classify_point((one + j) * BVec3{{1.0, i1, 0.0}}).kind == PointClass::Degenerate);
  CHECK(point_class_name(PointClass::Degenerate) == "Degenerate");
}

TEST_CASE("classification is a trichotomy") {
  oracle::Rng rng(61);
  for (int n = 0; n < 1000; ++n) {
    BVec3 g;
    switch (n % 3) {
      case 0: g = BVec3::from_parts(rng.cvec3(), rng.cvec3()); break;
      case 1: g = (one + j) * BVec3::from_parts(rng.cvec3(), rng.cvec3()); break;
      default: g = BVec3::from_parts(rng.cvec3(1e-12), rng.cvec3(1e-12)); break;
    }
    const PointClassification c = classify_point(g);
    const double m = bdist(g, BVec3{});
    const C lam = oracle::C(0.0) + complex_norm_vec(g);
    const int hits = (m <= 1e-9) + (m > 1e-9 && std::abs(lam) > 1e-9 * m * m) + (m > 1e-9 && std::abs(lam) <= 1e-9 * m * m);
    CHECK(hits == 1);
    if (m <= 1e-9) CHECK(c.kind == PointClass::ZeroDifferential);
    else if (std::abs(lam) > 1e-9 * m * m) CHECK(c.kind == PointClass::Regular);
    else CHECK(c.kind == PointClass::Degenerate);
    // Oracle for CN: sum of q1^2 + q2^2 per component.
    C ref = 0.0;
    for (std::size_t i = 0; i < 3; ++i) ref += g[i].q1 * g[i].q1 + g[i].q2 * g[i].q2;
    CHECK(std::abs(c.lambda - ref) <= 1e-14 * std::max(1.0, m * m));
  }
}

TEST_CASE("finite differences on orthogonal projection") {
  oracle::Rng rng(62);
  for (int n = 0; n < 50; ++n) {
    const CVec3 z = rng.cvec3(3.0);
    const PdeResidualReport r = fd_residuals(projection, z);
    CHECK(r.laplacian_residual <= 1e-8);
    CHECK(r.nullness_residual <= 1e-8);
    CHECK(r.cr_residual <= 1e-8);
    CHECK(r.classification.kind == PointClass::Regular);
    CHECK(std::abs(r.classification.lambda - 2.0) <= 1e-8);
    CHECK(bdist(r.gradient, BVec3{{0.0, 1.0, i2}}) <= 1e-9);
  }
}

TEST_CASE("finite differences on explicit maps") {
  oracle::Rng rng(63);
  // f(z2 + z3 i2) for holomorphic f is a harmonic morphism: f''(1 + i2^2) = 0.
  const HoloFn f = pow(HoloFn::identity(), 3) - 2.0 * HoloFn::identity();
  const MapC3B cubic = [&](const CVec3& z) { return f(Bicomplex(z[1], z[2])); };
  // z1^2 is holomorphic but not harmonic; conj(z1) is not holomorphic.
  const MapC3B square1 = [](const CVec3& z) { return Bicomplex(z[0] * z[0], 0.0); };
  const MapC3B anti = [](const CVec3& z) { return Bicomplex(std::conj(z[0]), 0.0); };
  for (int n = 0; n < 50; ++n) {
    const CVec3 z = rng.cvec3();
    const PdeResidualReport r = fd_residuals(cubic, z);
    CHECK(r.laplacian_residual <= 1e-6);
    CHECK(r.nullness_residual <= 1e-6);
    // The real and imaginary quotients differ by h^2 Phi''' / 3 even for
    // holomorphic maps, so the CR defect is only small against O(1).
    CHECK(r.cr_residual <= 1e-4);
    // Gradient oracle: f'(w) (0, 1, i2) with f' = 3w^2 - 2 by oracle arithmetic.
    const Bicomplex w(z[1], z[2]);
    const Bicomplex fp = oracle::sub(oracle::scale(3.0, oracle::mul(w, w)), Bicomplex(2.0));
    const BVec3 g{{0.0, fp, oracle::mul(fp, oracle::kI2)}};
    CHECK(bdist(r.gradient, g) <= 1e-6 * std::max(1.0, bdist(g, BVec3{})));

    const PdeResidualReport s = fd_residuals(square1, z);
    CHECK(std::abs(s.laplacian.q1 - 2.0) <= 1e-6);
    CHECK(s.laplacian_residual > 0.5);
    CHECK(fd_residuals(anti, z).cr_residual > 0.5);
  }
}

TEST_CASE("radial branches") {
  const CVec3 z{{0.0, 1.0, 0.0}};
  const auto sols = solve_phi(kRadial, z);
  const PdeResidualReport plus = fd_residuals_on_branch(kRadial, z, root_near(sols, one));
  CHECK(plus.laplacian_residual <= 1e-6);
  CHECK(plus.nullness_residual <= 1e-6);
  CHECK(plus.classification.kind == PointClass::Regular);
  const PdeResidualReport jb = fd_residuals_on_branch(kRadial, z, root_near(sols, j));
  CHECK(jb.classification.kind == PointClass::Degenerate);
  CHECK(jb.laplacian_residual <= 1e-6);
  CHECK(jb.nullness_residual <= 1e-6);
  // A tiny jump radius: the nearest root at a distant point is far away.
  const TrackedBranch tight(kRadial, one, 1e-6);
  CHECK(oracle::dist(tight(z), one) < 1e-12);
  ErrorCode code = ErrorCode::Ok;
  try {
    tight(CVec3{{1.0, 2.0, 0.5}});
  } catch (const Error& e) {
    code = e.code();
  }
  CHECK(code == ErrorCode::BranchJump);
}

TEST_CASE("finite-difference gradients agree with implicit gradients") {
  oracle::Rng rng(64);
  int checked = 0;
  for (int n = 0; n < 100; ++n) {
    const WeierstrassData d{HoloFn(Expr::constant(rng.complex()) + Expr::constant(rng.complex()) * Expr::variable(0),
                                   Expr::power(Expr::variable(0), 2) * Expr::constant(rng.complex())),
                            HoloFn::extension(Expr::constant(rng.complex()) * Expr::variable(0))};
    const CVec3 z = rng.cvec3();
    for (const auto& s : solve_phi(d, z)) {
      if (!s.has_gradient || s.degenerate || s.multiplicity > 1) continue;
      const double gm = bdist(s.gradient, BVec3{});
      if (gm > 20.0) continue;
      const PdeResidualReport r = fd_residuals_on_branch(d, z, s, 1e-6);
      CHECK(bdist(r.gradient, s.gradient) <= 1e-5 * std::max(1.0, gm));
      ++checked;
    }
  }
  CHECK(checked > 150);
}

TEST_CASE("solutions of the congruence satisfy both equations") {
  oracle::Rng rng(65);
  int checked = 0;
  for (int n = 0; n < 60; ++n) {
    const WeierstrassData d = n % 2 ? kRadial
                                    : WeierstrassData{HoloFn::identity(), HoloFn::constant(Bicomplex(0.0, rng.complex())) * HoloFn::identity()};
    const CVec3 z = rng.cvec3();
    for (const auto& s : solve_phi(d, z)) {
      if (!s.has_gradient || s.multiplicity > 1) continue;
      const PdeResidualReport r = fd_residuals_on_branch(d, z, s);
      CHECK(r.laplacian_residual <= 1e-6);
      CHECK(r.nullness_residual <= 1e-6);
      CHECK(r.cr_residual <= 1e-4);
      CHECK(r.classification.kind == (s.degenerate ? PointClass::Degenerate : PointClass::Regular));
      ++checked;
    }
  }
  CHECK(checked > 150);
}

TEST_CASE("rank one maps into C[i1] are degenerate") {
  oracle::Rng rng(66);
  std::vector<CVec3> pts;
  for (int n = 0; n < 30; ++n) pts.push_back(rng.cvec3());
  const RankOneReport a = rank_one_degeneracy_check([](const CVec3& z) { return Bicomplex(z[0] + C(0, 1) * z[1], 0.0); }, pts);
  CHECK(a.applicable);
  CHECK(a.holds());
  CHECK(a.degenerate == 30);
  CHECK(a.max_rank == 1);
  const RankOneReport c = rank_one_degeneracy_check([](const CVec3&) { return Bicomplex(2.0, 0.0); }, pts);
  CHECK(c.zero_differential == 30);
  CHECK(c.holds());
  const RankOneReport p = rank_one_degeneracy_check(projection, pts);
  CHECK(!p.applicable);
  CHECK(p.max_rank == 2);
  CHECK(!p.holds());
  // A nonlinear null example: (z1 + i z2)^2 stays degenerate.
  const RankOneReport s = rank_one_degeneracy_check(
      [](const CVec3& z) {
        const C w = z[0] + C(0, 1) * z[1];
        return Bicomplex(w * w, 0.0);
      },
      pts);
  CHECK(s.holds());
}
