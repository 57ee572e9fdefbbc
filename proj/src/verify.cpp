#include "bhm/verify.hpp"

#include <algorithm>
#include <limits>

#include "bhm/error.hpp"

namespace bhm {

std::string_view point_class_name(PointClass c) {
  switch (c) {
    case PointClass::ZeroDifferential: return "ZeroDifferential";
    case PointClass::Regular: return "Regular";
    case PointClass::Degenerate: return "Degenerate";
  }
  return "?";
}

PointClassification classify_point(const BVec3& gradient, double tol) {
  const double n = real_norm(gradient);
  PointClassification c;
  c.lambda = complex_norm_vec(gradient);
  if (n <= tol) c.kind = PointClass::ZeroDifferential;
  else if (std::abs(c.lambda) > tol * n * n) c.kind = PointClass::Regular;
  else c.kind = PointClass::Degenerate;
  return c;
}

double default_fd_step(const CVec3& z) { return 1e-3 * std::max(1.0, norm(z)); }

PdeResidualReport fd_residuals(const MapC3B& phi, const CVec3& z, double h, double class_tol) {
  if (h <= 0.0) h = default_fd_step(z);
  const Bicomplex i1 = Bicomplex::i1();
  PdeResidualReport r;
  r.laplacian = 0.0;
  double lap_scale = 0.0, cr = 0.0;
  for (std::size_t k = 0; k < 3; ++k) {
    CVec3 zp = z, zm = z, zip = z, zim = z;
    zp[k] += h;
    zm[k] -= h;
    zip[k] += Complex(0, h);
    zim[k] -= Complex(0, h);
    const Bicomplex fp = phi(zp), fm = phi(zm), fip = phi(zip), fim = phi(zim);
    const Bicomplex d_re = fp - fm;    // ~ 2h Phi'
    const Bicomplex d_im = fip - fim;  // ~ 2ih Phi'
    // d_im / (2ih) = -i1 d_im / (2h).
    const Bicomplex along_re = (0.5 / h) * d_re;
    const Bicomplex along_im = (-0.5 / h) * (i1 * d_im);
    r.gradient[k] = 0.5 * (along_re + along_im);
    cr = std::max(cr, real_norm(along_re - along_im));
    const Bicomplex second = (0.5 / (h * h)) * ((fp + fm) - (fip + fim));
    r.laplacian += second;
    lap_scale += real_norm(second);
  }
  double null_scale = 0.0;
  for (std::size_t k = 0; k < 3; ++k) null_scale += real_norm(r.gradient[k] * r.gradient[k]);
  r.laplacian_abs = real_norm(r.laplacian);
  r.nullness_abs = real_norm(square_B(r.gradient));
  r.laplacian_residual = r.laplacian_abs / std::max(1.0, lap_scale);
  r.nullness_residual = r.nullness_abs / std::max(1.0, null_scale);
  r.cr_residual = cr / std::max(1.0, real_norm(r.gradient));
  r.classification = classify_point(r.gradient, class_tol);
  return r;
}

TrackedBranch::TrackedBranch(WeierstrassData data, const Bicomplex& root, double jump_radius)
    : data_(std::move(data)), root_(root), jump_radius_(jump_radius) {}

Bicomplex TrackedBranch::operator()(const CVec3& z) const {
  const auto sols = solve_phi(data_, z);
  double best = std::numeric_limits<double>::infinity();
  Bicomplex q;
  for (const auto& s : sols) {
    const double d = real_norm(s.q - root_);
    if (d < best) {
      best = d;
      q = s.q;
    }
  }
  if (!(best <= jump_radius_)) fail(ErrorCode::BranchJump, "tracked root jumped between stencil points");
  return q;
}

double branch_fd_step(const WeierstrassData& data, const CVec3& z, const CongruenceSolution& solution) {
  double ell = std::max(1.0, norm(z));
  if (solution.has_gradient) {
    const ImplicitSecondOrder so = implicit_second_order(data, z, solution);
    double m2 = 0.0;
    for (const Bicomplex& s : so.second) m2 = std::max(m2, real_norm(s));
    if (m2 > 0.0) ell = std::min(ell, real_norm(solution.gradient) / m2);
  }
  return 3e-3 * ell;
}

PdeResidualReport fd_residuals_on_branch(const WeierstrassData& data, const CVec3& z,
                                         const CongruenceSolution& solution, double h) {
  if (h <= 0.0) h = branch_fd_step(data, z, solution);
  const double g = solution.has_gradient ? real_norm(solution.gradient) : 1.0;
  const TrackedBranch branch(data, solution.q, 10.0 * h * std::max(1.0, g));
  return fd_residuals(std::cref(branch), z, h);
}

RankOneReport rank_one_degeneracy_check(const MapC3B& phi, const std::vector<CVec3>& points, double tol) {
  RankOneReport rep;
  for (const CVec3& z : points) {
    const PdeResidualReport r = fd_residuals(phi, z);
    if (std::abs(phi(z).q2) > tol || std::abs(r.gradient[0].q2) + std::abs(r.gradient[1].q2) + std::abs(r.gradient[2].q2) > tol)
      rep.applicable = false;
    // Complex rank of the 2x3 matrix with rows u, v (grad = u + v i2).
    const CVec3 u = r.gradient.u(), v = r.gradient.v();
    int rank = 0;
    if (norm(cross(u, v)) > tol * std::max(1.0, norm(u) * norm(v))) rank = 2;
    else if (std::max(norm(u), norm(v)) > tol) rank = 1;
    rep.max_rank = std::max(rep.max_rank, rank);
    switch (r.classification.kind) {
      case PointClass::ZeroDifferential: ++rep.zero_differential; break;
      case PointClass::Regular: ++rep.regular; break;
      case PointClass::Degenerate: ++rep.degenerate; break;
    }
  }
  return rep;
}

}  // namespace bhm
