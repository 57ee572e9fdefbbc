#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "bhm/geometry.hpp"
#include "bhm/weierstrass.hpp"

namespace bhm {

enum class PointClass { ZeroDifferential, Regular, Degenerate };
std::string_view point_class_name(PointClass c);

struct PointClassification {
  PointClass kind = PointClass::ZeroDifferential;
  Complex lambda{};  // square dilation, CN(grad)
};

/// ZeroDifferential if |grad| <= tol, Regular if |CN(grad)| > tol |grad|^2,
/// Degenerate otherwise.
PointClassification classify_point(const BVec3& gradient, double tol = 1e-9);

/// A map C^3 -> B that can be sampled pointwise.
using MapC3B = std::function<Bicomplex(const CVec3&)>;

/// Residuals are reported relative to the size of the summed terms with a
/// floor of 1, e.g. |sum_k Phi_kk| / max(1, sum_k |Phi_kk|), so that they are
/// absolute for O(1) data and scale-free where derivatives are large. The
/// *_abs fields keep the raw magnitudes.
struct PdeResidualReport {
  double laplacian_residual = 0.0;
  double nullness_residual = 0.0;
  double cr_residual = 0.0;         // max_k holomorphy defect in z_k, relative to max(1, |grad|);
                                    // includes the O(h^2 Phi''') truncation of the two quotients
  double laplacian_abs = 0.0;       // |sum_k d^2 Phi / dz_k^2|
  double nullness_abs = 0.0;        // |sum_k (d Phi / dz_k)^2|
  PointClassification classification;
  BVec3 gradient;                   // finite-difference gradient
  Bicomplex laplacian;
};

/// Default complex finite-difference step, 1e-3 max(1, |z|).
double default_fd_step(const CVec3& z);

/// Residuals of the complex-Laplace and nullness equations by central
/// differences. Each z_k is stepped along the real and the imaginary axis
/// (13 samples); combining the two directions cancels the h^2 error terms of
/// both derivatives. h <= 0 selects default_fd_step(z).
PdeResidualReport fd_residuals(const MapC3B& phi, const CVec3& z, double h = 0.0, double class_tol = 1e-9);

/// One branch of the implicit map defined by solve_phi, continued from a
/// known root at a centre point by choosing the nearest root. Throws
/// BranchJump when the nearest root moved further than jump_radius.
class TrackedBranch {
 public:
  TrackedBranch(WeierstrassData data, const Bicomplex& root, double jump_radius);
  Bicomplex operator()(const CVec3& z) const;

 private:
  WeierstrassData data_;
  Bicomplex root_;
  double jump_radius_;
};

/// Step for a tracked branch: 3e-3 times the smaller of max(1, |z|) and the
/// local length scale |grad| / max_i |Phi_ii| from the implicit derivatives.
double branch_fd_step(const WeierstrassData& data, const CVec3& z, const CongruenceSolution& solution);

/// fd_residuals along the tracked branch through `solution` at z, with the
/// jump radius 10 h max(1, |grad|). h <= 0 selects branch_fd_step.
PdeResidualReport fd_residuals_on_branch(const WeierstrassData& data, const CVec3& z,
                                         const CongruenceSolution& solution, double h = 0.0);

struct RankOneReport {
  bool applicable = true;   // values stayed in embedded C[i1]
  int max_rank = 0;         // largest complex rank of the differential seen
  int zero_differential = 0;
  int regular = 0;
  int degenerate = 0;
  /// Every sample with nonzero differential classified Degenerate.
  bool holds() const { return applicable && regular == 0; }
};

/// Checks that a map into embedded C[i1] (second i2-component identically 0)
/// is degenerate wherever its differential is nonzero.
RankOneReport rank_one_degeneracy_check(const MapC3B& phi, const std::vector<CVec3>& points, double tol = 1e-8);

}  // namespace bhm
