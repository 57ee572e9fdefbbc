#pragma once

#include <array>
#include <functional>
#include <string_view>
#include <variant>
#include <vector>

#include "bhm/geometry.hpp"
#include "bhm/verify.hpp"
#include "bhm/weierstrass.hpp"

namespace bhm {

/// Real reductions of the complex picture:
///   Euclidean    R^3   -> C[i2]  z = (x1, x2, x3)
///   MinkowskiToC R^3_1 -> C[i2]  z = (x1, x2 i1, x3 i1)
///   MinkowskiToD R^3_1 -> D      z = (x3, x1 i1, -x2)
/// In both Minkowski cases x1 is the timelike coordinate.
enum class SliceKind { Euclidean, MinkowskiToC, MinkowskiToD };

std::string_view slice_name(SliceKind k);  // "euclidean", "minkowski_c", "minkowski_d"
SliceKind parse_slice(std::string_view name);

using RealPoint = std::array<double, 3>;

CVec3 embed_domain(SliceKind kind, const RealPoint& x);

/// (G, H) = (g, h) for Euclidean, (g i1, h i1) for both Minkowski kinds.
WeierstrassData slice_data(SliceKind kind, const HoloFn& g, const HoloFn& h);

using SliceValue = std::variant<Complex, Hyperbolic>;

/// The real-case value of q: x + y i for q = x + y i2 (Euclidean, ToC), or
/// x + y j for q = x + (y i1) i2 (ToD). NotInSlice when the excluded
/// components exceed tol.
SliceValue project_codomain(SliceKind kind, const Bicomplex& q, double tol = 1e-8);

/// A map from real 3-space to B (typically a tracked branch on the slice).
using MapR3B = std::function<Bicomplex(const RealPoint&)>;

/// Residuals relative to max(1, sum of term magnitudes), as in
/// PdeResidualReport; the *_abs fields keep the raw values.
struct WaveResidual {
  double harmonic = 0.0;
  double null = 0.0;
  double harmonic_abs = 0.0;  // |sum_k s_k d^2 phi / dx_k^2|
  double null_abs = 0.0;      // |sum_k s_k (d phi / dx_k)^2|
};

/// Default real step, 1e-3 max(1, |x|).
double default_real_step(const RealPoint& x);

/// Residuals of the Laplace (Euclidean) or wave (Minkowski, signs - + +)
/// equation and its nullness condition by fourth-order central differences,
/// computed in the codomain's own arithmetic after project_codomain.
WaveResidual wave_residual(SliceKind kind, const MapR3B& phi, const RealPoint& x, double h = 0.0);

/// The tracked branch through q at the embedded point, as a map on the slice.
/// The jump radius covers the two-step stencil.
MapR3B tracked_slice_branch(SliceKind kind, const WeierstrassData& data, const Bicomplex& q, double grad_norm,
                            double h);

/// wave_residual along the tracked branch through a solution at the embedded
/// point; h <= 0 selects a third of branch_fd_step at the embedded point, since
/// the five-point stencil reaches 2h.
WaveResidual wave_residual_on_branch(SliceKind kind, const WeierstrassData& data, const RealPoint& x,
                                     const CongruenceSolution& solution, double h = 0.0);

struct SliceSolution {
  CongruenceSolution solution;
  SliceValue value;
};

/// solve_phi at the embedded point, keeping the roots that lie in the
/// slice's codomain.
std::vector<SliceSolution> solve_on_slice(SliceKind kind, const WeierstrassData& data, const RealPoint& x);

struct CompactificationReport {
  std::size_t samples = 0;
  double sphere_residual = 0.0;     // max |z^2 - 1| of the embedded directions
  double quadric_residual = 0.0;    // max defect of the real quadric equation
  double imaginary_residual = 0.0;  // max imaginary part after realification
  std::vector<std::array<double, 4>> eta;  // realified homogeneous coordinates
};

/// Embeds real unit directions (on S^2, H^2 or S^2_1 respectively) into
/// S2_C, maps them to Q2_C and checks the real quadric of the slice:
///   Euclidean eta = zeta,                       eta0^2 = eta1^2 + eta2^2 + eta3^2
///   ToC       eta = (zeta0, zeta1, -i zeta2, -i zeta3),  eta0^2 = eta1^2 - eta2^2 - eta3^2
///   ToD       eta = (zeta0, -i zeta2, zeta1, zeta3),    eta0^2 = eta2^2 + eta3^2 - eta1^2
CompactificationReport slice_compactification_check(SliceKind kind, const std::vector<RealPoint>& directions);

}  // namespace bhm
