#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "bhm/geometry.hpp"
#include "bhm/holo_fn.hpp"

namespace bhm {

/// Weierstrass data (G, H): the congruence of fibres
///   -2G z1 + (1 - G^2) z2 + (1 + G^2) z3 i2 = 2H
/// parametrized by the bicomplex value q of the map.
struct WeierstrassData {
  HoloFn G;
  HoloFn H;
};

/// The null triple T(G) = (-2G, 1 - G^2, (1 + G^2) i2).
BVec3 direction_triple(const Bicomplex& g);

struct XiResult {
  BVec3 xi;
  bool normalized = true;  // false: 2H(q) is not a unit and xi is the bare triple T
};

/// xi(q) = T(G(q)) / (2H(q)), or T(G(q)) flagged when 2H(q) is a zero divisor.
XiResult xi_from_gh(const WeierstrassData& data, const Bicomplex& q);

enum class FibreTag { NonNullLine, DegeneratePlane, Empty };
std::string_view fibre_tag_name(FibreTag t);

struct FibreDescription {
  FibreTag tag = FibreTag::Empty;
  CVec3 base;        // NonNullLine: foot point c with <c, direction> = 0
  CVec3 direction;   // NonNullLine: gamma with gamma^2 = 1
  CVec3 normal;      // DegeneratePlane: null normal n, plane <n, z> = offset
  Complex offset{};
};

/// The fibre {z in C^3 : F(q; z) = 0}. NonNullLine when CN(G(q)) != -1;
/// otherwise DegeneratePlane if H(q) is a complex multiple of G(q), else Empty.
FibreDescription fibre_at(const WeierstrassData& data, const Bicomplex& q, double tol = 1e-10);

/// Distance-like residual of z from the fibre (infinite for Empty).
double fibre_residual(const FibreDescription& f, const CVec3& z);
/// A point of the fibre: c + t gamma on lines, p0 + t n + s m on planes.
CVec3 sample_fibre(const FibreDescription& f, Complex t, Complex s = 0.0);
/// The point of a degenerate plane used as its base (offset conj(n)/|n|^2).
CVec3 plane_base_point(const FibreDescription& f);

/// F(q; z) as a HoloFn in q for fixed z in C^3.
HoloFn congruence_fn(const WeierstrassData& data, const CVec3& z);
/// F(q; z) evaluated.
Bicomplex congruence_residual(const WeierstrassData& data, const Bicomplex& q, const CVec3& z);

struct CongruenceSolution {
  Bicomplex q;
  RinglebPair roots;           // the component roots combined into q
  int multiplicity = 1;
  bool has_gradient = false;   // false when dF/dq is not a unit
  bool partially_degenerate = false;  // exactly one Ringleb component of dF/dq vanishes
  BVec3 gradient;              // dPhi/dz_i = -T_i / F'(q)
  bool degenerate = false;     // |CN(grad)| <= tol |grad|^2 and grad != 0
  Bicomplex dF_dq;
};

/// All bicomplex roots of F(q; z) = 0 for polynomial G, H, obtained by splitting
/// into the two Ringleb component polynomials and pairing their roots. Sorted
/// by (Re e, Im e, Re f, Im f). Throws NotPolynomial for rational data and
/// DegenerateAllComponents when a component polynomial vanishes identically.
std::vector<CongruenceSolution> solve_phi(const WeierstrassData& data, const CVec3& z, double tol = 1e-9);

struct ImplicitSecondOrder {
  std::array<Bicomplex, 3> second;  // d^2 Phi / dz_i^2
  Bicomplex laplacian;              // their sum
  Bicomplex nullness;               // (grad Phi)^2
  double laplacian_scale = 0.0;     // sum_i |Phi_ii|
  double nullness_scale = 0.0;      // sum_i |Phi_i^2|
  /// |laplacian| / max(1, laplacian_scale), likewise for nullness.
  double laplacian_residual() const;
  double nullness_residual() const;
};

/// Second derivatives by implicit differentiation of F(Phi(z); z) = 0:
///   F_q Phi_ii + F_qq Phi_i^2 + 2 F_{z_i q} Phi_i = 0.
/// Requires a solution with a gradient.
ImplicitSecondOrder implicit_second_order(const WeierstrassData& data, const CVec3& z,
                                          const CongruenceSolution& sol);

/// gamma = 2 u x v / CN(grad) for grad = u + v i2; DegeneratePoint when
/// CN(grad) is negligible.
CVec3 gauss_map(const BVec3& gradient, double tol = 1e-9);

/// The foot point c of a non-null fibre (InvalidInput otherwise).
CVec3 fibre_position(const WeierstrassData& data, const Bicomplex& q, const FibreDescription& fibre);
/// (d sigma^-1)_G (H): the derivative of the inverse stereographic chart at
/// G(q) applied to H(q). Equals the fibre position on non-null fibres.
CVec3 fibre_position_differential(const WeierstrassData& data, const Bicomplex& q);

/// xi = (c + i2 (gamma x c)) / c^2 from a non-null fibre; InvalidInput when
/// the fibre is degenerate or c^2 ~ 0 (a fibre through the origin).
BVec3 xi_from_fibre(const FibreDescription& fibre, double tol = 1e-10);
std::vector<BVec3> xi_from_fibres(const std::vector<std::pair<Bicomplex, FibreDescription>>& samples,
                                  double tol = 1e-10);

}  // namespace bhm
