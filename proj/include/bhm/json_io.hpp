#pragma once

#include <string>

#include <json.hpp>

#include "bhm/bicomplex.hpp"
#include "bhm/expr.hpp"
#include "bhm/geometry.hpp"
#include "bhm/holo_fn.hpp"
#include "bhm/weierstrass.hpp"

namespace bhm::json_io {

using nlohmann::json;

// Every parse_* throws Error(Schema) naming the offending path on malformed input.

/// A number, or [re, im].
Complex parse_complex(const json& j, const std::string& path = "$");
/// A number, or [x1, x2, x3, x4] in the basis (1, i1, i2, j).
Bicomplex parse_bicomplex(const json& j, const std::string& path = "$");
/// [z1, z2, z3] with each entry as in parse_complex.
CVec3 parse_cvec3(const json& j, const std::string& path = "$");
/// Three bicomplex entries.
BVec3 parse_bvec3(const json& j, const std::string& path = "$");
double parse_real(const json& j, const std::string& path = "$");

/// {"op": add|sub|mul|div|pow|var|const, "args": [...], "value": c, "exp": n}.
/// add and mul take one or more args, sub one (negation) or two, div two,
/// pow one plus "exp". var takes an optional "index" (default 0).
Expr parse_expr(const json& j, const std::string& path = "$");
/// {"f1": expr, "f2": expr}, {"f": expr}, or a bare expr (same as {"f": expr}).
HoloFn parse_holo(const json& j, const std::string& path = "$");

json to_json(Complex c);
json to_json(const Bicomplex& q);
json to_json(const Hyperbolic& h);
json to_json(const CVec3& v);
json to_json(const BVec3& v);
json to_json(const Expr& e);
json to_json(const HoloFn& f);
json to_json(const FibreDescription& f);

/// Reads a FibreDescription as emitted by to_json.
FibreDescription parse_fibre(const json& j, const std::string& path = "$");

}  // namespace bhm::json_io
