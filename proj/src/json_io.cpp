#include "bhm/json_io.hpp"

#include <cmath>

#include "bhm/error.hpp"

namespace bhm::json_io {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  fail(ErrorCode::Schema, path + ": " + what);
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema(path, std::string("missing \"") + key + "\"");
  return *it;
}

Expr fold(const json& args, const std::string& path, Expr (*op)(const Expr&, const Expr&)) {
  Expr acc = parse_expr(args[0], path + ".args[0]");
  for (std::size_t i = 1; i < args.size(); ++i) acc = op(acc, parse_expr(args[i], path + ".args[" + std::to_string(i) + "]"));
  return acc;
}

}  // namespace

double parse_real(const json& j, const std::string& path) {
  if (!j.is_number()) schema(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) schema(path, "non-finite number");
  return v;
}

Complex parse_complex(const json& j, const std::string& path) {
  if (j.is_number()) return parse_real(j, path);
  if (!j.is_array() || j.size() != 2) schema(path, "expected a number or [re, im]");
  return {parse_real(j[0], path + "[0]"), parse_real(j[1], path + "[1]")};
}

Bicomplex parse_bicomplex(const json& j, const std::string& path) {
  if (j.is_number()) return parse_real(j, path);
  if (!j.is_array() || j.size() != 4) schema(path, "expected a number or [x1, x2, x3, x4]");
  return Bicomplex::from_real4(parse_real(j[0], path + "[0]"), parse_real(j[1], path + "[1]"),
                               parse_real(j[2], path + "[2]"), parse_real(j[3], path + "[3]"));
}

CVec3 parse_cvec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) schema(path, "expected [z1, z2, z3]");
  CVec3 v;
  for (std::size_t k = 0; k < 3; ++k) v[k] = parse_complex(j[k], path + "[" + std::to_string(k) + "]");
  return v;
}

BVec3 parse_bvec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) schema(path, "expected three bicomplex entries");
  BVec3 v;
  for (std::size_t k = 0; k < 3; ++k) v[k] = parse_bicomplex(j[k], path + "[" + std::to_string(k) + "]");
  return v;
}

Expr parse_expr(const json& j, const std::string& path) {
  const json& opj = member(j, "op", path);
  if (!opj.is_string()) schema(path + ".op", "expected a string");
  const std::string op = opj.get<std::string>();

  if (op == "const") return Expr::constant(parse_complex(member(j, "value", path), path + ".value"));
  if (op == "var") {
    const auto it = j.find("index");
    if (it == j.end()) return Expr::variable(0);
    if (!it->is_number_integer() || it->get<long long>() < 0 || it->get<long long>() > 1)
      schema(path + ".index", "expected 0 or 1");
    return Expr::variable(it->get<int>());
  }

  if (op != "add" && op != "sub" && op != "mul" && op != "div" && op != "pow")
    schema(path + ".op", "unknown op \"" + op + "\"");
  const json& args = member(j, "args", path);
  if (!args.is_array()) schema(path + ".args", "expected an array");
  const std::size_t n = args.size();
  auto need = [&](bool ok, const char* what) {
    if (!ok) schema(path + ".args", std::string("\"") + op + "\" takes " + what);
  };
  auto arg = [&](std::size_t i) { return parse_expr(args[i], path + ".args[" + std::to_string(i) + "]"); };

  if (op == "add") {
    need(n >= 1, "one or more arguments");
    return fold(args, path, [](const Expr& a, const Expr& b) { return a + b; });
  }
  if (op == "mul") {
    need(n >= 1, "one or more arguments");
    return fold(args, path, [](const Expr& a, const Expr& b) { return a * b; });
  }
  if (op == "sub") {
    need(n == 1 || n == 2, "one or two arguments");
    return n == 1 ? -arg(0) : arg(0) - arg(1);
  }
  if (op == "div") {
    need(n == 2, "two arguments");
    return arg(0) / arg(1);
  }
  // pow
  need(n == 1, "one argument");
  const json& e = member(j, "exp", path);
  if (!e.is_number_integer()) schema(path + ".exp", "expected an integer");
  const long long k = e.get<long long>();
  if (k < -1000 || k > 1000) schema(path + ".exp", "exponent out of range");
  return Expr::power(arg(0), static_cast<int>(k));
}

HoloFn parse_holo(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected a HoloFn object");
  if (j.contains("op")) return HoloFn::extension(parse_expr(j, path));
  if (j.contains("f")) {
    if (j.contains("f1") || j.contains("f2")) schema(path, "\"f\" excludes \"f1\"/\"f2\"");
    return HoloFn::extension(parse_expr(j["f"], path + ".f"));
  }
  return {parse_expr(member(j, "f1", path), path + ".f1"), parse_expr(member(j, "f2", path), path + ".f2")};
}

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(const Bicomplex& q) {
  const auto r = q.real4();
  return json::array({r[0], r[1], r[2], r[3]});
}

json to_json(const Hyperbolic& h) { return json::array({h.x, h.y}); }

json to_json(const CVec3& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

json to_json(const BVec3& v) { return json::array({to_json(v[0]), to_json(v[1]), to_json(v[2])}); }

json to_json(const Expr& e) {
  switch (e.op()) {
    case Expr::Op::Const: return {{"op", "const"}, {"value", to_json(e.value())}};
    case Expr::Op::Var:
      if (e.var_index() == 0) return {{"op", "var"}};
      return {{"op", "var"}, {"index", e.var_index()}};
    case Expr::Op::Pow: return {{"op", "pow"}, {"args", json::array({to_json(e.arg(0))})}, {"exp", e.exponent()}};
    case Expr::Op::Add:
    case Expr::Op::Sub:
    case Expr::Op::Mul:
    case Expr::Op::Div: break;
  }
  const char* name = e.op() == Expr::Op::Add ? "add" : e.op() == Expr::Op::Sub ? "sub" : e.op() == Expr::Op::Mul ? "mul" : "div";
  json args = json::array();
  for (std::size_t i = 0; i < e.arity(); ++i) args.push_back(to_json(e.arg(i)));
  return {{"op", name}, {"args", std::move(args)}};
}

json to_json(const HoloFn& f) { return {{"f1", to_json(f.f1())}, {"f2", to_json(f.f2())}}; }

json to_json(const FibreDescription& f) {
  json j = {{"tag", std::string(fibre_tag_name(f.tag))}};
  switch (f.tag) {
    case FibreTag::NonNullLine:
      j["base"] = to_json(f.base);
      j["direction"] = to_json(f.direction);
      break;
    case FibreTag::DegeneratePlane:
      j["base"] = to_json(plane_base_point(f));
      j["normal"] = to_json(f.normal);
      j["offset"] = to_json(f.offset);
      break;
    case FibreTag::Empty: break;
  }
  return j;
}

FibreDescription parse_fibre(const json& j, const std::string& path) {
  const json& t = member(j, "tag", path);
  if (!t.is_string()) schema(path + ".tag", "expected a string");
  FibreDescription f;
  const std::string tag = t.get<std::string>();
  if (tag == fibre_tag_name(FibreTag::NonNullLine)) {
    f.tag = FibreTag::NonNullLine;
    f.base = parse_cvec3(member(j, "base", path), path + ".base");
    f.direction = parse_cvec3(member(j, "direction", path), path + ".direction");
  } else if (tag == fibre_tag_name(FibreTag::DegeneratePlane)) {
    f.tag = FibreTag::DegeneratePlane;
    f.normal = parse_cvec3(member(j, "normal", path), path + ".normal");
    f.offset = parse_complex(member(j, "offset", path), path + ".offset");
  } else if (tag == fibre_tag_name(FibreTag::Empty)) {
    f.tag = FibreTag::Empty;
  } else {
    schema(path + ".tag", "unknown fibre tag \"" + tag + "\"");
  }
  return f;
}

}  // namespace bhm::json_io
