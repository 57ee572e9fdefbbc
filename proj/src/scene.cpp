#include "bhm/scene.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <thread>
#include <vector>

#include "bhm/error.hpp"
#include "bhm/json_io.hpp"
#include "bhm/polynomial.hpp"
#include "bhm/real_slices.hpp"
#include "bhm/verify.hpp"
#include "bhm/weierstrass.hpp"

namespace bhm {

namespace {

using json_io::json;
using json_io::to_json;

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  fail(ErrorCode::Schema, path + ": " + what);
}

struct Settings {
  double tol = 1e-9;
  double fibre_tol = 1e-8;
  std::uint64_t seed = 1;
  int threads = 1;
  bool csv = false;
};

int resolve_threads(int requested) {
  int n = requested;
  if (n <= 0) {
    if (const char* env = std::getenv("BHM_THREADS")) {
      const std::string s(env);
      int v = 0;
      const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec == std::errc() && p == s.data() + s.size() && v > 0) n = v;
    }
  }
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

/// Evaluates fn(i) for i < n on up to `threads` workers. Results land in slot
/// i, so the output does not depend on scheduling; the exception of the
/// lowest failing index is rethrown.
std::vector<json> parallel_map(std::size_t n, int threads, const std::function<json(std::size_t)>& fn) {
  std::vector<json> out(n);
  std::vector<std::exception_ptr> errs(n);
  const std::size_t workers = std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  auto work = [&](std::size_t w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errs[i] = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

json error_json(ErrorCode code, const std::string& message) {
  return {{"code", error_code_name(code)}, {"message", message}};
}

/// Runs fn, turning a domain error into an inline {"error": ...} entry.
/// Schema errors still abort the run.
json inline_errors(const std::function<json()>& fn, json base = json::object()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Schema) throw;
    base["error"] = error_json(e.code(), e.what());
    return base;
  }
}

template <class T, class Parse>
T parse_name(const json& j, const std::string& path, Parse parse) {
  if (!j.is_string()) schema(path, "expected a string");
  try {
    return parse(j.get<std::string>());
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

const json& member(const json& doc, const char* key, const std::string& path = "$") {
  const auto it = doc.find(key);
  if (it == doc.end()) schema(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::size_t parse_count(const json& j, const std::string& path, std::size_t max) {
  if (!j.is_number_integer() || j.get<long long>() < 1 || static_cast<std::size_t>(j.get<long long>()) > max)
    schema(path, "expected an integer in [1, " + std::to_string(max) + "]");
  return static_cast<std::size_t>(j.get<long long>());
}

constexpr std::size_t kMaxItems = 1000000;

struct RandomSpec {
  std::size_t count = 0;
  double scale = 1.0;
};

RandomSpec parse_random(const json& j, const std::string& path) {
  if (!j.is_object()) schema(path, "expected {\"count\": n, \"scale\": s}");
  RandomSpec r;
  r.count = parse_count(member(j, "count", path), path + ".count", kMaxItems);
  if (j.contains("scale")) r.scale = json_io::parse_real(j["scale"], path + ".scale");
  return r;
}

/// Reals from a list, or draws count * dim standard normals times scale.
std::vector<double> random_normals(const RandomSpec& r, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(r.count * dim);
  for (double& x : v) x = r.scale * nd(rng);
  return v;
}

bool is_random(const json& j) { return j.is_object() && j.contains("random"); }

std::vector<CVec3> parse_points(const json& j, const std::string& path, const Settings& s) {
  std::vector<CVec3> pts;
  if (is_random(j)) {
    const RandomSpec r = parse_random(j["random"], path + ".random");
    const auto v = random_normals(r, 6, s.seed);
    for (std::size_t i = 0; i < r.count; ++i)
      pts.push_back({{Complex(v[6 * i], v[6 * i + 1]), Complex(v[6 * i + 2], v[6 * i + 3]),
                      Complex(v[6 * i + 4], v[6 * i + 5])}});
    return pts;
  }
  if (!j.is_array()) schema(path, "expected an array of points or {\"random\": ...}");
  if (j.size() > kMaxItems) schema(path, "too many points");
  for (std::size_t i = 0; i < j.size(); ++i) pts.push_back(json_io::parse_cvec3(j[i], path + "[" + std::to_string(i) + "]"));
  return pts;
}

std::vector<Bicomplex> parse_samples(const json& j, const std::string& path, const Settings& s) {
  std::vector<Bicomplex> qs;
  if (is_random(j)) {
    const RandomSpec r = parse_random(j["random"], path + ".random");
    const auto v = random_normals(r, 4, s.seed);
    for (std::size_t i = 0; i < r.count; ++i)
      qs.push_back(Bicomplex::from_real4(v[4 * i], v[4 * i + 1], v[4 * i + 2], v[4 * i + 3]));
    return qs;
  }
  if (!j.is_array()) schema(path, "expected an array of bicomplex values or {\"random\": ...}");
  if (j.size() > kMaxItems) schema(path, "too many samples");
  for (std::size_t i = 0; i < j.size(); ++i) qs.push_back(json_io::parse_bicomplex(j[i], path + "[" + std::to_string(i) + "]"));
  return qs;
}

std::vector<RealPoint> parse_real_points(const json& doc, const Settings& s) {
  std::vector<RealPoint> pts;
  if (doc.contains("grid")) {
    const json& g = doc["grid"];
    if (!g.is_object()) schema("$.grid", "expected {\"min\", \"max\", \"counts\"}");
    RealPoint lo, hi;
    std::array<std::size_t, 3> n{};
    for (const char* key : {"min", "max", "counts"})
      if (!member(g, key, "$.grid").is_array() || g[key].size() != 3)
        schema(std::string("$.grid.") + key, "expected three entries");
    for (std::size_t k = 0; k < 3; ++k) {
      const std::string idx = "[" + std::to_string(k) + "]";
      lo[k] = json_io::parse_real(g["min"][k], "$.grid.min" + idx);
      hi[k] = json_io::parse_real(g["max"][k], "$.grid.max" + idx);
      n[k] = parse_count(g["counts"][k], "$.grid.counts" + idx, 1000);
    }
    if (n[0] * n[1] * n[2] > kMaxItems) schema("$.grid.counts", "grid too large");
    auto coord = [&](std::size_t k, std::size_t i) {
      return n[k] == 1 ? lo[k] : lo[k] + (hi[k] - lo[k]) * static_cast<double>(i) / static_cast<double>(n[k] - 1);
    };
    for (std::size_t a = 0; a < n[0]; ++a)
      for (std::size_t b = 0; b < n[1]; ++b)
        for (std::size_t c = 0; c < n[2]; ++c) pts.push_back({coord(0, a), coord(1, b), coord(2, c)});
    return pts;
  }
  const json& p = member(doc, "points");
  if (is_random(p)) {
    const RandomSpec r = parse_random(p["random"], "$.points.random");
    const auto v = random_normals(r, 3, s.seed);
    for (std::size_t i = 0; i < r.count; ++i) pts.push_back({v[3 * i], v[3 * i + 1], v[3 * i + 2]});
    return pts;
  }
  if (!p.is_array()) schema("$.points", "expected an array of real points");
  if (p.size() > kMaxItems) schema("$.points", "too many points");
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::string path = "$.points[" + std::to_string(i) + "]";
    if (!p[i].is_array() || p[i].size() != 3) schema(path, "expected [x1, x2, x3]");
    pts.push_back({json_io::parse_real(p[i][0], path + "[0]"), json_io::parse_real(p[i][1], path + "[1]"),
                   json_io::parse_real(p[i][2], path + "[2]")});
  }
  return pts;
}

WeierstrassData parse_data(const json& doc) {
  return {json_io::parse_holo(member(doc, "G"), "$.G"), json_io::parse_holo(member(doc, "H"), "$.H")};
}

// ---- CSV helpers ----------------------------------------------------------

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (x == 0.0) x = 0.0;  // drop the sign of zero
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

/// Flattens nested numeric arrays into CSV cells; null becomes nan cells.
void flatten(const json& j, std::vector<std::string>& cells, std::size_t null_width = 0) {
  if (j.is_null()) {
    for (std::size_t i = 0; i < null_width; ++i) cells.push_back("nan");
  } else if (j.is_array()) {
    for (const auto& e : j) flatten(e, cells);
  } else if (j.is_number()) {
    cells.push_back(num(j.get<double>()));
  } else if (j.is_boolean()) {
    cells.push_back(j.get<bool>() ? "1" : "0");
  } else if (j.is_string()) {
    cells.push_back(j.get<std::string>());
  }
}

json get_or_null(const json& j, const char* key) { return j.contains(key) ? j[key] : json(); }

std::string join(const std::vector<std::string>& cells) {
  std::string s;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) s += ',';
    s += cells[i];
  }
  return s + "\n";
}

std::string header(std::initializer_list<const char*> groups) {
  std::vector<std::string> cells(groups.begin(), groups.end());
  return join(cells);
}

// ---- tasks ----------------------------------------------------------------

json class_json(const PointClassification& c) {
  return {{"class", std::string(point_class_name(c.kind))}, {"lambda", to_json(c.lambda)}};
}

json solution_json(const WeierstrassData& data, const CongruenceSolution& s, double tol) {
  json j = {{"q", to_json(s.q)},
            {"ringleb", json::array({to_json(s.roots.e_part), to_json(s.roots.f_part)})},
            {"multiplicity", s.multiplicity},
            {"has_gradient", s.has_gradient},
            {"partially_degenerate", s.partially_degenerate},
            {"degenerate", s.degenerate}};
  if (s.has_gradient) {
    const PointClassification c = classify_point(s.gradient, tol);
    j["gradient"] = to_json(s.gradient);
    j.update(class_json(c));
    j["gauss"] = c.kind == PointClass::Regular ? to_json(gauss_map(s.gradient, tol)) : json();
  } else {
    j["gradient"] = nullptr;
    j["class"] = nullptr;
    j["lambda"] = nullptr;
    j["gauss"] = nullptr;
  }
  j["fibre"] = inline_errors([&] { return to_json(fibre_at(data, s.q)); });
  return j;
}

void check_polynomial(const WeierstrassData& data) {
  // Whole-document failure: solving needs polynomial data everywhere.
  const HoloFn F = congruence_fn(data, {{Complex(0.3, 0.1), Complex(-0.2, 0.4), Complex(0.5, -0.7)}});
  (void)to_polynomial(F.f1());
  (void)to_polynomial(F.f2());
}

std::string solve_csv(const std::vector<json>& results) {
  std::string out = header({"point", "z1_re", "z1_im", "z2_re", "z2_im", "z3_re", "z3_im", "q_x1", "q_x2", "q_x3",
                            "q_x4", "multiplicity", "class", "lambda_re", "lambda_im", "degenerate", "fibre"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    const json& r = results[i];
    std::vector<std::string> prefix{std::to_string(i)};
    flatten(r["z"], prefix);
    if (r.contains("error")) {
      auto cells = prefix;
      for (int k = 0; k < 5; ++k) cells.push_back("nan");
      cells.push_back(r["error"]["code"].get<std::string>());
      for (int k = 0; k < 4; ++k) cells.push_back("nan");
      out += join(cells);
      continue;
    }
    for (const json& s : r["solutions"]) {
      auto cells = prefix;
      flatten(s["q"], cells);
      flatten(s["multiplicity"], cells);
      cells.push_back(s["class"].is_null() ? "NoGradient" : s["class"].get<std::string>());
      flatten(s["lambda"], cells, 2);
      flatten(s["degenerate"], cells);
      const json& f = s["fibre"];
      cells.push_back(f.contains("tag") ? f["tag"].get<std::string>() : f["error"]["code"].get<std::string>());
      out += join(cells);
    }
  }
  return out;
}

std::string task_solve(const json& doc, const Settings& s, json& report) {
  const WeierstrassData data = parse_data(doc);
  const auto points = parse_points(member(doc, "points"), "$.points", s);
  check_polynomial(data);
  const auto results = parallel_map(points.size(), s.threads, [&](std::size_t i) {
    const json base = {{"z", to_json(points[i])}};
    return inline_errors([&] {
      json r = base;
      r["solutions"] = json::array();
      for (const auto& sol : solve_phi(data, points[i], s.tol)) r["solutions"].push_back(solution_json(data, sol, s.tol));
      return r;
    }, base);
  });
  report = {{"task", "solve"}, {"results", results}};
  return s.csv ? solve_csv(results) : std::string();
}

std::vector<Complex> parse_params(const json& doc) {
  if (!doc.contains("t")) return {-1.0, 0.0, 1.0};
  const json& t = doc["t"];
  if (!t.is_array() || t.empty() || t.size() > 100) schema("$.t", "expected 1 to 100 complex parameters");
  std::vector<Complex> ts;
  for (std::size_t i = 0; i < t.size(); ++i) ts.push_back(json_io::parse_complex(t[i], "$.t[" + std::to_string(i) + "]"));
  return ts;
}

std::string task_fibres(const json& doc, const Settings& s, json& report) {
  const WeierstrassData data = parse_data(doc);
  const auto samples = parse_samples(member(doc, "samples"), "$.samples", s);
  const auto ts = parse_params(doc);
  const auto fibres = parallel_map(samples.size(), s.threads, [&](std::size_t i) {
    const json base = {{"q", to_json(samples[i])}};
    return inline_errors([&] {
      const FibreDescription f = fibre_at(data, samples[i]);
      json j = base;
      j.update(to_json(f));
      json pts = json::array();
      if (f.tag == FibreTag::NonNullLine) {
        for (Complex t : ts) pts.push_back(to_json(sample_fibre(f, t)));
      } else if (f.tag == FibreTag::DegeneratePlane) {
        for (Complex t : ts)
          for (Complex u : ts) pts.push_back(to_json(sample_fibre(f, t, u)));
      }
      j["points"] = std::move(pts);
      return j;
    }, base);
  });
  report = {{"task", "fibres"}, {"G", to_json(data.G)}, {"H", to_json(data.H)}, {"fibres", fibres}};
  if (!s.csv) return {};
  std::string out = header({"q_x1", "q_x2", "q_x3", "q_x4", "tag", "base_z1_re", "base_z1_im", "base_z2_re", "base_z2_im",
                            "base_z3_re", "base_z3_im", "dir_z1_re", "dir_z1_im", "dir_z2_re", "dir_z2_im", "dir_z3_re",
                            "dir_z3_im"});
  for (const json& f : fibres) {
    std::vector<std::string> cells;
    flatten(f["q"], cells);
    cells.push_back(f.contains("tag") ? f["tag"].get<std::string>() : f["error"]["code"].get<std::string>());
    flatten(get_or_null(f, "base"), cells, 6);
    flatten(f.contains("normal") ? f["normal"] : get_or_null(f, "direction"), cells, 6);
    out += join(cells);
  }
  return out;
}

json verify_solution(const WeierstrassData& data, const CVec3& z, const CongruenceSolution& sol, double tol) {
  json j = {{"q", to_json(sol.q)}};
  if (!sol.has_gradient) {
    j["class"] = nullptr;
    return j;
  }
  return inline_errors([&] {
    const PdeResidualReport r = fd_residuals_on_branch(data, z, sol);
    const ImplicitSecondOrder so = implicit_second_order(data, z, sol);
    const PointClassification c = classify_point(sol.gradient, tol);
    BVec3 diff;
    for (std::size_t k = 0; k < 3; ++k) diff[k] = r.gradient[k] - sol.gradient[k];
    json out = j;
    out["laplacian"] = r.laplacian_residual;
    out["nullness"] = r.nullness_residual;
    out["cr"] = r.cr_residual;
    out.update(class_json(c));
    out["implicit"] = {{"laplacian", so.laplacian_residual()}, {"nullness", so.nullness_residual()}};
    out["gradient_mismatch"] = real_norm(diff) / std::max(1.0, real_norm(sol.gradient));
    return out;
  }, j);
}

std::string task_verify(const json& doc, const Settings& s, json& report) {
  const WeierstrassData data = parse_data(doc);
  if (!doc.contains("fibres") && !doc.contains("points")) schema("$", "verify needs \"fibres\" and/or \"points\"");
  report = {{"task", "verify"}};
  json summary = json::object();
  std::string csv = header({"kind", "index", "q_x1", "q_x2", "q_x3", "q_x4", "r1", "r2", "r3", "class", "lambda_re",
                            "lambda_im"});

  if (doc.contains("fibres")) {
    const json& fj = doc["fibres"];
    if (!fj.is_array()) schema("$.fibres", "expected an array");
    struct Entry {
      Bicomplex q;
      std::string tag;
      std::vector<CVec3> points;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < fj.size(); ++i) {
      const std::string path = "$.fibres[" + std::to_string(i) + "]";
      if (!fj[i].is_object()) schema(path, "expected an object");
      if (fj[i].contains("error")) continue;  // an inline failure of the exporting run
      Entry e;
      e.q = json_io::parse_bicomplex(member(fj[i], "q", path), path + ".q");
      const json& tag = member(fj[i], "tag", path);
      if (!tag.is_string()) schema(path + ".tag", "expected a string");
      e.tag = tag.get<std::string>();
      if (fj[i].contains("points")) e.points = parse_points(fj[i]["points"], path + ".points", s);
      entries.push_back(std::move(e));
    }
    const auto checked = parallel_map(entries.size(), s.threads, [&](std::size_t i) {
      const Entry& e = entries[i];
      const json base = {{"q", to_json(e.q)}, {"tag", e.tag}};
      return inline_errors([&] {
        const FibreDescription f = fibre_at(data, e.q);
        double worst = 0.0, worst_f = 0.0;
        for (const CVec3& z : e.points) {
          worst = std::max(worst, fibre_residual(f, z));
          worst_f = std::max(worst_f, real_norm(congruence_residual(data, e.q, z)));
        }
        const bool tag_ok = e.tag == fibre_tag_name(f.tag);
        json j = base;
        j["recomputed_tag"] = std::string(fibre_tag_name(f.tag));
        j["points"] = e.points.size();
        j["point_residual"] = worst;
        j["congruence_residual"] = worst_f;
        j["valid"] = tag_ok && worst <= s.fibre_tol;
        return j;
      }, base);
    });
    std::size_t npts = 0;
    double worst = 0.0;
    bool all = true;
    for (std::size_t i = 0; i < checked.size(); ++i) {
      const json& c = checked[i];
      const bool ok = c.contains("valid") && c["valid"].get<bool>();
      all = all && ok;
      if (c.contains("point_residual")) {
        npts += c["points"].get<std::size_t>();
        worst = std::max(worst, c["point_residual"].get<double>());
      }
      std::vector<std::string> cells{"fibre", std::to_string(i)};
      flatten(c["q"], cells);
      flatten(get_or_null(c, "point_residual"), cells, 1);
      flatten(get_or_null(c, "congruence_residual"), cells, 1);
      cells.push_back(ok ? "1" : "0");
      cells.push_back(c["tag"].get<std::string>());
      cells.push_back("nan");
      cells.push_back("nan");
      csv += join(cells);
    }
    report["fibres"] = checked;
    summary["fibres"] = checked.size();
    summary["fibre_points"] = npts;
    summary["max_point_residual"] = worst;
    summary["fibres_valid"] = all;
  }

  if (doc.contains("points")) {
    const auto points = parse_points(doc["points"], "$.points", s);
    check_polynomial(data);
    const auto results = parallel_map(points.size(), s.threads, [&](std::size_t i) {
      const json base = {{"z", to_json(points[i])}};
      return inline_errors([&] {
        json r = base;
        r["solutions"] = json::array();
        for (const auto& sol : solve_phi(data, points[i], s.tol)) r["solutions"].push_back(verify_solution(data, points[i], sol, s.tol));
        return r;
      }, base);
    });
    double lap = 0.0, nul = 0.0, cr = 0.0;
    std::size_t checked = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i].contains("solutions")) continue;
      for (const json& sol : results[i]["solutions"]) {
        std::vector<std::string> cells{"solution", std::to_string(i)};
        flatten(sol["q"], cells);
        if (!sol.contains("laplacian")) {
          for (int k = 0; k < 3; ++k) cells.push_back("nan");
          cells.push_back(sol.contains("error") ? sol["error"]["code"].get<std::string>() : "NoGradient");
          cells.push_back("nan");
          cells.push_back("nan");
          csv += join(cells);
          continue;
        }
        ++checked;
        lap = std::max(lap, sol["laplacian"].get<double>());
        nul = std::max(nul, sol["nullness"].get<double>());
        cr = std::max(cr, sol["cr"].get<double>());
        flatten(sol["laplacian"], cells);
        flatten(sol["nullness"], cells);
        flatten(sol["cr"], cells);
        cells.push_back(sol["class"].get<std::string>());
        flatten(sol["lambda"], cells);
        csv += join(cells);
      }
    }
    report["points"] = results;
    summary["solutions_checked"] = checked;
    summary["max_laplacian"] = lap;
    summary["max_nullness"] = nul;
    summary["max_cr"] = cr;
  }
  report["summary"] = summary;
  return s.csv ? csv : std::string();
}

json slice_value_json(const SliceValue& v) {
  if (const auto* c = std::get_if<Complex>(&v)) return {{"codomain", "C"}, {"value", to_json(*c)}};
  return {{"codomain", "D"}, {"value", to_json(std::get<Hyperbolic>(v))}};
}

std::string task_slice(const json& doc, const Settings& s, json& report) {
  const SliceKind kind = parse_name<SliceKind>(member(doc, "slice"), "$.slice", parse_slice);
  const HoloFn g = json_io::parse_holo(member(doc, "g"), "$.g");
  const HoloFn h = json_io::parse_holo(member(doc, "h"), "$.h");
  const WeierstrassData data = slice_data(kind, g, h);
  const auto points = parse_real_points(doc, s);
  check_polynomial(data);
  const auto results = parallel_map(points.size(), s.threads, [&](std::size_t i) {
    const RealPoint& x = points[i];
    const json base = {{"x", json::array({x[0], x[1], x[2]})}};
    return inline_errors([&] {
      json r = base;
      r["solutions"] = json::array();
      for (const SliceSolution& ss : solve_on_slice(kind, data, x)) {
        json j = slice_value_json(ss.value);
        j["q"] = to_json(ss.solution.q);
        if (!ss.solution.has_gradient) {
          j["class"] = nullptr;
          r["solutions"].push_back(j);
          continue;
        }
        j.update(class_json(classify_point(ss.solution.gradient, s.tol)));
        r["solutions"].push_back(inline_errors([&] {
          const WaveResidual w = wave_residual_on_branch(kind, data, x, ss.solution);
          json k = j;
          k["harmonic"] = w.harmonic;
          k["null"] = w.null;
          return k;
        }, j));
      }
      return r;
    }, base);
  });

  std::size_t with = 0, nsol = 0, degenerate = 0, errors = 0;
  double harm = 0.0, nul = 0.0;
  std::string csv = header({"x1", "x2", "x3", "codomain", "v_0", "v_1", "q_x1", "q_x2", "q_x3", "q_x4", "class",
                            "lambda_re", "lambda_im", "harmonic", "null"});
  for (const json& r : results) {
    if (r.contains("error")) {
      ++errors;
      continue;
    }
    if (!r["solutions"].empty()) ++with;
    for (const json& sol : r["solutions"]) {
      ++nsol;
      if (sol.contains("error")) ++errors;
      if (sol["class"] == "Degenerate") ++degenerate;
      if (sol.contains("harmonic")) {
        harm = std::max(harm, sol["harmonic"].get<double>());
        nul = std::max(nul, sol["null"].get<double>());
      }
      std::vector<std::string> cells;
      flatten(r["x"], cells);
      cells.push_back(sol["codomain"].get<std::string>());
      flatten(sol["value"], cells);
      flatten(sol["q"], cells);
      cells.push_back(sol["class"].is_null() ? "NoGradient" : sol["class"].get<std::string>());
      flatten(get_or_null(sol, "lambda"), cells, 2);
      flatten(get_or_null(sol, "harmonic"), cells, 1);
      flatten(get_or_null(sol, "null"), cells, 1);
      csv += join(cells);
    }
  }
  report = {{"task", "slice"},
            {"slice", std::string(slice_name(kind))},
            {"points", results},
            {"summary",
             {{"points", results.size()},
              {"points_with_solutions", with},
              {"solutions", nsol},
              {"degenerate", degenerate},
              {"errors", errors},
              {"max_harmonic", harm},
              {"max_null", nul}}}};
  return s.csv ? csv : std::string();
}

json point_json(const ModelPoint& p) {
  if (const auto* a = std::get_if<S2CPoint>(&p)) return to_json(a->z);
  if (const auto* b = std::get_if<QuadricPointB>(&p)) return to_json(b->xi());
  const auto& zeta = std::get<QuadricPointC>(p).zeta();
  return json::array({to_json(zeta[0]), to_json(zeta[1]), to_json(zeta[2]), to_json(zeta[3])});
}

ModelPoint parse_model_point(Space space, const json& j, const std::string& path) {
  switch (space) {
    case Space::S2C: return S2CPoint{json_io::parse_cvec3(j, path)};
    case Space::Q1B: return QuadricPointB::from(json_io::parse_bvec3(j, path));
    case Space::Q2C: {
      if (!j.is_array() || j.size() != 4) schema(path, "expected four homogeneous coordinates");
      std::array<Complex, 4> zeta;
      for (std::size_t k = 0; k < 4; ++k) zeta[k] = json_io::parse_complex(j[k], path + "[" + std::to_string(k) + "]");
      return QuadricPointC::from(zeta);
    }
  }
  schema(path, "unknown space");
}

json chart_request(const json& r, const std::string& path) {
  if (!r.is_object()) schema(path, "expected a request object");
  const json& opj = member(r, "op", path);
  if (!opj.is_string()) schema(path + ".op", "expected a string");
  const std::string op = opj.get<std::string>();
  auto chart = [&](const char* key) { return parse_name<ChartId>(member(r, key, path), path + "." + key, parse_chart); };
  auto space = [&] { return parse_name<Space>(member(r, "space", path), path + ".space", parse_space); };
  auto value = [&] { return json_io::parse_bicomplex(member(r, "value", path), path + ".value"); };

  if (op == "transition") {
    const ChartId from = chart("from"), to = chart("to");
    const Bicomplex v = value();
    return {{"op", op}, {"value", to_json(transition(from, to, v))}};
  }
  if (op == "to_point") {
    const Space sp = space();
    const ChartId c = chart("chart");
    return {{"op", op}, {"point", point_json(chart_to_point(sp, c, value()))}};
  }
  if (op == "to_chart") {
    const Space sp = space();
    const ChartId c = chart("chart");
    const ModelPoint p = parse_model_point(sp, member(r, "point", path), path + ".point");
    return {{"op", op}, {"value", to_json(point_to_chart(c, p))}};
  }
  schema(path + ".op", "unknown chart op \"" + op + "\"");
}

std::string task_charts(const json& doc, const Settings& s, json& report) {
  std::vector<json> results;
  if (doc.contains("requests")) {
    const json& rs = doc["requests"];
    if (!rs.is_array()) schema("$.requests", "expected an array");
    for (std::size_t i = 0; i < rs.size(); ++i) {
      const std::string path = "$.requests[" + std::to_string(i) + "]";
      const json base = {{"op", rs[i].is_object() && rs[i].contains("op") ? rs[i]["op"] : json()}};
      results.push_back(inline_errors([&] { return chart_request(rs[i], path); }, base));
    }
  } else {
    results.push_back(chart_request(doc, "$"));  // a single request fails the run
  }
  report = {{"task", "charts"}, {"results", results}};
  if (!s.csv) return {};
  std::string out = header({"index", "op", "status", "values"});
  for (std::size_t i = 0; i < results.size(); ++i) {
    const json& r = results[i];
    std::vector<std::string> cells{std::to_string(i), r["op"].is_string() ? r["op"].get<std::string>() : ""};
    if (r.contains("error")) {
      cells.push_back(r["error"]["code"].get<std::string>());
    } else {
      cells.push_back("Ok");
      flatten(r.contains("point") ? r["point"] : r["value"], cells);
    }
    out += join(cells);
  }
  return out;
}

}  // namespace

SceneResult run_scene(const std::string& input, const SceneOptions& options) {
  SceneResult res;
  auto failed = [&](int exit_code, int num, const char* code, const std::string& message) {
    res.exit_code = exit_code;
    res.code = num;
    res.output.clear();
    res.error = json{{"error", {{"code", code}, {"message", message}}}}.dump() + "\n";
  };
  try {
    json doc;
    try {
      doc = json::parse(input);
    } catch (const json::parse_error& e) {
      schema("$", std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) schema("$", "expected a scene object");

    std::string task;
    if (options.task) task = *options.task;
    else if (doc.contains("task") && doc["task"].is_string()) task = doc["task"].get<std::string>();
    else schema("$", "missing \"task\"");

    std::string format = "json";
    if (options.format) format = *options.format;
    else if (doc.contains("format")) {
      if (!doc["format"].is_string()) schema("$.format", "expected a string");
      format = doc["format"].get<std::string>();
    }
    if (format != "json" && format != "csv") schema("$.format", "expected \"json\" or \"csv\"");

    Settings s;
    if (doc.contains("tol")) s.tol = json_io::parse_real(doc["tol"], "$.tol");
    if (options.tol) s.tol = *options.tol;
    if (!(s.tol > 0.0)) schema("$.tol", "tolerance must be positive");
    if (doc.contains("fibre_tol")) s.fibre_tol = json_io::parse_real(doc["fibre_tol"], "$.fibre_tol");
    s.seed = options.seed;
    s.threads = resolve_threads(options.threads);
    s.csv = format == "csv";

    json report;
    std::string csv;
    if (task == "solve") csv = task_solve(doc, s, report);
    else if (task == "fibres") csv = task_fibres(doc, s, report);
    else if (task == "verify") csv = task_verify(doc, s, report);
    else if (task == "slice") csv = task_slice(doc, s, report);
    else if (task == "charts") csv = task_charts(doc, s, report);
    else schema("$.task", "unknown task \"" + task + "\"");

    res.output = s.csv ? csv : report.dump(2) + "\n";
  } catch (const Error& e) {
    failed(e.code() == ErrorCode::Schema ? 2 : 3, static_cast<int>(e.code()), error_code_name(e.code()), e.what());
  } catch (const json::exception& e) {
    failed(2, static_cast<int>(ErrorCode::Schema), error_code_name(ErrorCode::Schema), e.what());
  } catch (const std::exception& e) {
    failed(3, -1, "Internal", e.what());
  }
  return res;
}

}  // namespace bhm
