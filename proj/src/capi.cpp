#include "bhm/bhm.h"

#include <new>
#include <string>
#include <vector>

#include "bhm/error.hpp"
#include "bhm/json_io.hpp"
#include "bhm/scene.hpp"
#include "bhm/weierstrass.hpp"

struct bhm_context {
  std::string last_error;
  std::string output;
  std::string error_json;
};

struct bhm_holo {
  bhm::HoloFn fn;
};

struct bhm_solutions {
  std::vector<bhm::CongruenceSolution> items;
};

namespace {

bhm::Bicomplex from_c(bhm_bicomplex_t q) { return bhm::Bicomplex::from_real4(q.x1, q.x2, q.x3, q.x4); }

bhm_bicomplex_t to_c(const bhm::Bicomplex& q) { return {q.q1.real(), q.q1.imag(), q.q2.real(), q.q2.imag()}; }

bhm_complex_t to_c(bhm::Complex c) { return {c.real(), c.imag()}; }

/// Runs fn, translating exceptions into a status and the context's last error.
template <class F>
bhm_status_t guarded(bhm_context_t* ctx, F&& fn) {
  if (!ctx) return BHM_INVALID_INPUT;
  try {
    fn();
    ctx->last_error.clear();
    return BHM_OK;
  } catch (const bhm::Error& e) {
    ctx->last_error = e.what();
    return static_cast<bhm_status_t>(e.code());
  } catch (const nlohmann::json::exception& e) {
    ctx->last_error = e.what();
    return BHM_SCHEMA;
  } catch (const std::bad_alloc&) {
    ctx->last_error = "out of memory";
    return BHM_INTERNAL;
  } catch (const std::exception& e) {
    ctx->last_error = e.what();
    return BHM_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) bhm::fail(bhm::ErrorCode::InvalidInput, what);
}

}  // namespace

extern "C" {

const char* bhm_version(void) { return "1.0.0"; }

const char* bhm_status_name(bhm_status_t status) {
  if (status == BHM_INTERNAL) return "Internal";
  return bhm::error_code_name(static_cast<bhm::ErrorCode>(status));
}

bhm_context_t* bhm_context_create(void) { return new (std::nothrow) bhm_context; }

void bhm_context_destroy(bhm_context_t* ctx) { delete ctx; }

const char* bhm_context_last_error(const bhm_context_t* ctx) { return ctx ? ctx->last_error.c_str() : ""; }

bhm_bicomplex_t bhm_mul(bhm_bicomplex_t a, bhm_bicomplex_t b) { return to_c(from_c(a) * from_c(b)); }

bhm_complex_t bhm_complex_norm(bhm_bicomplex_t q) { return to_c(bhm::complex_norm(from_c(q))); }

int bhm_is_zero_divisor(bhm_bicomplex_t q) { return bhm::is_zero_divisor(from_c(q)) ? 1 : 0; }

bhm_status_t bhm_inverse(bhm_context_t* ctx, bhm_bicomplex_t q, bhm_bicomplex_t* out) {
  return guarded(ctx, [&] {
    require(out != nullptr, "null output");
    *out = to_c(bhm::inverse(from_c(q)));
  });
}

void bhm_ringleb(bhm_bicomplex_t q, bhm_complex_t* e, bhm_complex_t* f) {
  const bhm::RinglebPair r = bhm::ringleb_decompose(from_c(q));
  if (e) *e = to_c(r.e_part);
  if (f) *f = to_c(r.f_part);
}

bhm_status_t bhm_holo_parse(bhm_context_t* ctx, const char* json, bhm_holo_t** out) {
  return guarded(ctx, [&] {
    require(json != nullptr && out != nullptr, "null argument");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::parse_error& e) {
      bhm::fail(bhm::ErrorCode::Schema, std::string("invalid JSON: ") + e.what());
    }
    *out = new bhm_holo{bhm::json_io::parse_holo(doc)};
  });
}

bhm_status_t bhm_holo_eval(bhm_context_t* ctx, const bhm_holo_t* f, bhm_bicomplex_t q, bhm_bicomplex_t* out) {
  return guarded(ctx, [&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = to_c(f->fn(from_c(q)));
  });
}

bhm_status_t bhm_holo_derivative(bhm_context_t* ctx, const bhm_holo_t* f, bhm_holo_t** out) {
  return guarded(ctx, [&] {
    require(f != nullptr && out != nullptr, "null argument");
    *out = new bhm_holo{f->fn.derivative()};
  });
}

const char* bhm_holo_to_json(bhm_context_t* ctx, const bhm_holo_t* f) {
  if (!ctx || !f) return "";
  ctx->output = bhm::json_io::to_json(f->fn).dump();
  return ctx->output.c_str();
}

void bhm_holo_destroy(bhm_holo_t* f) { delete f; }

bhm_status_t bhm_solve(bhm_context_t* ctx, const bhm_holo_t* G, const bhm_holo_t* H, const bhm_complex_t z[3],
                       double tol, bhm_solutions_t** out) {
  return guarded(ctx, [&] {
    require(G && H && z && out, "null argument");
    const bhm::WeierstrassData data{G->fn, H->fn};
    const bhm::CVec3 p{{bhm::Complex(z[0].re, z[0].im), bhm::Complex(z[1].re, z[1].im), bhm::Complex(z[2].re, z[2].im)}};
    auto sols = tol > 0.0 ? bhm::solve_phi(data, p, tol) : bhm::solve_phi(data, p);
    *out = new bhm_solutions{std::move(sols)};
  });
}

size_t bhm_solutions_count(const bhm_solutions_t* s) { return s ? s->items.size() : 0; }

bhm_status_t bhm_solutions_get(const bhm_solutions_t* s, size_t index, bhm_bicomplex_t* q, int* multiplicity,
                               int* flags, bhm_bicomplex_t* grad) {
  if (!s || index >= s->items.size()) return BHM_INVALID_INPUT;
  const bhm::CongruenceSolution& sol = s->items[index];
  if (q) *q = to_c(sol.q);
  if (multiplicity) *multiplicity = sol.multiplicity;
  if (flags)
    *flags = (sol.has_gradient ? BHM_SOL_HAS_GRADIENT : 0) | (sol.degenerate ? BHM_SOL_DEGENERATE : 0) |
             (sol.partially_degenerate ? BHM_SOL_PARTIALLY_DEGENERATE : 0);
  if (grad && sol.has_gradient)
    for (int k = 0; k < 3; ++k) grad[k] = to_c(sol.gradient[k]);
  return BHM_OK;
}

void bhm_solutions_destroy(bhm_solutions_t* s) { delete s; }

bhm_scene_options_t bhm_scene_options_default(void) { return {nullptr, nullptr, 0.0, 1, 0}; }

bhm_status_t bhm_run_scene(bhm_context_t* ctx, const char* document, const bhm_scene_options_t* options,
                           const char** output, const char** error_json) {
  if (!ctx) return BHM_INVALID_INPUT;
  ctx->output.clear();
  ctx->error_json.clear();
  if (output) *output = ctx->output.c_str();
  if (error_json) *error_json = ctx->error_json.c_str();
  bhm_status_t status = guarded(ctx, [&] {
    require(document != nullptr, "null document");
    bhm::SceneOptions o;
    const bhm_scene_options_t opt = options ? *options : bhm_scene_options_default();
    if (opt.task) o.task = opt.task;
    if (opt.format) o.format = opt.format;
    if (opt.tol > 0.0) o.tol = opt.tol;
    o.seed = opt.seed;
    o.threads = opt.threads;
    bhm::SceneResult r = bhm::run_scene(document, o);
    ctx->output = std::move(r.output);
    ctx->error_json = std::move(r.error);
    if (r.code < 0) throw std::runtime_error(ctx->error_json);
    if (r.code != 0) throw bhm::Error(static_cast<bhm::ErrorCode>(r.code), ctx->error_json);
  });
  if (output) *output = ctx->output.c_str();
  if (error_json) *error_json = ctx->error_json.c_str();
  return status;
}

}  // extern "C"
