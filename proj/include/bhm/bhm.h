/* C interface to the bicomplex harmonic-morphism library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns a bhm_status_t;
 * details of the last failure on a context are available from
 * bhm_context_last_error. Strings returned by the library stay valid until
 * the next call on the same context.
 *
 * A context must not be used from two threads at once; distinct contexts and
 * read-only handles (holo functions) may be shared freely. */
#ifndef BHM_H
#define BHM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BHM_API __declspec(dllexport)
#else
#define BHM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values mirror the C++ error codes. */
typedef enum {
  BHM_OK = 0,
  BHM_INVALID_INPUT = 1,
  BHM_ZERO_DIVISOR = 2,
  BHM_POLE_ENCOUNTERED = 3,
  BHM_OUT_OF_DOMAIN = 4,
  BHM_DEGENERATE_DIRECTION = 5,
  BHM_DEGENERATE_ALL_COMPONENTS = 6,
  BHM_DEGENERATE_POINT = 7,
  BHM_BRANCH_JUMP = 8,
  BHM_NOT_IN_SLICE = 9,
  BHM_NOT_POLYNOMIAL = 10,
  BHM_SCHEMA = 11,
  BHM_INTERNAL = 100
} bhm_status_t;

/* q = (x1 + x2 i1) + (x3 + x4 i1) i2. */
typedef struct {
  double x1, x2, x3, x4;
} bhm_bicomplex_t;

typedef struct {
  double re, im;
} bhm_complex_t;

typedef struct bhm_context bhm_context_t;
typedef struct bhm_holo bhm_holo_t;
typedef struct bhm_solutions bhm_solutions_t;

BHM_API const char* bhm_version(void);
BHM_API const char* bhm_status_name(bhm_status_t status);

BHM_API bhm_context_t* bhm_context_create(void);
BHM_API void bhm_context_destroy(bhm_context_t* ctx);
/* Message of the last failed call on ctx, "" if none. */
BHM_API const char* bhm_context_last_error(const bhm_context_t* ctx);

/* ---- scalar algebra ---- */
BHM_API bhm_bicomplex_t bhm_mul(bhm_bicomplex_t a, bhm_bicomplex_t b);
BHM_API bhm_complex_t bhm_complex_norm(bhm_bicomplex_t q);
BHM_API int bhm_is_zero_divisor(bhm_bicomplex_t q);
BHM_API bhm_status_t bhm_inverse(bhm_context_t* ctx, bhm_bicomplex_t q, bhm_bicomplex_t* out);
/* Ringleb coordinates: q = e a + f b with a = (1 - j)/2, b = (1 + j)/2. */
BHM_API void bhm_ringleb(bhm_bicomplex_t q, bhm_complex_t* e, bhm_complex_t* f);

/* ---- holomorphic functions ---- */
/* Parses a HoloFn JSON document ({"f1", "f2"}, {"f"} or a bare expression). */
BHM_API bhm_status_t bhm_holo_parse(bhm_context_t* ctx, const char* json, bhm_holo_t** out);
BHM_API bhm_status_t bhm_holo_eval(bhm_context_t* ctx, const bhm_holo_t* f, bhm_bicomplex_t q, bhm_bicomplex_t* out);
BHM_API bhm_status_t bhm_holo_derivative(bhm_context_t* ctx, const bhm_holo_t* f, bhm_holo_t** out);
/* JSON of f; the string is owned by ctx. */
BHM_API const char* bhm_holo_to_json(bhm_context_t* ctx, const bhm_holo_t* f);
BHM_API void bhm_holo_destroy(bhm_holo_t* f);

/* ---- congruence solving ---- */
enum {
  BHM_SOL_HAS_GRADIENT = 1,
  BHM_SOL_DEGENERATE = 2,
  BHM_SOL_PARTIALLY_DEGENERATE = 4
};

/* All roots q of the congruence of (G, H) through z (3 complex entries),
 * in canonical order. tol <= 0 selects the default. */
BHM_API bhm_status_t bhm_solve(bhm_context_t* ctx, const bhm_holo_t* G, const bhm_holo_t* H, const bhm_complex_t z[3],
                               double tol, bhm_solutions_t** out);
BHM_API size_t bhm_solutions_count(const bhm_solutions_t* s);
/* grad may be NULL; it receives 3 entries when the solution has a gradient. */
BHM_API bhm_status_t bhm_solutions_get(const bhm_solutions_t* s, size_t index, bhm_bicomplex_t* q, int* multiplicity,
                                       int* flags, bhm_bicomplex_t* grad);
BHM_API void bhm_solutions_destroy(bhm_solutions_t* s);

/* ---- scenes ---- */
typedef struct {
  const char* task;   /* NULL: taken from the document */
  const char* format; /* NULL: from the document, else "json" */
  double tol;         /* <= 0: from the document, else default */
  uint64_t seed;
  int threads;        /* <= 0: BHM_THREADS, else hardware concurrency */
} bhm_scene_options_t;

BHM_API bhm_scene_options_t bhm_scene_options_default(void);

/* Runs a scene document. On success *output receives the report; on
 * failure *error_json receives {"error": {"code", "message"}}. Both strings
 * are owned by ctx. BHM_SCHEMA marks malformed documents; any other non-OK
 * status is a domain error. */
BHM_API bhm_status_t bhm_run_scene(bhm_context_t* ctx, const char* document, const bhm_scene_options_t* options,
                                   const char** output, const char** error_json);

#ifdef __cplusplus
}
#endif

#endif /* BHM_H */
