/* C interface to the formal group law library. Objects cross the boundary as
 * opaque handles or JSON text; every call returns an fgl_status. Strings
 * returned through char** are owned by the caller (fgl_string_free). */
#ifndef FGL_H
#define FGL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define FGL_API __declspec(dllexport)
#else
#define FGL_API __attribute__((visibility("default")))
#endif

typedef enum fgl_status {
  FGL_OK = 0,
  FGL_INVALID_ARGUMENT = 1,
  FGL_DESCRIPTOR_MISMATCH,
  FGL_NON_UNIT_JACOBIAN,
  FGL_NONZERO_CONSTANT,
  FGL_NON_UNIT_LINEAR,
  FGL_NO_UNIT_COEFFICIENT,
  FGL_AXIOM_FAILURE,
  FGL_TRUNCATION_TOO_SMALL,
  FGL_INTEGRALITY_FAILURE,
  FGL_RESIDUE_MISMATCH,
  FGL_NOT_INVARIANT,
  FGL_NOT_A_DEFORMATION,
  FGL_OBSTRUCTION_UNSOLVABLE,
  FGL_NON_UNIQUE_SOLUTION,
  FGL_NO_PROGRESS,
  FGL_PARSE_ERROR,
  FGL_INTERNAL = 100
} fgl_status;

/* A formal group law with its deformation tag (base twist). */
typedef struct fgl_law fgl_law;

typedef struct fgl_descriptor {
  uint64_t p;
  int m;
  int n;
  int prec_p;
  int trunc_u;
} fgl_descriptor;

/* Error name as used by the CLI ("AxiomFailure", ...). */
FGL_API const char* fgl_status_name(int status);
/* Detail text of the last failure on this thread; empty after success. */
FGL_API const char* fgl_last_error(void);
FGL_API void fgl_string_free(char* s);
FGL_API void fgl_law_free(fgl_law* law);

/* Law constructors. kind: "honda", "universal", "additive",
 * "multiplicative" (x + y + xy), "signed-multiplicative" (x + y - xy).
 * Honda ignores prec_p and trunc_u. */
FGL_API fgl_status fgl_law_new(const char* kind, const fgl_descriptor* desc, int trunc_t, fgl_law** out);
FGL_API fgl_status fgl_law_from_json(const char* json, fgl_law** out);
FGL_API fgl_status fgl_law_to_json(const fgl_law* law, char** out);
/* Conjugates by a seeded random star-isomorphism. */
FGL_API fgl_status fgl_law_random_conjugate(const fgl_law* law, uint64_t seed, fgl_law** out);

/* [n]-series as PowerSeries1 JSON. */
FGL_API fgl_status fgl_n_series(const fgl_law* law, int64_t n, char** out);
/* Divisor of F[p^r] as kernel JSON. */
FGL_API fgl_status fgl_kernel(const fgl_law* law, int r, char** out);
/* Quotient by a kernel given as JSON. The result holds the isogeny, the
 * homomorphism certificate and the residue Frobenius check. out_law (may be
 * NULL) receives the quotient law with the pushed tag. */
FGL_API fgl_status fgl_quotient(const fgl_law* law, const char* kernel_json, char** out, fgl_law** out_law);
/* Classifying map against the universal deformation on the law's descriptor. */
FGL_API fgl_status fgl_classify(const fgl_law* law, int twist, char** out);
FGL_API fgl_status fgl_defect(const fgl_law* law, char** out);
/* out_trunc < 0 keeps the input truncation. */
FGL_API fgl_status fgl_normalize(const fgl_law* law, int out_trunc, char** out, fgl_law** out_law);
/* Builds the universal deformation at work_trunc (< 0: recommended) and
 * normalizes it to truncation trunc_t. */
FGL_API fgl_status fgl_normalize_universal(const fgl_descriptor* desc, int trunc_t, int work_trunc, char** out,
                                           fgl_law** out_law);
/* kernels_json: array of kernel objects. *pass is 1 when every item passes. */
FGL_API fgl_status fgl_check(const fgl_law* law, const char* kernels_json, char** out, int* pass);
/* normalize o galois_twist(., j) against galois_twist(., j) o normalize,
 * compared at out_trunc (< 0: the truncation certified by the law's own). */
FGL_API fgl_status fgl_galois_check(const fgl_law* law, int j, int out_trunc, char** out, int* pass);
/* spec_json: {"specializations": [[v_1, ..], ..], "quotient": bool}. */
FGL_API fgl_status fgl_functoriality_check(const fgl_law* law, const char* spec_json, char** out, int* pass);

#ifdef __cplusplus
}
#endif

#endif
