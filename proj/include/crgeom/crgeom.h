#ifndef CRGEOM_CRGEOM_H
#define CRGEOM_CRGEOM_H

/* C interface of libcrgeom. Every fallible call returns a crg_status; on
   failure crg_last_error() holds the message for the calling thread. Strings
   handed out through char** are owned by the caller and released with
   crg_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define CRG_API __attribute__((visibility("default")))
#else
#define CRG_API
#endif

typedef enum crg_status {
  CRG_OK = 0,
  CRG_INVALID_ARGUMENT = 1,
  CRG_PARSE = 2,
  CRG_NOT_STRICTLY_PSEUDOCONVEX = 3,
  CRG_DEGENERATE_GRADIENT = 4,
  CRG_ROUTE_MISMATCH = 5,
  CRG_OFF_SURFACE = 6,
  CRG_RAY_ESCAPED = 7,
  CRG_DEGENERATE_DEFORMATION = 8,
  CRG_SERIES_ORDER_INSUFFICIENT = 9,
  CRG_NOT_HERMITIAN = 10,
  CRG_DEGREE_CAP_EXCEEDED = 11,
  CRG_INTERNAL = 99
} crg_status;

CRG_API const char* crg_version(void);
/* "InvalidArgument", "NotHermitian", ...; "Internal" for CRG_INTERNAL. */
CRG_API const char* crg_status_name(crg_status s);
/* 1 for failures of the numerics, 0 for bad input or success. */
CRG_API int crg_status_is_numerical(crg_status s);
CRG_API const char* crg_last_error(void);
CRG_API void crg_string_free(char* s);

/* Worker threads for parallel sections; 0 restores the default (hardware
   concurrency capped by CR_TOOL_THREADS). */
CRG_API void crg_set_threads(int n);
CRG_API int crg_threads(void);

/* Polynomials in z1, conj z1, z2, conj z2. */
typedef struct crg_poly crg_poly;

CRG_API crg_status crg_poly_from_json(const char* text, int require_real, crg_poly** out);
CRG_API crg_status crg_poly_to_json(const crg_poly* p, char** out);
CRG_API crg_status crg_poly_eval(const crg_poly* p, double z1_re, double z1_im, double z2_re,
                                 double z2_im, double* re, double* im);
CRG_API void crg_poly_free(crg_poly* p);

typedef struct crg_surface_tolerances {
  double surface;
  double levi;
  double gradient;
  double cross;
} crg_surface_tolerances;

CRG_API void crg_surface_tolerances_default(crg_surface_tolerances* tol);

/* Surface reports. points_json may be NULL, in which case `samples` points are
   drawn with `seed`. tol may be NULL for the defaults. */
CRG_API crg_status crg_webster_report(const crg_poly* u, const char* points_json, int samples,
                                      uint64_t seed, const crg_surface_tolerances* tol, char** out);
CRG_API crg_status crg_monge_ampere_report(const crg_poly* u, const char* points_json, int samples,
                                           uint64_t seed, const crg_surface_tolerances* tol,
                                           char** out);
CRG_API crg_status crg_ellipsoid_report(double A1, double B1, double A2, double B2, int samples,
                                        uint64_t seed, const crg_surface_tolerances* tol, char** out);

typedef enum crg_operator {
  CRG_OP_BOXB = 0,
  CRG_OP_BOXB_BAR = 1,
  CRG_OP_P4 = 2,
  CRG_OP_P4_ALT = 3,
  CRG_OP_Q = 4
} crg_operator;

typedef enum crg_backend { CRG_BACKEND_AUTO = 0, CRG_BACKEND_EXACT = 1, CRG_BACKEND_SERIES = 2 } crg_backend;

/* "boxb", "boxbbar", "P4", "P4alt", "Q". */
CRG_API crg_status crg_operator_from_name(const char* name, crg_operator* out);

typedef struct crg_spectrum_request {
  const crg_poly* phi; /* NULL: phi = 0 */
  double t;
  int degree;
  crg_operator op;
  crg_backend backend;
  int order; /* series order, used by the series backend */
} crg_spectrum_request;

CRG_API void crg_spectrum_request_default(crg_spectrum_request* r);

CRG_API crg_status crg_rossi_report(double t, int degree, char** out);
CRG_API crg_status crg_spectrum_report(const crg_spectrum_request* r, char** out);
CRG_API crg_status crg_be_report(const crg_poly* phi, char** out);
CRG_API crg_status crg_probe_report(const crg_poly* phi, const double* ts, size_t n_ts, int degree,
                                    int order, char** out);

/* Spectrum handle: the report plus direct access to the eigenvalues. */
typedef struct crg_spectrum crg_spectrum;

CRG_API crg_status crg_spectrum_compute(const crg_spectrum_request* r, crg_spectrum** out);
CRG_API size_t crg_spectrum_size(const crg_spectrum* s);
/* Ascending; real parts for Q. NaN when i is out of range. */
CRG_API double crg_spectrum_eigenvalue(const crg_spectrum* s, size_t i);
CRG_API int crg_spectrum_kernel_dim(const crg_spectrum* s);
CRG_API crg_status crg_spectrum_to_json(const crg_spectrum* s, char** out);
CRG_API void crg_spectrum_free(crg_spectrum* s);

#ifdef __cplusplus
}
#endif

#endif
