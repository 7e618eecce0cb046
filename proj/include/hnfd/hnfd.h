/*
 * hnfd: exact Hermite normal forms and their diagonal densities.
 *
 * C interface to the shared library. Objects are opaque handles owned by
 * the caller and released with the matching *_free function. Every
 * fallible call returns an hnfd_status; on failure hnfd_last_error()
 * describes the problem (thread-local, valid until the next call on the
 * same thread). Strings returned through char** are allocated by the
 * library and released with hnfd_string_free.
 */
#ifndef HNFD_H
#define HNFD_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define HNFD_API __declspec(dllexport)
#else
#define HNFD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hnfd_status {
  HNFD_OK = 0,
  HNFD_ERR_CONFIG = 1,
  HNFD_ERR_DIMENSION = 2,
  HNFD_ERR_DOMAIN = 3,
  HNFD_ERR_PARAMETER = 4,
  HNFD_ERR_UNSUPPORTED = 5,
  HNFD_ERR_RANGE = 6,
  HNFD_ERR_PARSE = 7,
  HNFD_ERR_IO = 8,
  HNFD_ERR_NULL_ARGUMENT = 9,
  HNFD_ERR_INTERNAL = 10
} hnfd_status;

typedef struct hnfd_matrix hnfd_matrix;
typedef struct hnfd_hnf_result hnfd_hnf_result;

typedef enum hnfd_lattice_shape {
  HNFD_SHAPE_KNAPSACK = 0,
  HNFD_SHAPE_RANDOM_BASIS = 1,
  HNFD_SHAPE_NTRU = 2
} hnfd_lattice_shape;

/* Cube prod [center_i - half_width, center_i + half_width) in Z^{n*m}.
 * center may be NULL (origin) when center_len is 0. */
typedef struct hnfd_sample_config {
  size_t n;
  size_t m;
  const int64_t* center;
  size_t center_len;
  uint64_t half_width;
  uint64_t count;
  uint64_t seed;
  unsigned workers;
} hnfd_sample_config;

typedef struct hnfd_density {
  double value;
  double error_bound;
  int heuristic;
} hnfd_density;

HNFD_API const char* hnfd_version(void);
HNFD_API const char* hnfd_last_error(void);
HNFD_API const char* hnfd_status_name(hnfd_status status);
HNFD_API void hnfd_string_free(char* s);

/* ---- matrices --------------------------------------------------------- */

HNFD_API hnfd_status hnfd_matrix_create(size_t rows, size_t cols,
                                        const int64_t* entries,
                                        hnfd_matrix** out);
/* Text format: "n m" then n lines of m integers. */
HNFD_API hnfd_status hnfd_matrix_parse(const char* text, hnfd_matrix** out);
HNFD_API hnfd_status hnfd_matrix_load(const char* path, hnfd_matrix** out);
HNFD_API hnfd_status hnfd_matrix_clone(const hnfd_matrix* m, hnfd_matrix** out);
HNFD_API void hnfd_matrix_free(hnfd_matrix* m);

HNFD_API size_t hnfd_matrix_rows(const hnfd_matrix* m);
HNFD_API size_t hnfd_matrix_cols(const hnfd_matrix* m);
/* Decimal string of entry (i, j). */
HNFD_API hnfd_status hnfd_matrix_entry(const hnfd_matrix* m, size_t i,
                                       size_t j, char** out);
HNFD_API hnfd_status hnfd_matrix_format(const hnfd_matrix* m, char** out);
HNFD_API hnfd_status hnfd_matrix_multiply(const hnfd_matrix* a,
                                          const hnfd_matrix* b,
                                          hnfd_matrix** out);
HNFD_API int hnfd_matrix_equal(const hnfd_matrix* a, const hnfd_matrix* b);

HNFD_API hnfd_status hnfd_determinant(const hnfd_matrix* m, char** out);
HNFD_API hnfd_status hnfd_minors_gcd(const hnfd_matrix* m, size_t i,
                                     const size_t* cols, char** out);
HNFD_API hnfd_status hnfd_sample_matrix(const hnfd_sample_config* cfg,
                                        uint64_t index, hnfd_matrix** out);
HNFD_API hnfd_status hnfd_random_unimodular(size_t n, size_t num_ops,
                                            uint64_t seed, hnfd_matrix** out);

/* ---- Hermite normal form ---------------------------------------------- */

HNFD_API hnfd_status hnfd_hnf(const hnfd_matrix* a, hnfd_hnf_result** out);
HNFD_API void hnfd_hnf_result_free(hnfd_hnf_result* r);
/* Borrowed; valid while the result lives. transform * a == form. */
HNFD_API const hnfd_matrix* hnfd_hnf_result_form(const hnfd_hnf_result* r);
HNFD_API const hnfd_matrix* hnfd_hnf_result_transform(const hnfd_hnf_result* r);
HNFD_API size_t hnfd_hnf_result_rank(const hnfd_hnf_result* r);
HNFD_API hnfd_status hnfd_hnf_result_pivot(const hnfd_hnf_result* r, size_t i,
                                           size_t* col, char** value);
HNFD_API hnfd_status hnfd_hnf_result_json(const hnfd_hnf_result* r, char** out);
HNFD_API hnfd_status hnfd_is_hnf(const hnfd_matrix* h, int* out);
/* Writes min(n, m) decimal strings; free each with hnfd_string_free. */
HNFD_API hnfd_status hnfd_diag_of_hnf(const hnfd_matrix* a, char** out,
                                      size_t cap, size_t* count);

/* ---- densities ---------------------------------------------------------
 * out_json may be NULL; otherwise it receives the full record. */

HNFD_API hnfd_status hnfd_zeta(int s, double tol, double* out);
HNFD_API hnfd_status hnfd_limit_constant_d(double tol, double* out);
HNFD_API hnfd_status hnfd_diag_density(size_t n, size_t m,
                                       const uint64_t* pattern, size_t k,
                                       double tol, hnfd_density* out,
                                       char** out_json);
HNFD_API hnfd_status hnfd_full_diag_density(size_t n, const uint64_t* d,
                                            size_t len, double tol,
                                            hnfd_density* out, char** out_json);
HNFD_API hnfd_status hnfd_residue_density(size_t n, const uint64_t* prefix,
                                          size_t len, uint64_t d, uint64_t r,
                                          double tol, hnfd_density* out,
                                          char** out_json);
HNFD_API hnfd_status hnfd_unimodular_density(size_t n, size_t m, double tol,
                                             hnfd_density* out,
                                             char** out_json);
HNFD_API hnfd_status hnfd_lattice_shape_density(hnfd_lattice_shape shape,
                                                size_t n, uint64_t s,
                                                double tol, hnfd_density* out,
                                                char** out_json);

/* ---- arithmetic functions ---------------------------------------------
 * Exact values are returned as "num/den" strings (or "num" when den = 1). */

HNFD_API hnfd_status hnfd_factorize(uint64_t g, uint64_t* primes,
                                    unsigned* exponents, size_t cap,
                                    size_t* count);
HNFD_API hnfd_status hnfd_f_n(unsigned n, uint64_t g, char** out);
HNFD_API hnfd_status hnfd_f_limit(uint64_t g, double tol, char** out);
HNFD_API hnfd_status hnfd_d_n(unsigned n, uint64_t g, double tol, double* out);
HNFD_API hnfd_status hnfd_d_limit(uint64_t g, double tol, double* out);
HNFD_API hnfd_status hnfd_distribution_json(unsigned n, uint64_t gmax,
                                            double tol, char** out);

/* ---- Monte Carlo experiments (JSON records) --------------------------- */

HNFD_API hnfd_status hnfd_run_diag_experiment(const hnfd_sample_config* cfg,
                                              const uint64_t* pattern,
                                              size_t k, char** out_json);
/* JSON array, one record per residue. */
HNFD_API hnfd_status hnfd_run_residue_experiment(const hnfd_sample_config* cfg,
                                                 const uint64_t* prefix,
                                                 size_t len, uint64_t d,
                                                 char** out_json);
/* cfg->m must be n - 1; out_csv may be NULL. */
HNFD_API hnfd_status hnfd_run_gcd_det_experiment(const hnfd_sample_config* cfg,
                                                 uint64_t gmax, char** out_json,
                                                 char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* HNFD_H */
