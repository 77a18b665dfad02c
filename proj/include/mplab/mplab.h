// Copyright 2026 The mplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MPLAB_MPLAB_H_
#define MPLAB_MPLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(MPLAB_BUILDING_LIBRARY)
#define MPLAB_API __declspec(dllexport)
#else
#define MPLAB_API __declspec(dllimport)
#endif
#else
#define MPLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mplab_status {
  MPLAB_OK = 0,
  MPLAB_ERR_INVALID_INPUT = 1,
  MPLAB_ERR_DOMAIN = 2,
  MPLAB_ERR_CONVERGENCE = 3,
  MPLAB_ERR_PRECONDITION = 4,
  MPLAB_ERR_PARSE = 5,
  MPLAB_ERR_IO = 6,
  MPLAB_ERR_RESOURCE = 7,
  MPLAB_ERR_NULL_ARG = 8,
  MPLAB_ERR_INTERNAL = 99
} mplab_status;

typedef struct mplab_complex {
  double re;
  double im;
} mplab_complex;

typedef struct mplab_matrix mplab_matrix;
typedef struct mplab_spectrum mplab_spectrum;
typedef struct mplab_stream mplab_stream;
typedef struct mplab_model mplab_model;
typedef struct mplab_experiment mplab_experiment;
typedef struct mplab_result mplab_result;

MPLAB_API const char* mplab_version(void);
MPLAB_API const char* mplab_status_string(mplab_status status);
/* Message for the last failing call on this thread; "" if none. */
MPLAB_API const char* mplab_last_error(void);

/* Marchenko-Pastur law with ratio rho > 0. */
MPLAB_API mplab_status mplab_law_support(double rho, double* lower, double* upper,
                                         double* atom0);
MPLAB_API mplab_status mplab_law_density(double rho, double x, double* out);
MPLAB_API mplab_status mplab_law_cdf(double rho, double x, double* out);
MPLAB_API mplab_status mplab_law_moment(double rho, int k, double* out);
MPLAB_API mplab_status mplab_law_stieltjes(double rho, mplab_complex z, mplab_complex* out);

/* Dense matrices, column-major storage. Null data gives a zero matrix. */
MPLAB_API mplab_status mplab_matrix_create(size_t rows, size_t cols, const double* data,
                                           mplab_matrix** out);
MPLAB_API void mplab_matrix_free(mplab_matrix* m);
MPLAB_API size_t mplab_matrix_rows(const mplab_matrix* m);
MPLAB_API size_t mplab_matrix_cols(const mplab_matrix* m);
MPLAB_API mplab_status mplab_matrix_copy_out(const mplab_matrix* m, double* data, size_t len);
MPLAB_API mplab_status mplab_matrix_spectral_norm(const mplab_matrix* m, double* out);
MPLAB_API mplab_status mplab_matrix_dump(const mplab_matrix* m, const char* path);
MPLAB_API mplab_status mplab_matrix_load(const char* path, mplab_matrix** out);

/* Symmetric eigendecomposition; the lower triangle of m is used. */
MPLAB_API mplab_status mplab_eigh(const mplab_matrix* m, int want_vectors, mplab_spectrum** out);
MPLAB_API void mplab_spectrum_free(mplab_spectrum* s);
MPLAB_API size_t mplab_spectrum_size(const mplab_spectrum* s);
MPLAB_API mplab_status mplab_spectrum_eigenvalues(const mplab_spectrum* s, double* out, size_t len);
/* Column-major p x p; fails with MPLAB_ERR_PRECONDITION without vectors. */
MPLAB_API mplab_status mplab_spectrum_eigenvectors(const mplab_spectrum* s, double* out,
                                                   size_t len);
/* (1/p) tr(A - zI)^{-1}. */
MPLAB_API mplab_status mplab_resolvent_trace(const mplab_spectrum* s, mplab_complex z,
                                             mplab_complex* out);
/* tr(A + ww^T - zI)^{-1}, unnormalized. */
MPLAB_API mplab_status mplab_rank_one_trace_update(const mplab_spectrum* s, const double* w,
                                                   size_t len, mplab_complex z,
                                                   mplab_complex* out);
/* Spectrum treated as a PSD empirical distribution. */
MPLAB_API mplab_status mplab_ks_distance(const mplab_spectrum* s, double rho, double* out);
MPLAB_API mplab_status mplab_empirical_stieltjes(const mplab_spectrum* s, mplab_complex z,
                                                 mplab_complex* out);

/* Counter-based stream keyed by (seed, experiment name, trial, column). */
MPLAB_API mplab_status mplab_stream_create(uint64_t seed, const char* experiment, uint64_t trial,
                                           uint64_t column, mplab_stream** out);
MPLAB_API void mplab_stream_free(mplab_stream* s);
MPLAB_API mplab_status mplab_stream_normal(mplab_stream* s, double* out);
MPLAB_API mplab_status mplab_stream_uniform(mplab_stream* s, double* out);
/* q x p matrix with orthonormal rows. */
MPLAB_API mplab_status mplab_haar_frame(size_t q, size_t p, mplab_stream* rng, mplab_matrix** out);

/* Vector models, e.g. "iid-gauss", "block-xi", "gauss-cov:toeplitz:0.5". */
MPLAB_API mplab_status mplab_model_parse(const char* spec, mplab_model** out);
MPLAB_API void mplab_model_free(mplab_model* m);
/* Canonical spec; valid until the model is freed. */
MPLAB_API const char* mplab_model_spec(const mplab_model* m);
MPLAB_API mplab_status mplab_sample_data_matrix(const mplab_model* m, size_t p, size_t n,
                                                mplab_stream* rng, mplab_matrix** out);
MPLAB_API mplab_status mplab_population_covariance(const mplab_model* m, size_t p,
                                                   mplab_matrix** out);
MPLAB_API mplab_status mplab_sample_covariance(const mplab_matrix* x, mplab_matrix** out);
MPLAB_API mplab_status mplab_projected_covariance(const mplab_matrix* frame,
                                                  const mplab_matrix* m, mplab_matrix** out);

/* Monte Carlo condition statistics. */
MPLAB_API mplab_status mplab_lindeberg_stat(const mplab_model* m, size_t p, double eps,
                                            size_t trials, mplab_stream* rng, double* value,
                                            double* se);
MPLAB_API mplab_status mplab_quadform_stat(const mplab_model* m, const mplab_matrix* a,
                                           mplab_stream* rng, double* out);
MPLAB_API mplab_status mplab_e9_stat(const mplab_model* m, size_t p, mplab_stream* rng,
                                     double* out);
MPLAB_API mplab_status mplab_a3_stat(const mplab_matrix* sigma, double* out);

/* Experiments configured by JSON. */
MPLAB_API mplab_status mplab_experiment_from_json(const char* json, mplab_experiment** out);
MPLAB_API void mplab_experiment_free(mplab_experiment* e);
/* Caller frees the returned string with mplab_string_free. */
MPLAB_API mplab_status mplab_experiment_to_json(const mplab_experiment* e, char** out);
/* threads = 0 reads MPLAB_THREADS. */
MPLAB_API mplab_status mplab_experiment_run(const mplab_experiment* e, int threads,
                                            mplab_result** out);
MPLAB_API void mplab_result_free(mplab_result* r);
MPLAB_API int mplab_result_passed(const mplab_result* r);
/* Valid until the result is freed. */
MPLAB_API const char* mplab_result_summary_json(const mplab_result* r);
MPLAB_API void mplab_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif  /* MPLAB_MPLAB_H_ */
