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

#include "mplab/mplab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "mplab/conditions.hpp"
#include "mplab/ensembles.hpp"
#include "mplab/error.hpp"
#include "mplab/experiment.hpp"
#include "mplab/matcore.hpp"
#include "mplab/mp_law.hpp"
#include "mplab/report.hpp"
#include "mplab/rng.hpp"
#include "mplab/spectra.hpp"

struct mplab_matrix {
  mplab::Matrix m;
};
struct mplab_spectrum {
  mplab::Spectrum s;
};
struct mplab_stream {
  mplab::Stream s;
};
struct mplab_model {
  mplab::VectorModel model;
  std::string spec;
};
struct mplab_experiment {
  mplab::ExperimentConfig cfg;
};
struct mplab_result {
  bool passed;
  std::string summary;
};

namespace {

thread_local std::string g_last_error;

mplab_status ToStatus(mplab::ErrorCode code) {
  return static_cast<mplab_status>(static_cast<int>(code));
}

template <typename F>
mplab_status Guard(F&& f) {
  try {
    g_last_error.clear();
    f();
    return MPLAB_OK;
  } catch (const mplab::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MPLAB_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MPLAB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MPLAB_ERR_INTERNAL;
  }
}

#define MPLAB_CHECK_NULL(ptr)                                   \
  do {                                                          \
    if ((ptr) == nullptr) {                                     \
      g_last_error = "null argument: " #ptr;                    \
      return MPLAB_ERR_NULL_ARG;                                \
    }                                                           \
  } while (0)

mplab::Complex ToComplex(mplab_complex z) { return {z.re, z.im}; }
mplab_complex FromComplex(mplab::Complex z) { return {z.real(), z.imag()}; }

mplab::Index ToIndex(size_t v) {
  if (v > static_cast<size_t>(mplab::kMaxDimension) * 1024)
    mplab::Fail(mplab::ErrorCode::kResource, "dimension too large");
  return static_cast<mplab::Index>(v);
}

mplab::SymMatrix Symmetric(const mplab::Matrix& m) {
  return mplab::SymMatrix::FromLower(m);
}

mplab::Esd PsdEsd(const mplab::Spectrum& s) {
  mplab::Vector ev = s.eigenvalues;
  mplab::ClampPsd(ev);
  return mplab::Esd{ev};
}

}  // namespace

extern "C" {

const char* mplab_version(void) { return "0.1.0"; }

const char* mplab_status_string(mplab_status status) {
  switch (status) {
    case MPLAB_OK: return "ok";
    case MPLAB_ERR_INVALID_INPUT: return "invalid input";
    case MPLAB_ERR_DOMAIN: return "domain error";
    case MPLAB_ERR_CONVERGENCE: return "convergence failure";
    case MPLAB_ERR_PRECONDITION: return "precondition violated";
    case MPLAB_ERR_PARSE: return "parse error";
    case MPLAB_ERR_IO: return "i/o error";
    case MPLAB_ERR_RESOURCE: return "resource limit";
    case MPLAB_ERR_NULL_ARG: return "null argument";
    case MPLAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* mplab_last_error(void) { return g_last_error.c_str(); }

mplab_status mplab_law_support(double rho, double* lower, double* upper, double* atom0) {
  MPLAB_CHECK_NULL(lower);
  MPLAB_CHECK_NULL(upper);
  MPLAB_CHECK_NULL(atom0);
  return Guard([&] {
    const mplab::MPLaw law(rho);
    *lower = law.lower();
    *upper = law.upper();
    *atom0 = law.atom0();
  });
}

mplab_status mplab_law_density(double rho, double x, double* out) {
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = mplab::Density(mplab::MPLaw(rho), x); });
}

mplab_status mplab_law_cdf(double rho, double x, double* out) {
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = mplab::Cdf(mplab::MPLaw(rho), x); });
}

mplab_status mplab_law_moment(double rho, int k, double* out) {
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = mplab::Moment(mplab::MPLaw(rho), k); });
}

mplab_status mplab_law_stieltjes(double rho, mplab_complex z, mplab_complex* out) {
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    *out = FromComplex(mplab::StieltjesClosed(mplab::MPLaw(rho), mplab::ComplexPoint(ToComplex(z))));
  });
}

mplab_status mplab_matrix_create(size_t rows, size_t cols, const double* data, mplab_matrix** out) {
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    auto* m = new mplab_matrix{mplab::Matrix::Zero(ToIndex(rows), ToIndex(cols))};
    if (data != nullptr) std::memcpy(m->m.data(), data, rows * cols * sizeof(double));
    *out = m;
  });
}

void mplab_matrix_free(mplab_matrix* m) { delete m; }

size_t mplab_matrix_rows(const mplab_matrix* m) {
  return m == nullptr ? 0 : static_cast<size_t>(m->m.rows());
}

size_t mplab_matrix_cols(const mplab_matrix* m) {
  return m == nullptr ? 0 : static_cast<size_t>(m->m.cols());
}

mplab_status mplab_matrix_copy_out(const mplab_matrix* m, double* data, size_t len) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(data);
  return Guard([&] {
    mplab::Require(len >= static_cast<size_t>(m->m.size()), mplab::ErrorCode::kInvalidInput,
                   "copy_out: buffer too small");
    std::memcpy(data, m->m.data(), static_cast<size_t>(m->m.size()) * sizeof(double));
  });
}

mplab_status mplab_matrix_spectral_norm(const mplab_matrix* m, double* out) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = mplab::SpectralNorm(m->m); });
}

mplab_status mplab_matrix_dump(const mplab_matrix* m, const char* path) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(path);
  return Guard([&] { mplab::WriteMatrixBinary(m->m, path); });
}

mplab_status mplab_matrix_load(const char* path, mplab_matrix** out) {
  MPLAB_CHECK_NULL(path);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = new mplab_matrix{mplab::ReadMatrixBinary(path)}; });
}

mplab_status mplab_eigh(const mplab_matrix* m, int want_vectors, mplab_spectrum** out) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    *out = new mplab_spectrum{mplab::Eigh(Symmetric(m->m), want_vectors != 0)};
  });
}

void mplab_spectrum_free(mplab_spectrum* s) { delete s; }

size_t mplab_spectrum_size(const mplab_spectrum* s) {
  return s == nullptr ? 0 : static_cast<size_t>(s->s.size());
}

mplab_status mplab_spectrum_eigenvalues(const mplab_spectrum* s, double* out, size_t len) {
  MPLAB_CHECK_NULL(s);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    const auto& ev = s->s.eigenvalues;
    mplab::Require(len >= static_cast<size_t>(ev.size()), mplab::ErrorCode::kInvalidInput,
                   "eigenvalues: buffer too small");
    std::memcpy(out, ev.data(), static_cast<size_t>(ev.size()) * sizeof(double));
  });
}

mplab_status mplab_spectrum_eigenvectors(const mplab_spectrum* s, double* out, size_t len) {
  MPLAB_CHECK_NULL(s);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    mplab::Require(s->s.eigenvectors.has_value(), mplab::ErrorCode::kPrecondition,
                   "eigenvectors: spectrum computed without vectors");
    const auto& v = *s->s.eigenvectors;
    mplab::Require(len >= static_cast<size_t>(v.size()), mplab::ErrorCode::kInvalidInput,
                   "eigenvectors: buffer too small");
    std::memcpy(out, v.data(), static_cast<size_t>(v.size()) * sizeof(double));
  });
}

mplab_status mplab_resolvent_trace(const mplab_spectrum* s, mplab_complex z, mplab_complex* out) {
  MPLAB_CHECK_NULL(s);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    *out = FromComplex(mplab::ResolventTrace(s->s, mplab::ComplexPoint(ToComplex(z))));
  });
}

mplab_status mplab_rank_one_trace_update(const mplab_spectrum* s, const double* w, size_t len,
                                         mplab_complex z, mplab_complex* out) {
  MPLAB_CHECK_NULL(s);
  MPLAB_CHECK_NULL(w);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    const mplab::Vector wv = Eigen::Map<const mplab::Vector>(w, ToIndex(len));
    *out = FromComplex(
        mplab::RankOneTraceUpdate(s->s, wv, mplab::ComplexPoint(ToComplex(z))));
  });
}

mplab_status mplab_ks_distance(const mplab_spectrum* s, double rho, double* out) {
  MPLAB_CHECK_NULL(s);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = mplab::KsDistance(PsdEsd(s->s), mplab::MPLaw(rho)); });
}

mplab_status mplab_empirical_stieltjes(const mplab_spectrum* s, mplab_complex z,
                                       mplab_complex* out) {
  MPLAB_CHECK_NULL(s);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    *out = FromComplex(mplab::EmpiricalStieltjes(mplab::Esd{s->s.eigenvalues},
                                                 mplab::ComplexPoint(ToComplex(z))));
  });
}

mplab_status mplab_stream_create(uint64_t seed, const char* experiment, uint64_t trial,
                                 uint64_t column, mplab_stream** out) {
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    const std::uint64_t id = experiment == nullptr ? 0 : mplab::ExperimentId(experiment);
    *out = new mplab_stream{mplab::Stream(seed, id, trial, column)};
  });
}

void mplab_stream_free(mplab_stream* s) { delete s; }

mplab_status mplab_stream_normal(mplab_stream* s, double* out) {
  MPLAB_CHECK_NULL(s);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = s->s.Normal(); });
}

mplab_status mplab_stream_uniform(mplab_stream* s, double* out) {
  MPLAB_CHECK_NULL(s);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = s->s.Uniform(); });
}

mplab_status mplab_haar_frame(size_t q, size_t p, mplab_stream* rng, mplab_matrix** out) {
  MPLAB_CHECK_NULL(rng);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    *out = new mplab_matrix{mplab::HaarFrame(ToIndex(q), ToIndex(p), rng->s).matrix()};
  });
}

mplab_status mplab_model_parse(const char* spec, mplab_model** out) {
  MPLAB_CHECK_NULL(spec);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    mplab::VectorModel model = mplab::ParseModel(spec);
    std::string canonical = mplab::ModelSpec(model);
    *out = new mplab_model{std::move(model), std::move(canonical)};
  });
}

void mplab_model_free(mplab_model* m) { delete m; }

const char* mplab_model_spec(const mplab_model* m) {
  return m == nullptr ? "" : m->spec.c_str();
}

mplab_status mplab_sample_data_matrix(const mplab_model* m, size_t p, size_t n, mplab_stream* rng,
                                      mplab_matrix** out) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(rng);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    *out = new mplab_matrix{mplab::SampleDataMatrix(m->model, ToIndex(p), ToIndex(n), rng->s)};
  });
}

mplab_status mplab_population_covariance(const mplab_model* m, size_t p, mplab_matrix** out) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    *out = new mplab_matrix{mplab::PopulationCovariance(m->model, ToIndex(p)).dense()};
  });
}

mplab_status mplab_sample_covariance(const mplab_matrix* x, mplab_matrix** out) {
  MPLAB_CHECK_NULL(x);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = new mplab_matrix{mplab::SampleCovariance(x->m).dense()}; });
}

mplab_status mplab_projected_covariance(const mplab_matrix* frame, const mplab_matrix* m,
                                        mplab_matrix** out) {
  MPLAB_CHECK_NULL(frame);
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    const auto f = mplab::ProjectorFrame::FromRows(frame->m);
    *out = new mplab_matrix{mplab::ProjectedCovariance(f, Symmetric(m->m)).dense()};
  });
}

mplab_status mplab_lindeberg_stat(const mplab_model* m, size_t p, double eps, size_t trials,
                                  mplab_stream* rng, double* value, double* se) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(rng);
  MPLAB_CHECK_NULL(value);
  return Guard([&] {
    const auto est = mplab::LindebergStat(m->model, ToIndex(p), eps, trials, rng->s);
    *value = est.value;
    if (se != nullptr) *se = est.se;
  });
}

mplab_status mplab_quadform_stat(const mplab_model* m, const mplab_matrix* a, mplab_stream* rng,
                                 double* out) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(a);
  MPLAB_CHECK_NULL(rng);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = mplab::QuadformStat(m->model, Symmetric(a->m), rng->s); });
}

mplab_status mplab_e9_stat(const mplab_model* m, size_t p, mplab_stream* rng, double* out) {
  MPLAB_CHECK_NULL(m);
  MPLAB_CHECK_NULL(rng);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = mplab::E9Stat(m->model, ToIndex(p), rng->s); });
}

mplab_status mplab_a3_stat(const mplab_matrix* sigma, double* out) {
  MPLAB_CHECK_NULL(sigma);
  MPLAB_CHECK_NULL(out);
  return Guard([&] { *out = mplab::A3Stat(Symmetric(sigma->m)); });
}

mplab_status mplab_experiment_from_json(const char* json, mplab_experiment** out) {
  MPLAB_CHECK_NULL(json);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    mplab::ExperimentConfig cfg = mplab::ConfigFromJson(json);
    mplab::ValidateConfig(cfg);
    *out = new mplab_experiment{std::move(cfg)};
  });
}

void mplab_experiment_free(mplab_experiment* e) { delete e; }

mplab_status mplab_experiment_to_json(const mplab_experiment* e, char** out) {
  MPLAB_CHECK_NULL(e);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    const std::string s = mplab::ConfigToJson(e->cfg);
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, s.c_str(), s.size() + 1);
    *out = buf;
  });
}

mplab_status mplab_experiment_run(const mplab_experiment* e, int threads, mplab_result** out) {
  MPLAB_CHECK_NULL(e);
  MPLAB_CHECK_NULL(out);
  return Guard([&] {
    mplab::RunOptions options;
    options.threads = threads;
    const mplab::RunSummary summary = mplab::RunExperiment(e->cfg, options);
    *out = new mplab_result{summary.passed, summary.ToJson(e->cfg)};
  });
}

void mplab_result_free(mplab_result* r) { delete r; }

int mplab_result_passed(const mplab_result* r) { return r != nullptr && r->passed ? 1 : 0; }

const char* mplab_result_summary_json(const mplab_result* r) {
  return r == nullptr ? "" : r->summary.c_str();
}

void mplab_string_free(char* s) { std::free(s); }

}  // extern "C"
