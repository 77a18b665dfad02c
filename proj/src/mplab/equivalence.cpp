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

#include "mplab/equivalence.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <utility>

#include "mplab/error.hpp"
#include "mplab/spectra.hpp"

namespace mplab {
namespace {

double ParseDouble(std::string_view token, const char* what) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    Fail(ErrorCode::kParse,
         std::string(what) + ": bad number '" + std::string(token) + "'");
  }
  return v;
}

std::string Num(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

SymMatrix ShiftedCovariance(const Matrix& data, const Matrix& offset,
                            const SymMatrix& shift) {
  const Index n = data.cols();
  Matrix lower = Matrix::Zero(data.rows(), data.rows());
  if (offset.size() == 0) {
    lower.selfadjointView<Eigen::Lower>().rankUpdate(data, 1.0 / static_cast<double>(n));
  } else {
    lower.selfadjointView<Eigen::Lower>().rankUpdate(data + offset,
                                                     1.0 / static_cast<double>(n));
  }
  lower.triangularView<Eigen::Lower>() += shift.dense();
  return SymMatrix::FromLower(std::move(lower));
}

std::vector<Complex> GapsFromData(const SwapConfig& cfg, const Matrix& x, const Matrix& z,
                                  const std::vector<ComplexPoint>& points) {
  const SymMatrix shift = ShiftMatrix(cfg.shift, cfg.p);
  const Matrix offset = OffsetMatrix(cfg.offset, cfg.p, cfg.n);
  const Spectrum sx = Eigh(ShiftedCovariance(x, offset, shift), false);
  const Spectrum sz = Eigh(ShiftedCovariance(z, offset, shift), false);
  std::vector<Complex> out;
  out.reserve(points.size());
  for (const ComplexPoint& pt : points) out.push_back(ResolventTrace(sx, pt) - ResolventTrace(sz, pt));
  return out;
}

void ValidateDims(const SwapConfig& cfg) {
  Require(cfg.p >= 1 && cfg.n >= 1, ErrorCode::kDomain,
          "resolvent gap: p and n must be >= 1");
}

}  // namespace

ShiftSpec ParseShift(std::string_view spec) {
  if (spec == "none" || spec.empty()) return ShiftNone{};
  if (spec.rfind("scaled:", 0) == 0)
    return ShiftScaledIdentity{ParseDouble(spec.substr(7), "shift spec")};
  if (spec.rfind("random-psd:", 0) == 0) {
    const std::string_view tok = spec.substr(11);
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), seed);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      Fail(ErrorCode::kParse, "shift spec: bad seed '" + std::string(tok) + "'");
    return ShiftRandomPsd{seed};
  }
  Fail(ErrorCode::kParse, "shift spec: unknown shift '" + std::string(spec) + "'");
}

std::string ShiftString(const ShiftSpec& spec) {
  if (const auto* s = std::get_if<ShiftScaledIdentity>(&spec)) return "scaled:" + Num(s->beta);
  if (const auto* r = std::get_if<ShiftRandomPsd>(&spec))
    return "random-psd:" + std::to_string(r->seed);
  return "none";
}

OffsetSpec ParseOffset(std::string_view spec) {
  if (spec == "none" || spec.empty()) return OffsetNone{};
  if (spec.rfind("const:", 0) == 0)
    return OffsetConstant{ParseDouble(spec.substr(6), "offset spec")};
  Fail(ErrorCode::kParse, "offset spec: unknown offset '" + std::string(spec) + "'");
}

std::string OffsetString(const OffsetSpec& spec) {
  if (const auto* c = std::get_if<OffsetConstant>(&spec)) return "const:" + Num(c->gamma);
  return "none";
}

SymMatrix ShiftMatrix(const ShiftSpec& spec, Index p) {
  if (const auto* s = std::get_if<ShiftScaledIdentity>(&spec)) {
    return SymMatrix::Diagonal(Vector::Constant(p, s->beta));
  }
  if (const auto* r = std::get_if<ShiftRandomPsd>(&spec)) {
    Stream rng(r->seed, ExperimentId("shift"));
    Vector u(p);
    for (Index i = 0; i < p; ++i) u(i) = rng.Uniform();
    u /= u.maxCoeff();
    const Matrix q = HaarFrame(p, p, rng).matrix();
    return SymMatrix::FromLower(q.transpose() * u.asDiagonal() * q);
  }
  return SymMatrix::Zero(p);
}

Matrix OffsetMatrix(const OffsetSpec& spec, Index p, Index n) {
  if (const auto* c = std::get_if<OffsetConstant>(&spec)) {
    return Matrix::Constant(p, n, c->gamma / std::sqrt(static_cast<double>(p)));
  }
  return Matrix();
}

VectorModel PairedGaussian(const VectorModel& model, Index /*p*/) {
  if (const auto* g = std::get_if<GaussianCov>(&model)) return *g;
  if (const auto* w = std::get_if<WeakDependent>(&model)) {
    const std::vector<double> c = NormalizedCoefficients(w->coeffs);
    std::vector<double> gamma(c.size(), 0.0);
    for (std::size_t h = 0; h < c.size(); ++h)
      for (std::size_t j = 0; j + h < c.size(); ++j) gamma[h] += c[j] * c[j + h];
    return GaussianCov{CovAutocov{std::move(gamma)}};
  }
  return GaussianCov{CovIdentity{}};
}

Complex ResolventGap(const SwapConfig& cfg, const Stream& rng) {
  return ResolventGaps(cfg, {cfg.z}, rng).front();
}

std::vector<Complex> ResolventGaps(const SwapConfig& cfg, const std::vector<ComplexPoint>& points,
                                   const Stream& rng) {
  ValidateDims(cfg);
  Stream x_rng = rng.Substream(1);
  Stream z_rng = rng.Substream(2);
  const Matrix x = SampleDataMatrix(cfg.model, cfg.p, cfg.n, x_rng);
  const Matrix z = SampleDataMatrix(PairedGaussian(cfg.model, cfg.p), cfg.p, cfg.n, z_rng);
  return GapsFromData(cfg, x, z, points);
}

HeteroGap ResolventGapHetero(const SwapConfig& cfg, const Stream& rng) {
  HeteroGaps g = ResolventGapsHetero(cfg, {cfg.z}, rng);
  return HeteroGap{g.delta.front(), g.a3_star, g.a3_violated};
}

HeteroGaps ResolventGapsHetero(const SwapConfig& cfg, const std::vector<ComplexPoint>& points,
                               const Stream& rng) {
  ValidateDims(cfg);
  Require(static_cast<Index>(cfg.hetero.size()) == cfg.n, ErrorCode::kDomain,
          "hetero: covariance list length must equal n");
  Require(IsIsotropic(cfg.model), ErrorCode::kPrecondition,
          "hetero: base model must be isotropic");

  // One square root per distinct covariance.
  struct Column {
    Sampler gauss;
    std::optional<Matrix> root;
    double trace_sq;
  };
  std::map<std::string, Column> cache;
  HeteroGaps out;
  double trace_sq_sum = 0.0;
  for (const CovSpec& cov : cfg.hetero) {
    const std::string key = CovSpecString(cov);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const SymMatrix sigma = CovarianceMatrix(cov, cfg.p);
      std::optional<Matrix> root;
      if (!std::holds_alternative<CovIdentity>(cov)) root = PsdSqrt(sigma).dense();
      it = cache.emplace(key, Column{Sampler(GaussianCov{cov}, cfg.p), std::move(root),
                                     sigma.dense().squaredNorm()})
               .first;
    }
    trace_sq_sum += it->second.trace_sq;
  }
  const double p = static_cast<double>(cfg.p);
  out.a3_star = trace_sq_sum / (static_cast<double>(cfg.n) * p * p);
  out.a3_violated = out.a3_star > kA3StarFlag;

  const Sampler base(cfg.model, cfg.p);
  Stream x_rng = rng.Substream(1);
  Stream z_rng = rng.Substream(2);
  Matrix x(cfg.p, cfg.n), z(cfg.p, cfg.n);
  for (Index k = 0; k < cfg.n; ++k) {
    const Column& col = cache.at(CovSpecString(cfg.hetero[static_cast<std::size_t>(k)]));
    base.SampleInto(x.col(k), x_rng);
    if (col.root) x.col(k) = (*col.root) * x.col(k);
    col.gauss.SampleInto(z.col(k), z_rng);
  }
  out.delta = GapsFromData(cfg, x, z, points);
  return out;
}

std::vector<ComplexPoint> DefaultZGrid() {
  return {ComplexPoint(0.0, 1.0), ComplexPoint(1.0, 1.0), ComplexPoint(-1.0, 0.5),
          ComplexPoint(0.0, 2.0)};
}

}  // namespace mplab
