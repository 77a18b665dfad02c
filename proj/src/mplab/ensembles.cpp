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

#include "mplab/ensembles.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "mplab/error.hpp"

namespace mplab {
namespace {

[[noreturn]] void ParseFail(std::string_view token, std::string_view why) {
  Fail(ErrorCode::kParse, "model spec: " + std::string(why) + " '" +
                              std::string(token) + "'");
}

double ParseNumber(std::string_view token) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    ParseFail(token, "bad number");
  }
  return v;
}

std::vector<double> ParseList(std::string_view list) {
  std::vector<double> out;
  if (list.empty()) ParseFail(list, "empty list");
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = list.find(',', start);
    out.push_back(ParseNumber(list.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string FormatNumber(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string FormatList(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ',';
    out += FormatNumber(values[i]);
  }
  return out;
}

std::pair<std::string_view, std::string_view> SplitHead(std::string_view s) {
  const std::size_t colon = s.find(':');
  if (colon == std::string_view::npos) return {s, {}};
  return {s.substr(0, colon), s.substr(colon + 1)};
}

void ValidateCov(const CovSpec& cov) {
  if (const auto* spiked = std::get_if<CovSpiked>(&cov)) {
    if (spiked->count < 0) Fail(ErrorCode::kDomain, "spiked: negative count");
    if (!spiked->size_is_dim && spiked->size < 0.0)
      Fail(ErrorCode::kDomain, "spiked: spike size must be >= 0");
  } else if (const auto* toe = std::get_if<CovToeplitz>(&cov)) {
    if (!(std::abs(toe->phi) < 1.0))
      Fail(ErrorCode::kDomain, "toeplitz: need |phi| < 1");
  } else if (const auto* ac = std::get_if<CovAutocov>(&cov)) {
    if (ac->gamma.empty() || !(ac->gamma[0] > 0.0))
      Fail(ErrorCode::kDomain, "autocov: gamma[0] must be positive");
  }
}

}  // namespace

CovSpec ParseCovSpec(std::string_view spec) {
  auto [head, rest] = SplitHead(spec);
  CovSpec cov;
  if (head == "identity") {
    if (!rest.empty()) ParseFail(rest, "unexpected token");
    cov = CovIdentity{};
  } else if (head == "spiked") {
    const std::size_t comma = rest.find(',');
    if (comma == std::string_view::npos) ParseFail(rest, "spiked needs k,s");
    const std::string_view k_tok = rest.substr(0, comma);
    const std::string_view s_tok = rest.substr(comma + 1);
    const double k = ParseNumber(k_tok);
    if (k < 0 || k != std::floor(k)) ParseFail(k_tok, "bad spike count");
    CovSpiked spiked{static_cast<Index>(k), 1.0, false};
    if (s_tok == "p") {
      spiked.size_is_dim = true;
    } else {
      spiked.size = ParseNumber(s_tok);
    }
    cov = spiked;
  } else if (head == "toeplitz") {
    cov = CovToeplitz{ParseNumber(rest)};
  } else if (head == "autocov") {
    cov = CovAutocov{ParseList(rest)};
  } else {
    ParseFail(head, "unknown covariance");
  }
  ValidateCov(cov);
  return cov;
}

std::string CovSpecString(const CovSpec& cov) {
  struct Visitor {
    std::string operator()(const CovIdentity&) const { return "identity"; }
    std::string operator()(const CovSpiked& s) const {
      return "spiked:" + std::to_string(s.count) + "," +
             (s.size_is_dim ? std::string("p") : FormatNumber(s.size));
    }
    std::string operator()(const CovToeplitz& t) const {
      return "toeplitz:" + FormatNumber(t.phi);
    }
    std::string operator()(const CovAutocov& a) const {
      return "autocov:" + FormatList(a.gamma);
    }
  };
  return std::visit(Visitor{}, cov);
}

VectorModel ParseModel(std::string_view spec) {
  auto [head, rest] = SplitHead(spec);
  auto no_args = [&, rest = rest](VectorModel m) -> VectorModel {
    if (!rest.empty()) ParseFail(rest, "unexpected token");
    return m;
  };
  if (head == "iid-gauss") return no_args(IidGaussian{});
  if (head == "iid-rademacher") return no_args(IidRademacher{});
  if (head == "sparse-spike") return no_args(SparseSpike{});
  if (head == "block-xi") return no_args(BlockXi{});
  if (head == "gauss-cov") return GaussianCov{ParseCovSpec(rest)};
  if (head == "weak-ma") {
    std::vector<double> c = ParseList(rest);
    double norm2 = 0.0;
    for (double v : c) norm2 += v * v;
    if (!(norm2 > 0.0)) ParseFail(rest, "all-zero coefficients");
    return WeakDependent{std::move(c)};
  }
  ParseFail(head, "unknown model");
}

std::string ModelSpec(const VectorModel& model) {
  struct Visitor {
    std::string operator()(const IidGaussian&) const { return "iid-gauss"; }
    std::string operator()(const IidRademacher&) const { return "iid-rademacher"; }
    std::string operator()(const SparseSpike&) const { return "sparse-spike"; }
    std::string operator()(const BlockXi&) const { return "block-xi"; }
    std::string operator()(const GaussianCov& g) const {
      return "gauss-cov:" + CovSpecString(g.cov);
    }
    std::string operator()(const WeakDependent& w) const {
      return "weak-ma:" + FormatList(w.coeffs);
    }
  };
  return std::visit(Visitor{}, model);
}

bool IsIsotropic(const VectorModel& model) {
  if (const auto* g = std::get_if<GaussianCov>(&model))
    return std::holds_alternative<CovIdentity>(g->cov);
  if (const auto* w = std::get_if<WeakDependent>(&model)) {
    return std::count_if(w->coeffs.begin(), w->coeffs.end(),
                         [](double c) { return c != 0.0; }) <= 1;
  }
  return true;
}

bool IsGaussian(const VectorModel& model) {
  return std::holds_alternative<IidGaussian>(model) ||
         std::holds_alternative<GaussianCov>(model);
}

std::vector<double> NormalizedCoefficients(const std::vector<double>& coeffs) {
  double norm2 = 0.0;
  for (double v : coeffs) norm2 += v * v;
  Require(norm2 > 0.0, ErrorCode::kDomain, "weak-ma: all-zero coefficients");
  const double inv = 1.0 / std::sqrt(norm2);
  std::vector<double> out(coeffs);
  for (double& v : out) v *= inv;
  return out;
}

SymMatrix CovarianceMatrix(const CovSpec& cov, Index p) {
  Require(p >= 1, ErrorCode::kDomain, "covariance: p must be >= 1");
  ValidateCov(cov);
  if (std::holds_alternative<CovIdentity>(cov)) return SymMatrix::Identity(p);
  if (const auto* s = std::get_if<CovSpiked>(&cov)) {
    Require(s->count <= p, ErrorCode::kDomain, "spiked: count exceeds p");
    Vector d = Vector::Ones(p);
    const double size = s->size_is_dim ? static_cast<double>(p) : s->size;
    d.head(s->count).setConstant(size);
    return SymMatrix::Diagonal(d);
  }
  Matrix m = Matrix::Zero(p, p);
  if (const auto* t = std::get_if<CovToeplitz>(&cov)) {
    for (Index j = 0; j < p; ++j)
      for (Index i = j; i < p; ++i)
        m(i, j) = std::pow(t->phi, static_cast<double>(i - j));
  } else {
    const auto& gamma = std::get<CovAutocov>(cov).gamma;
    const Index band = static_cast<Index>(gamma.size());
    for (Index j = 0; j < p; ++j)
      for (Index i = j; i < std::min(p, j + band); ++i)
        m(i, j) = gamma[static_cast<std::size_t>(i - j)];
  }
  return SymMatrix::FromLower(std::move(m));
}

SymMatrix PopulationCovariance(const VectorModel& model, Index p) {
  Require(p >= 1, ErrorCode::kDomain, "covariance: p must be >= 1");
  if (const auto* g = std::get_if<GaussianCov>(&model))
    return CovarianceMatrix(g->cov, p);
  if (const auto* w = std::get_if<WeakDependent>(&model)) {
    const std::vector<double> c = NormalizedCoefficients(w->coeffs);
    std::vector<double> gamma(c.size(), 0.0);
    for (std::size_t h = 0; h < c.size(); ++h)
      for (std::size_t j = 0; j + h < c.size(); ++j) gamma[h] += c[j] * c[j + h];
    return CovarianceMatrix(CovAutocov{std::move(gamma)}, p);
  }
  return SymMatrix::Identity(p);
}

MovingAverageDraw SampleMovingAverage(const std::vector<double>& coeffs,
                                      Index p, Stream& rng) {
  const std::vector<double> c = NormalizedCoefficients(coeffs);
  const Index lag = static_cast<Index>(c.size()) - 1;
  MovingAverageDraw draw;
  draw.innovations.resize(p + lag);
  for (Index i = 0; i < p + lag; ++i) draw.innovations(i) = rng.Rademacher();
  draw.x.setZero(p);
  for (Index k = 0; k < p; ++k) {
    double acc = 0.0;
    for (Index j = 0; j <= lag; ++j)
      acc += c[static_cast<std::size_t>(j)] * draw.innovations(k + lag - j);
    draw.x(k) = acc;
  }
  return draw;
}

Sampler::Sampler(VectorModel model, Index p) : model_(std::move(model)), p_(p) {
  Require(p >= 1, ErrorCode::kDomain, "sampler: p must be >= 1");
  if (std::holds_alternative<BlockXi>(model_)) {
    Require(p % 2 == 0, ErrorCode::kDomain, "block-xi needs even p");
  } else if (const auto* w = std::get_if<WeakDependent>(&model_)) {
    NormalizedCoefficients(w->coeffs);
  } else if (const auto* g = std::get_if<GaussianCov>(&model_)) {
    if (!std::holds_alternative<CovIdentity>(g->cov)) {
      const SymMatrix root = PsdSqrt(CovarianceMatrix(g->cov, p));
      const Matrix& r = root.dense();
      if (r.isDiagonal(0.0)) {
        root_diag_ = r.diagonal();
      } else {
        root_ = r;
      }
    }
  }
}

void Sampler::SampleInto(Eigen::Ref<Vector> out, Stream& rng) const {
  Require(out.size() == p_, ErrorCode::kDomain, "sampler: output size mismatch");
  struct Visitor {
    const Sampler& s;
    Eigen::Ref<Vector>& out;
    Stream& rng;
    void operator()(const IidGaussian&) const {
      for (Index i = 0; i < s.p_; ++i) out(i) = rng.Normal();
    }
    void operator()(const IidRademacher&) const {
      for (Index i = 0; i < s.p_; ++i) out(i) = rng.Rademacher();
    }
    void operator()(const SparseSpike&) const {
      const double p = static_cast<double>(s.p_);
      const double height = std::sqrt(p);
      for (Index i = 0; i < s.p_; ++i) {
        const double u = rng.Uniform();
        out(i) = u < 0.5 / p ? height : (u < 1.0 / p ? -height : 0.0);
      }
    }
    void operator()(const BlockXi&) const {
      const Index half = s.p_ / 2;
      const bool first = rng.Uniform() < 0.5;
      out.setZero();
      auto block = first ? out.head(half) : out.tail(half);
      for (Index i = 0; i < half; ++i) block(i) = std::sqrt(2.0) * rng.Normal();
    }
    void operator()(const GaussianCov&) const {
      for (Index i = 0; i < s.p_; ++i) out(i) = rng.Normal();
      if (s.root_diag_) {
        out.array() *= s.root_diag_->array();
      } else if (s.root_) {
        out = (*s.root_) * out;
      }
    }
    void operator()(const WeakDependent& w) const {
      out = SampleMovingAverage(w.coeffs, s.p_, rng).x;
    }
  };
  std::visit(Visitor{*this, out, rng}, model_);
}

Vector Sampler::Sample(Stream& rng) const {
  Vector v(p_);
  SampleInto(v, rng);
  return v;
}

Vector SampleVector(const VectorModel& model, Index p, Stream& rng) {
  return Sampler(model, p).Sample(rng);
}

Matrix SampleDataMatrix(const Sampler& sampler, Index n, Stream& rng) {
  Require(n >= 1, ErrorCode::kDomain, "data matrix: n must be >= 1");
  Matrix x(sampler.dim(), n);
  for (Index k = 0; k < n; ++k) sampler.SampleInto(x.col(k), rng);
  return x;
}

Matrix SampleDataMatrix(const VectorModel& model, Index p, Index n, Stream& rng) {
  return SampleDataMatrix(Sampler(model, p), n, rng);
}

}  // namespace mplab
