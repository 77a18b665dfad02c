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

#include "mplab/conditions.hpp"

#include <charconv>
#include <cmath>

#include "mplab/error.hpp"
#include "mplab/mp_law.hpp"
#include "mplab/spectra.hpp"

namespace mplab {
namespace {

double ParseDouble(std::string_view token) {
  double v = 0.0;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    Fail(ErrorCode::kParse, "family spec: bad number '" + std::string(token) + "'");
  }
  return v;
}

std::string Num(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Q diag(values) Q^T for a Haar-random orthogonal Q.
SymMatrix RotatedDiagonal(const Vector& values, Stream& rng) {
  const Index p = values.size();
  const Matrix q = HaarFrame(p, p, rng).matrix();
  Matrix a = q.transpose() * values.asDiagonal() * q;
  return SymMatrix::FromLower(std::move(a));
}

}  // namespace

void MeanAccumulator::Add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

McEstimate MeanAccumulator::Result() const {
  McEstimate out;
  out.trials = n_;
  out.value = mean_;
  if (n_ > 1) {
    const double var = m2_ / static_cast<double>(n_ - 1);
    out.se = std::sqrt(var / static_cast<double>(n_));
  }
  return out;
}

McEstimate Frequency(std::size_t hits, std::size_t trials) {
  Require(trials >= 1, ErrorCode::kDomain, "frequency: no trials");
  const double f = static_cast<double>(hits) / static_cast<double>(trials);
  return {f, std::sqrt(f * (1.0 - f) / static_cast<double>(trials)), trials};
}

MatrixFamily ParseFamily(std::string_view spec) {
  const std::size_t colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto bare = [&](MatrixFamily f) -> MatrixFamily {
    if (colon != std::string_view::npos)
      Fail(ErrorCode::kParse, "family spec: unexpected token '" + std::string(rest) + "'");
    return f;
  };
  if (head == "identity") return bare(FamilyIdentity{});
  if (head == "fixed-half") return bare(FamilyFixedHalf{});
  if (head == "random-psd") return bare(FamilyRandomPsd{});
  if (head == "haar-projector") {
    if (colon == std::string_view::npos) return FamilyHaarProjector{0};
    const double q = ParseDouble(rest);
    if (q < 1 || q != std::floor(q))
      Fail(ErrorCode::kParse, "family spec: bad rank '" + std::string(rest) + "'");
    return FamilyHaarProjector{static_cast<Index>(q)};
  }
  if (head == "squared-resolvent") {
    const std::size_t comma = rest.find(',');
    if (comma == std::string_view::npos)
      Fail(ErrorCode::kParse, "family spec: squared-resolvent needs re,im");
    const double re = ParseDouble(rest.substr(0, comma));
    const double im = ParseDouble(rest.substr(comma + 1));
    if (!(im > 0.0)) Fail(ErrorCode::kDomain, "squared-resolvent: need im > 0");
    return FamilySquaredResolvent{re, im};
  }
  Fail(ErrorCode::kParse, "family spec: unknown family '" + std::string(head) + "'");
}

std::string FamilyString(const MatrixFamily& family) {
  struct Visitor {
    std::string operator()(const FamilyIdentity&) const { return "identity"; }
    std::string operator()(const FamilyHaarProjector& h) const {
      return h.rank == 0 ? "haar-projector" : "haar-projector:" + std::to_string(h.rank);
    }
    std::string operator()(const FamilyFixedHalf&) const { return "fixed-half"; }
    std::string operator()(const FamilyRandomPsd&) const { return "random-psd"; }
    std::string operator()(const FamilySquaredResolvent& s) const {
      return "squared-resolvent:" + Num(s.re) + "," + Num(s.im);
    }
  };
  return std::visit(Visitor{}, family);
}

double FamilyNormBound(const MatrixFamily& family) {
  if (const auto* s = std::get_if<FamilySquaredResolvent>(&family))
    return 1.0 / (s->im * s->im);
  return 1.0;
}

TestMatrix DrawTestMatrix(const MatrixFamily& family, Index p, Stream& rng) {
  Require(p >= 1, ErrorCode::kDomain, "family: p must be >= 1");
  struct Visitor {
    Index p;
    Stream& rng;
    TestMatrix operator()(const FamilyIdentity&) const {
      return SymMatrix::Identity(p);
    }
    TestMatrix operator()(const FamilyHaarProjector& h) const {
      const Index rank = h.rank == 0 ? std::max<Index>(1, p / 2) : h.rank;
      Require(rank <= p, ErrorCode::kDomain, "haar-projector: rank exceeds p");
      return HaarFrame(rank, p, rng);
    }
    TestMatrix operator()(const FamilyFixedHalf&) const {
      Require(p >= 2, ErrorCode::kDomain, "fixed-half: need p >= 2");
      return ProjectorFrame::Coordinate(p / 2, p);
    }
    TestMatrix operator()(const FamilyRandomPsd&) const {
      Vector u(p);
      for (Index i = 0; i < p; ++i) u(i) = rng.Uniform();
      u /= u.maxCoeff();
      return RotatedDiagonal(u, rng);
    }
    TestMatrix operator()(const FamilySquaredResolvent& s) const {
      const Complex z(s.re, s.im);
      Vector values(p);
      for (Index i = 0; i < p; ++i) {
        const Complex inv = 1.0 / (4.0 * rng.Uniform() - z);
        values(i) = (inv * inv).real();
      }
      return RotatedDiagonal(values, rng);
    }
  };
  return std::visit(Visitor{p, rng}, family);
}

SymMatrix DenseTestMatrix(const TestMatrix& a) {
  if (const auto* m = std::get_if<SymMatrix>(&a)) return *m;
  const Matrix& c = std::get<ProjectorFrame>(a).matrix();
  return SymMatrix::FromLower(c.transpose() * c);
}

QuadformProbe::QuadformProbe(const VectorModel& model, Index p)
    : sampler_(model, p),
      sigma_(PopulationCovariance(model, p)),
      isotropic_(IsIsotropic(model)) {}

double QuadformProbe::Draw(const TestMatrix& a, Stream& rng) const {
  const Index p = sampler_.dim();
  const Vector x = sampler_.Sample(rng);
  double form, centering;
  if (const auto* m = std::get_if<SymMatrix>(&a)) {
    Require(m->dim() == p, ErrorCode::kDomain, "quadform: dimension mismatch");
    form = x.dot(m->dense() * x);
    centering = isotropic_ ? m->Trace()
                           : sigma_.dense().cwiseProduct(m->dense()).sum();
  } else {
    const Matrix& c = std::get<ProjectorFrame>(a).matrix();
    Require(c.cols() == p, ErrorCode::kDomain, "quadform: dimension mismatch");
    form = (c * x).squaredNorm();
    centering = isotropic_ ? static_cast<double>(c.rows())
                           : (c * sigma_.dense() * c.transpose()).trace();
  }
  return (form - centering) / static_cast<double>(p);
}

double QuadformProbe::DrawE9(Stream& rng) const {
  const double p = static_cast<double>(sampler_.dim());
  return (sampler_.Sample(rng).squaredNorm() - p) / p;
}

double LindebergTerm(const Vector& x, double eps) {
  const double cut = eps * std::sqrt(static_cast<double>(x.size()));
  double sum = 0.0;
  for (Index k = 0; k < x.size(); ++k)
    if (std::abs(x(k)) > cut) sum += x(k) * x(k);
  return sum / static_cast<double>(x.size());
}

McEstimate LindebergStat(const VectorModel& model, Index p, double eps,
                         std::size_t trials, Stream& rng) {
  Require(eps > 0.0, ErrorCode::kDomain, "lindeberg: eps must be positive");
  Require(trials >= 1, ErrorCode::kDomain, "lindeberg: need at least one trial");
  const Sampler sampler(model, p);
  MeanAccumulator acc;
  Vector x(p);
  for (std::size_t t = 0; t < trials; ++t) {
    sampler.SampleInto(x, rng);
    acc.Add(LindebergTerm(x, eps));
  }
  return acc.Result();
}

double QuadformStat(const VectorModel& model, const SymMatrix& a, Stream& rng) {
  return QuadformProbe(model, a.dim()).Draw(a, rng);
}

McEstimate ConcentrationProbe(const VectorModel& model,
                              const MatrixFamily& family, Index p, double eps,
                              std::size_t trials, Stream& rng) {
  Require(eps > 0.0, ErrorCode::kDomain, "concentration: eps must be positive");
  const QuadformProbe probe(model, p);
  std::size_t hits = 0;
  const bool fixed = std::holds_alternative<FamilyIdentity>(family) ||
                     std::holds_alternative<FamilyFixedHalf>(family);
  std::optional<TestMatrix> fixed_matrix;
  if (fixed) fixed_matrix = DrawTestMatrix(family, p, rng);
  for (std::size_t t = 0; t < trials; ++t) {
    const TestMatrix a = fixed ? *fixed_matrix : DrawTestMatrix(family, p, rng);
    if (std::abs(probe.Draw(a, rng)) > eps) ++hits;
  }
  return Frequency(hits, trials);
}

McEstimate MeanAbsDeviation(const VectorModel& model, const SymMatrix& a,
                            std::size_t trials, Stream& rng) {
  const QuadformProbe probe(model, a.dim());
  const TestMatrix m = a;
  MeanAccumulator acc;
  for (std::size_t t = 0; t < trials; ++t) acc.Add(std::abs(probe.Draw(m, rng)));
  return acc.Result();
}

double A3Stat(const SymMatrix& sigma) {
  const double p = static_cast<double>(sigma.dim());
  return sigma.dense().squaredNorm() / (p * p);
}

ChebyshevCheck ChebyshevBoundCheck(const VectorModel& model, const SymMatrix& a,
                                   Index p, double eps, std::size_t trials,
                                   Stream& rng) {
  Require(IsGaussian(model), ErrorCode::kDomain,
          "chebyshev check: Gaussian models only");
  Require(a.dim() == p, ErrorCode::kDomain, "chebyshev check: dimension mismatch");
  Require(eps > 0.0, ErrorCode::kDomain, "chebyshev check: eps must be positive");
  const QuadformProbe probe(model, p);
  const double norm = SpectralNorm(a);
  const double ep = eps * static_cast<double>(p);
  ChebyshevCheck out;
  out.bound = 2.0 * norm * norm * probe.sigma().dense().squaredNorm() / (ep * ep);
  const TestMatrix m = a;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t)
    if (std::abs(probe.Draw(m, rng)) > eps) ++hits;
  const McEstimate f = Frequency(hits, trials);
  out.observed = f.value;
  out.se = f.se;
  return out;
}

double MpPropertyTrial(const VectorModel& model, Index p, Index n, Index q,
                       Stream& rng, FrameMode mode) {
  Require(q >= 1 && q <= p, ErrorCode::kDomain, "mp-property: need 1 <= q <= p");
  const Matrix x = SampleDataMatrix(model, p, n, rng);
  const ProjectorFrame frame = mode == FrameMode::kHaar
                                   ? HaarFrame(q, p, rng)
                                   : ProjectorFrame::Coordinate(q, p);
  // C (X X^T / n) C^T computed as (C X)(C X)^T / n.
  const SymMatrix projected = SampleCovariance(frame.matrix() * x);
  const Esd esd = ComputeEsd(projected, true);
  return KsDistance(esd, MPLaw(static_cast<double>(q) / static_cast<double>(n)));
}

double E9Stat(const VectorModel& model, Index p, Stream& rng) {
  const Sampler sampler(model, p);
  const double dp = static_cast<double>(p);
  return (sampler.Sample(rng).squaredNorm() - dp) / dp;
}

}  // namespace mplab
