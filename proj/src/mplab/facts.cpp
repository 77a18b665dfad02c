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

#include "mplab/facts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "mplab/error.hpp"

namespace mplab {
namespace {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

Matrix Gaussian(Index rows, Index cols, Stream& rng) {
  Matrix g(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) g(i, j) = rng.Normal();
  return g;
}

double UniformIn(Stream& rng, double lo, double hi) { return lo + (hi - lo) * rng.Uniform(); }

SymMatrix RandomSymmetric(Index p, Stream& rng) {
  const Matrix g = Gaussian(p, p, rng);
  return SymMatrix::FromLower((g + g.transpose()) / std::sqrt(2.0 * static_cast<double>(p)));
}

// Wishart-type PSD matrix, sometimes rank deficient.
SymMatrix RandomPsd(Index p, Stream& rng) {
  const Index k = 1 + static_cast<Index>(rng.Uniform() * static_cast<double>(2 * p));
  const Matrix g = Gaussian(p, k, rng);
  return SymMatrix::FromLower(g * g.transpose() / static_cast<double>(k));
}

ComplexPoint RandomZ(Stream& rng) {
  return ComplexPoint(UniformIn(rng, -3.0, 3.0), UniformIn(rng, 0.05, 3.0));
}

Complex RandomInDisc(Stream& rng, double radius) {
  const double r = radius * std::sqrt(rng.Uniform());
  const double t = 2.0 * std::numbers::pi * rng.Uniform();
  return std::polar(r, t);
}

ComplexMatrix ResolventDense(const SymMatrix& c, ComplexPoint z) {
  ComplexMatrix a = c.dense().cast<Complex>();
  a.diagonal().array() -= z.value();
  return a.partialPivLu().inverse();
}

void Record(FactTrial& t, FactCheck check, double margin) {
  const auto i = static_cast<std::size_t>(check);
  t.margin[i] = margin;
  t.violated[i] = !(margin >= -kFactTol);
}

// Relative comparisons are recorded against the relative tolerance by
// rescaling onto kFactTol.
void RecordRelative(FactTrial& t, FactCheck check, Complex got, Complex want) {
  const double rel = std::abs(got - want) / std::max(1.0, std::abs(want));
  Record(t, check, (kShermanMorrisonRelTol - rel) * (kFactTol / kShermanMorrisonRelTol));
}

}  // namespace

const char* FactName(FactCheck check) {
  switch (check) {
    case FactCheck::kTraceProduct: return "trace_product";
    case FactCheck::kTraceProductSquare: return "trace_product_square";
    case FactCheck::kSymmetricPart: return "symmetric_part_norm";
    case FactCheck::kComplexParts: return "complex_parts_norm";
    case FactCheck::kResolventNorm: return "resolvent_norm";
    case FactCheck::kRankOneRatio: return "rank_one_ratio";
    case FactCheck::kRankOneRatioDefinite: return "rank_one_ratio_definite";
    case FactCheck::kTraceLowerBound: return "trace_lower_bound";
    case FactCheck::kShermanMorrisonTrace: return "sherman_morrison_trace";
    case FactCheck::kShermanMorrisonQuad: return "sherman_morrison_quadratic";
    case FactCheck::kRealAxisShift: return "real_axis_shift";
    case FactCheck::kRatioPerturbation: return "ratio_perturbation";
    case FactCheck::kCount: break;
  }
  return "unknown";
}

int FactTrial::Violations() const {
  return static_cast<int>(std::count(violated.begin(), violated.end(), true));
}

double RatioPerturbationConstant(double delta, double m) {
  return 2.0 / (delta * delta) + m / delta + 4.0 / std::min(delta * delta, 2.0 * delta);
}

FactTrial RunFactTrial(Stream& rng, Index max_dim) {
  Require(max_dim >= 2, ErrorCode::kDomain, "facts: max_dim must be >= 2");
  FactTrial t;
  const Index p = 2 + static_cast<Index>(rng.Uniform() * static_cast<double>(max_dim - 1));
  t.p = p;

  {
    const SymMatrix b = RandomPsd(p, rng);
    const SymMatrix c = RandomPsd(p, rng);
    const double nb = SpectralNorm(b);
    const Matrix bc = b.dense() * c.dense();
    Record(t, FactCheck::kTraceProduct, nb * c.Trace() - bc.trace());
    Record(t, FactCheck::kTraceProductSquare,
           nb * nb * c.dense().squaredNorm() - (bc * bc).trace());
  }
  {
    const Matrix b = Gaussian(p, p, rng) / std::sqrt(static_cast<double>(p));
    const SymMatrix sym = SymMatrix::FromLower((b + b.transpose()) / 2.0);
    Record(t, FactCheck::kSymmetricPart, SpectralNorm(b) - SpectralNorm(sym));
  }
  {
    // ||B + iC|| equals the norm of the real embedding [[B, -C], [C, B]].
    const double s = 1.0 / std::sqrt(static_cast<double>(p));
    const Matrix b = Gaussian(p, p, rng) * s;
    const Matrix c = Gaussian(p, p, rng) * s;
    Matrix embed(2 * p, 2 * p);
    embed << b, -c, c, b;
    const double na = SpectralNorm(embed);
    Record(t, FactCheck::kComplexParts, na - std::max(SpectralNorm(b), SpectralNorm(c)));
  }
  {
    const SymMatrix c = RandomSymmetric(p, rng);
    const ComplexPoint z = RandomZ(rng);
    const Spectrum s = Eigh(c, true);
    double worst = 0.0;
    for (Index i = 0; i < p; ++i)
      worst = std::max(worst, 1.0 / std::abs(s.eigenvalues(i) - z.value()));
    Record(t, FactCheck::kResolventNorm, 1.0 / z.im() - worst);

    const Vector w = Gaussian(p, 1, rng).col(0);
    const Vector y = s.eigenvectors->transpose() * w;
    Complex q1 = 0.0, q2 = 0.0;
    for (Index i = 0; i < p; ++i) {
      const Complex r = 1.0 / (s.eigenvalues(i) - z.value());
      q1 += y(i) * y(i) * r;
      q2 += y(i) * y(i) * r * r;
    }
    Record(t, FactCheck::kRankOneRatio, 1.0 / z.im() - std::abs(q2) / std::abs(1.0 + q1));

    // Sherman-Morrison against a direct factorization of C + ww^T.
    const Complex sm = RankOneTraceUpdate(s, w, z);
    const Matrix updated = c.dense() + w * w.transpose();
    const Spectrum su = Eigh(SymMatrix::FromLower(updated), false);
    RecordRelative(t, FactCheck::kShermanMorrisonTrace, sm,
                   ResolventTrace(su, z) * static_cast<double>(p));

    const ComplexMatrix ru = ResolventDense(SymMatrix::FromLower(updated), z);
    const ComplexVector wc = w.cast<Complex>();
    const Complex quad = wc.transpose() * ru * wc;
    RecordRelative(t, FactCheck::kShermanMorrisonQuad, quad, q1 / (1.0 + q1));
  }
  {
    SymMatrix c = RandomPsd(p, rng);
    c = SymMatrix::FromLower(c.dense() + UniformIn(rng, 0.05, 1.0) * Matrix::Identity(p, p));
    const Spectrum s = Eigh(c, true);
    const Vector w = Gaussian(p, 1, rng).col(0);
    const Vector y = s.eigenvectors->transpose() * w;
    double q1 = 0.0, q2 = 0.0;
    for (Index i = 0; i < p; ++i) {
      q1 += y(i) * y(i) / s.eigenvalues(i);
      q2 += y(i) * y(i) / (s.eigenvalues(i) * s.eigenvalues(i));
    }
    const double ratio = q2 / (1.0 + q1);
    const double inv_norm = 1.0 / s.eigenvalues(0);
    // Both sides of the sandwich, scaled so the tighter one dominates.
    const double middle = inv_norm * q1 / (1.0 + q1);
    Record(t, FactCheck::kRankOneRatioDefinite,
           std::min({ratio, middle - ratio, inv_norm - middle}));
  }
  {
    const SymMatrix b = RandomPsd(p, rng);
    const SymMatrix c = RandomPsd(p, rng);
    const ComplexPoint z = RandomZ(rng);
    const Spectrum s = Eigh(c, true);
    const Matrix bt = s.eigenvectors->transpose() * b.dense() * (*s.eigenvectors);
    Complex tr = 0.0;
    for (Index i = 0; i < p; ++i) tr += bt(i, i) / (s.eigenvalues(i) - z.value());
    Record(t, FactCheck::kTraceLowerBound, std::abs(1.0 + tr) - z.im() / std::abs(z.value()));
  }
  {
    const SymMatrix c = RandomPsd(p, rng);
    const double eps = UniformIn(rng, 0.05, 2.0);
    const double v = UniformIn(rng, 0.01, 2.0);
    Spectrum s = Eigh(c, false);
    ClampPsd(s.eigenvalues);
    const ComplexPoint z(-eps, v);
    const Complex lhs = ResolventTrace(s, z) * static_cast<double>(p);
    double rhs = 0.0;
    for (Index i = 0; i < p; ++i) rhs += 1.0 / (s.eigenvalues(i) + eps);
    Record(t, FactCheck::kRealAxisShift,
           static_cast<double>(p) * v / (eps * eps) - std::abs(lhs - rhs));
  }
  {
    const double delta = UniformIn(rng, 0.1, 2.0);
    const double m = UniformIn(rng, 0.1, 5.0);
    const double gamma = UniformIn(rng, 0.0, 0.5) * delta;
    // Half the draws sit on the boundary of each hypothesis.
    const bool edge = rng.Uniform() < 0.5;
    const Complex w2 = -1.0 + std::polar(delta + (edge ? 0.0 : UniformIn(rng, 0.0, 3.0)),
                                         UniformIn(rng, 0.0, 2.0 * std::numbers::pi));
    const Complex w1 = w2 + (edge ? std::polar(gamma, UniformIn(rng, 0.0, 2.0 * std::numbers::pi))
                                  : RandomInDisc(rng, gamma));
    const double z1_abs = m * std::abs(1.0 + w1) * (edge ? 1.0 : rng.Uniform());
    const Complex z1 = std::polar(z1_abs, UniformIn(rng, 0.0, 2.0 * std::numbers::pi));
    const Complex z2 = z1 + (edge ? std::polar(gamma, UniformIn(rng, 0.0, 2.0 * std::numbers::pi))
                                  : RandomInDisc(rng, gamma));
    const double lhs = std::abs(z1 / (1.0 + w1) - z2 / (1.0 + w2));
    Record(t, FactCheck::kRatioPerturbation, gamma * RatioPerturbationConstant(delta, m) - lhs);
  }
  return t;
}

}  // namespace mplab
