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

#ifndef MPLAB_CONDITIONS_HPP_
#define MPLAB_CONDITIONS_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>

#include "mplab/ensembles.hpp"
#include "mplab/matcore.hpp"

namespace mplab {

// Monte-Carlo mean with its standard error.
struct McEstimate {
  double value = 0.0;
  double se = 0.0;
  std::size_t trials = 0;
};

// Running mean / variance (Welford). Order-dependent only in the last bits,
// so callers that need reproducibility feed it in trial order.
class MeanAccumulator {
 public:
  void Add(double x);
  McEstimate Result() const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

// Binomial frequency estimate with se = sqrt(f (1 - f) / n).
McEstimate Frequency(std::size_t hits, std::size_t trials);

struct FamilyIdentity {};
// Orthogonal projector onto a Haar-random subspace; rank 0 means p / 2.
struct FamilyHaarProjector {
  Index rank = 0;
};
// diag(I_{p/2}, 0).
struct FamilyFixedHalf {};
// Q diag(u) Q^T with Q Haar, u uniform on [0, 1], rescaled to unit norm.
struct FamilyRandomPsd {};
// Re (W - zI)^{-2} for W = Q diag(l) Q^T, l uniform on [0, 4]. Only real
// symmetric test matrices are drawn; complex ones reduce to their real and
// imaginary parts.
struct FamilySquaredResolvent {
  double re = 0.0;
  double im = 1.0;
};
using MatrixFamily = std::variant<FamilyIdentity, FamilyHaarProjector,
                                  FamilyFixedHalf, FamilyRandomPsd,
                                  FamilySquaredResolvent>;

// identity | haar-projector[:q] | fixed-half | random-psd |
// squared-resolvent:re,im
MatrixFamily ParseFamily(std::string_view spec);
std::string FamilyString(const MatrixFamily& family);
// Upper bound on ||A|| for every member of the family.
double FamilyNormBound(const MatrixFamily& family);

// A drawn test matrix: dense, or a projector C^T C kept in frame form.
using TestMatrix = std::variant<SymMatrix, ProjectorFrame>;
TestMatrix DrawTestMatrix(const MatrixFamily& family, Index p, Stream& rng);
SymMatrix DenseTestMatrix(const TestMatrix& a);

// Realizations of (x^T A x - tr(Sigma A)) / p for one model.
class QuadformProbe {
 public:
  QuadformProbe(const VectorModel& model, Index p);

  const Sampler& sampler() const { return sampler_; }
  const SymMatrix& sigma() const { return sigma_; }

  double Draw(const TestMatrix& a, Stream& rng) const;
  // (x^T x - p) / p.
  double DrawE9(Stream& rng) const;

 private:
  Sampler sampler_;
  SymMatrix sigma_;
  bool isotropic_;
};

// One draw of (1/p) sum_k x_k^2 1(|x_k| > eps sqrt(p)).
double LindebergTerm(const Vector& x, double eps);

// L_p(eps) = (1/p) sum_k E X_k^2 1(|X_k| > eps sqrt(p)).
McEstimate LindebergStat(const VectorModel& model, Index p, double eps,
                         std::size_t trials, Stream& rng);

double QuadformStat(const VectorModel& model, const SymMatrix& a, Stream& rng);

// P(|stat| > eps) with the test matrix redrawn every trial.
McEstimate ConcentrationProbe(const VectorModel& model,
                              const MatrixFamily& family, Index p, double eps,
                              std::size_t trials, Stream& rng);

// E |stat| for a fixed A.
McEstimate MeanAbsDeviation(const VectorModel& model, const SymMatrix& a,
                            std::size_t trials, Stream& rng);

// tr(Sigma^2) / p^2.
double A3Stat(const SymMatrix& sigma);

struct ChebyshevCheck {
  double observed = 0.0;
  double se = 0.0;
  double bound = 0.0;
};

// Gaussian models only: observed P(|stat| > eps) next to the variance bound
// 2 ||A||^2 tr(Sigma^2) / (eps p)^2.
ChebyshevCheck ChebyshevBoundCheck(const VectorModel& model, const SymMatrix& a,
                                   Index p, double eps, std::size_t trials,
                                   Stream& rng);

enum class FrameMode { kHaar, kFixedHalf };

// KS distance between the ESD of C Sigma_hat C^T and the MP law with ratio q/n.
double MpPropertyTrial(const VectorModel& model, Index p, Index n, Index q,
                       Stream& rng, FrameMode mode);

// (x^T x - p) / p.
double E9Stat(const VectorModel& model, Index p, Stream& rng);

}  // namespace mplab

#endif  // MPLAB_CONDITIONS_HPP_
