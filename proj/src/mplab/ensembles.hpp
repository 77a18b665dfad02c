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

#ifndef MPLAB_ENSEMBLES_HPP_
#define MPLAB_ENSEMBLES_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mplab/matcore.hpp"
#include "mplab/rng.hpp"

namespace mplab {

struct CovIdentity {};
// Identity with the first `count` diagonal entries replaced by `size`
// (or by the dimension p when size_is_dim).
struct CovSpiked {
  Index count = 1;
  double size = 1.0;
  bool size_is_dim = false;
};
// Entry (i, j) = phi^|i-j|, |phi| < 1.
struct CovToeplitz {
  double phi = 0.0;
};
// Banded Toeplitz with entry (i, j) = gamma[|i-j|] (0 beyond the band).
struct CovAutocov {
  std::vector<double> gamma;
};
using CovSpec = std::variant<CovIdentity, CovSpiked, CovToeplitz, CovAutocov>;

struct IidGaussian {};
struct IidRademacher {};
// Entries +-sqrt(p) with probability 1/(2p) each, else 0.
struct SparseSpike {};
// sqrt(2) (z xi, z (1 - xi)) with z ~ N(0, I_{p/2}), xi ~ Bernoulli(1/2).
struct BlockXi {};
struct GaussianCov {
  CovSpec cov;
};
// Causal moving average X_k = sum_j c_j e_{k-j} over Rademacher innovations,
// with c rescaled to unit norm so Var X_k = 1. Coefficients are kept raw.
struct WeakDependent {
  std::vector<double> coeffs;
};
using VectorModel = std::variant<IidGaussian, IidRademacher, SparseSpike,
                                 BlockXi, GaussianCov, WeakDependent>;

// Grammar: iid-gauss | iid-rademacher | sparse-spike | block-xi |
// gauss-cov:identity | gauss-cov:spiked:k,s (s may be "p") |
// gauss-cov:toeplitz:phi | gauss-cov:autocov:g0,g1,... | weak-ma:c0,c1,...
VectorModel ParseModel(std::string_view spec);
std::string ModelSpec(const VectorModel& model);
CovSpec ParseCovSpec(std::string_view spec);
std::string CovSpecString(const CovSpec& cov);

// E x x^T = I for the built-in variant.
bool IsIsotropic(const VectorModel& model);
bool IsGaussian(const VectorModel& model);

SymMatrix CovarianceMatrix(const CovSpec& cov, Index p);
SymMatrix PopulationCovariance(const VectorModel& model, Index p);

// Unit-norm copy of moving-average coefficients.
std::vector<double> NormalizedCoefficients(const std::vector<double>& coeffs);

// A model bound to a dimension, with any covariance square root precomputed.
class Sampler {
 public:
  Sampler(VectorModel model, Index p);

  Index dim() const { return p_; }
  const VectorModel& model() const { return model_; }

  Vector Sample(Stream& rng) const;
  void SampleInto(Eigen::Ref<Vector> out, Stream& rng) const;

 private:
  VectorModel model_;
  Index p_;
  std::optional<Vector> root_diag_;
  std::optional<Matrix> root_;
};

Vector SampleVector(const VectorModel& model, Index p, Stream& rng);
// p x n matrix; column k is the k-th consecutive draw from rng.
Matrix SampleDataMatrix(const VectorModel& model, Index p, Index n, Stream& rng);
Matrix SampleDataMatrix(const Sampler& sampler, Index n, Stream& rng);

struct MovingAverageDraw {
  Vector x;
  Vector innovations;  // innovations(i) is e_{i - J}, i = 0 .. p + J - 1
};
MovingAverageDraw SampleMovingAverage(const std::vector<double>& coeffs,
                                      Index p, Stream& rng);

}  // namespace mplab

#endif  // MPLAB_ENSEMBLES_HPP_
