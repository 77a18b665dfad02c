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

#ifndef MPLAB_EQUIVALENCE_HPP_
#define MPLAB_EQUIVALENCE_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mplab/ensembles.hpp"
#include "mplab/matcore.hpp"
#include "mplab/rng.hpp"

namespace mplab {

// Deterministic shift B added to both sample covariances.
struct ShiftNone {};
struct ShiftScaledIdentity {
  double beta = 0.0;
};
// Q diag(u) Q^T / max(u), Q Haar and u uniform, generated from `seed`.
struct ShiftRandomPsd {
  std::uint64_t seed = 0;
};
using ShiftSpec = std::variant<ShiftNone, ShiftScaledIdentity, ShiftRandomPsd>;

// Deterministic offset C added to both data matrices.
struct OffsetNone {};
// Every column equals gamma * 1 / sqrt(p), so ||C C^T / n|| = gamma^2.
struct OffsetConstant {
  double gamma = 0.0;
};
using OffsetSpec = std::variant<OffsetNone, OffsetConstant>;

// none | scaled:beta | random-psd:seed
ShiftSpec ParseShift(std::string_view spec);
std::string ShiftString(const ShiftSpec& spec);
// none | const:gamma
OffsetSpec ParseOffset(std::string_view spec);
std::string OffsetString(const OffsetSpec& spec);

SymMatrix ShiftMatrix(const ShiftSpec& spec, Index p);
Matrix OffsetMatrix(const OffsetSpec& spec, Index p, Index n);

struct SwapConfig {
  VectorModel model = IidGaussian{};
  Index p = 0;
  Index n = 0;
  ComplexPoint z{0.0, 1.0};
  ShiftSpec shift = ShiftNone{};
  OffsetSpec offset = OffsetNone{};
  // Per-column covariances (length n) for the heterogeneous variant; the
  // X columns are then Sigma_k^{1/2} y_k with y_k drawn from `model`.
  std::vector<CovSpec> hetero;
};

// Gaussian model with the same population covariance.
VectorModel PairedGaussian(const VectorModel& model, Index p);

// (1/p)[tr(X^ X^T / n + B - zI)^{-1} - tr(Z^ Z^T / n + B - zI)^{-1}] with
// X^ = X + C and Z^ = Z + C. X and Z use substreams 1 and 2 of rng.
Complex ResolventGap(const SwapConfig& cfg, const Stream& rng);
// Same draws evaluated at several points; cfg.z is ignored.
std::vector<Complex> ResolventGaps(const SwapConfig& cfg, const std::vector<ComplexPoint>& points,
                                   const Stream& rng);

struct HeteroGap {
  Complex delta;
  // (n p^2)^{-1} sum_k tr(Sigma_k^2).
  double a3_star = 0.0;
  bool a3_violated = false;
};

inline constexpr double kA3StarFlag = 0.1;

struct HeteroGaps {
  std::vector<Complex> delta;
  double a3_star = 0.0;
  bool a3_violated = false;
};

HeteroGap ResolventGapHetero(const SwapConfig& cfg, const Stream& rng);
HeteroGaps ResolventGapsHetero(const SwapConfig& cfg, const std::vector<ComplexPoint>& points,
                               const Stream& rng);

// {i, 1+i, -1+0.5i, 2i}
std::vector<ComplexPoint> DefaultZGrid();

}  // namespace mplab

#endif  // MPLAB_EQUIVALENCE_HPP_
