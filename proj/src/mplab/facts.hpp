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

#ifndef MPLAB_FACTS_HPP_
#define MPLAB_FACTS_HPP_

#include <array>
#include <cstddef>

#include "mplab/matcore.hpp"
#include "mplab/rng.hpp"

namespace mplab {

// Randomized checks of the elementary trace, norm and resolvent
// inequalities used by the resolvent arguments.
enum class FactCheck : int {
  kTraceProduct = 0,     // tr(BC) <= ||B|| tr(C)
  kTraceProductSquare,   // tr((BC)^2) <= ||B||^2 tr(C^2)
  kSymmetricPart,        // ||(B^T + B)/2|| <= ||B||
  kComplexParts,         // ||Re A||, ||Im A|| <= ||A||
  kResolventNorm,        // ||(C - z)^{-1}|| <= 1/Im z
  kRankOneRatio,         // |w^T R^2 w| / |1 + w^T R w| <= 1/Im z
  kRankOneRatioDefinite, // 0 <= w^T C^-2 w / (1 + w^T C^-1 w) <= ||C^-1||
  kTraceLowerBound,      // |1 + tr(B (C - z)^{-1})| >= Im z / |z|
  kShermanMorrisonTrace,
  kShermanMorrisonQuad,
  kRealAxisShift,        // |tr(C + eps - iv)^{-1} - tr(C + eps)^{-1}| <= p v / eps^2
  kRatioPerturbation,    // |z1/(1+w1) - z2/(1+w2)| <= C(delta, M) gamma
  kCount
};

inline constexpr std::size_t kFactCount = static_cast<std::size_t>(FactCheck::kCount);

const char* FactName(FactCheck check);

inline constexpr double kFactTol = 1e-10;
// Sherman-Morrison identities are compared relative to the reference value.
inline constexpr double kShermanMorrisonRelTol = 1e-9;

struct FactTrial {
  Index p = 0;
  // bound minus observed, scaled as compared; negative means violated.
  std::array<double, kFactCount> margin{};
  std::array<bool, kFactCount> violated{};
  int Violations() const;
};

// One randomized instance of every check at a dimension drawn from
// [2, max_dim].
FactTrial RunFactTrial(Stream& rng, Index max_dim = 40);

// Explicit constant from the ratio perturbation argument.
double RatioPerturbationConstant(double delta, double m);

}  // namespace mplab

#endif  // MPLAB_FACTS_HPP_
