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

#ifndef MPLAB_RNG_HPP_
#define MPLAB_RNG_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace mplab {

// Philox4x32-10 block function (Salmon et al., SC'11).
std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Stable 64-bit id for an experiment name.
std::uint64_t ExperimentId(std::string_view name);

// Counter-based random stream keyed by (seed, experiment, trial, column).
// Two streams with different keys never share state, so trials can run on
// any thread in any order and still reproduce bit-for-bit.
class Stream {
 public:
  explicit Stream(std::uint64_t seed, std::uint64_t experiment = 0,
                  std::uint64_t trial = 0, std::uint64_t column = 0);

  // Fresh stream differing only in the column slot.
  Stream Substream(std::uint64_t column) const;
  // Fresh stream differing only in the trial slot (column reset to 0).
  Stream ForTrial(std::uint64_t trial) const;

  std::uint64_t NextU64();
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Standard normal (Box-Muller; both variates are used).
  double Normal();
  // +1 or -1 with probability 1/2.
  double Rademacher();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t experiment() const { return experiment_; }
  std::uint64_t trial() const { return trial_; }
  std::uint64_t column() const { return column_; }

 private:
  void Refill();

  std::uint64_t seed_, experiment_, trial_, column_;
  std::array<std::uint32_t, 2> key_{};
  std::uint64_t ctr_hi_ = 0;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

}  // namespace mplab

#endif  // MPLAB_RNG_HPP_
