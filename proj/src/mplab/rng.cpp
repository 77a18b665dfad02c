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

#include "mplab/rng.hpp"

#include <cmath>
#include <numbers>

namespace mplab {
namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
    const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

std::uint64_t ExperimentId(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Stream::Stream(std::uint64_t seed, std::uint64_t experiment,
               std::uint64_t trial, std::uint64_t column)
    : seed_(seed), experiment_(experiment), trial_(trial), column_(column) {
  std::uint64_t h = SplitMix64(seed);
  h = SplitMix64(h ^ experiment);
  h = SplitMix64(h ^ trial);
  h = SplitMix64(h ^ column);
  key_ = {static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  ctr_hi_ = SplitMix64(h ^ 0x6A09E667F3BCC909ull);
}

Stream Stream::Substream(std::uint64_t column) const {
  return Stream(seed_, experiment_, trial_, column);
}

Stream Stream::ForTrial(std::uint64_t trial) const {
  return Stream(seed_, experiment_, trial, 0);
}

void Stream::Refill() {
  buf_ = Philox4x32({static_cast<std::uint32_t>(block_),
                     static_cast<std::uint32_t>(block_ >> 32),
                     static_cast<std::uint32_t>(ctr_hi_),
                     static_cast<std::uint32_t>(ctr_hi_ >> 32)},
                    key_);
  ++block_;
  buf_pos_ = 0;
}

std::uint64_t Stream::NextU64() {
  if (buf_pos_ > 2) Refill();
  const std::uint64_t v =
      (std::uint64_t{buf_[buf_pos_]} << 32) | buf_[buf_pos_ + 1];
  buf_pos_ += 2;
  return v;
}

double Stream::Uniform() {
  return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
}

double Stream::Normal() {
  if (has_spare_normal_) {
    has_spare_normal_ = false;
    return spare_normal_;
  }
  const double u1 = 1.0 - Uniform();  // (0, 1]
  const double u2 = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_normal_ = r * std::sin(theta);
  has_spare_normal_ = true;
  return r * std::cos(theta);
}

double Stream::Rademacher() { return (NextU64() >> 63) ? 1.0 : -1.0; }

}  // namespace mplab
