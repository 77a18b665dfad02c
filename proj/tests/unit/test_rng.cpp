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
#include <set>

#include <gtest/gtest.h>

namespace mplab {
namespace {

// Known-answer vectors published with the Random123 reference code.
TEST(Philox, KnownAnswerZero) {
  const auto r = Philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(r[0], 0x6627e8d5u);
  EXPECT_EQ(r[1], 0xe169c58du);
  EXPECT_EQ(r[2], 0xbc57ac4cu);
  EXPECT_EQ(r[3], 0x9b00dbd8u);
}

TEST(Philox, KnownAnswerOnes) {
  const auto r = Philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                            {0xffffffffu, 0xffffffffu});
  EXPECT_EQ(r[0], 0x408f276du);
  EXPECT_EQ(r[1], 0x41c83b0eu);
  EXPECT_EQ(r[2], 0xa20bc7c6u);
  EXPECT_EQ(r[3], 0x6d5451fdu);
}

TEST(Philox, KnownAnswerPi) {
  const auto r = Philox4x32({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                            {0xa4093822u, 0x299f31d0u});
  EXPECT_EQ(r[0], 0xd16cfe09u);
  EXPECT_EQ(r[1], 0x94fdccebu);
  EXPECT_EQ(r[2], 0x5001e420u);
  EXPECT_EQ(r[3], 0x24126ea1u);
}

TEST(Stream, SameKeySameSequence) {
  Stream a(42, 7, 3, 1), b(42, 7, 3, 1);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.NextU64(), b.NextU64());
}

TEST(Stream, DistinctSlotsDiverge) {
  std::set<std::uint64_t> firsts;
  for (std::uint64_t s = 0; s < 4; ++s)
    for (std::uint64_t e = 0; e < 4; ++e)
      for (std::uint64_t t = 0; t < 4; ++t)
        for (std::uint64_t c = 0; c < 4; ++c) firsts.insert(Stream(s, e, t, c).NextU64());
  EXPECT_EQ(firsts.size(), 256u);
}

TEST(Stream, SubstreamMatchesDirectConstruction) {
  Stream base(9, 2, 5, 0);
  Stream sub = base.Substream(3);
  Stream direct(9, 2, 5, 3);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(sub.NextU64(), direct.NextU64());
  Stream t = base.ForTrial(11);
  Stream direct_t(9, 2, 11, 0);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(t.NextU64(), direct_t.NextU64());
}

TEST(Stream, UniformInUnitInterval) {
  Stream s(1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.Uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Stream, NormalMoments) {
  Stream s(2);
  const int n = 400000;
  double m1 = 0, m2 = 0, m4 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = s.Normal();
    m1 += x;
    m2 += x * x;
    m4 += x * x * x * x;
  }
  m1 /= n;
  m2 /= n;
  m4 /= n;
  EXPECT_NEAR(m1, 0.0, 4.0 / std::sqrt(n));
  EXPECT_NEAR(m2, 1.0, 4.0 * std::sqrt(2.0 / n));
  EXPECT_NEAR(m4, 3.0, 4.0 * std::sqrt(96.0 / n));
}

TEST(Stream, RademacherBalanced) {
  Stream s(3);
  const int n = 100000;
  int plus = 0;
  for (int i = 0; i < n; ++i) {
    const double r = s.Rademacher();
    ASSERT_TRUE(r == 1.0 || r == -1.0);
    plus += r > 0;
  }
  EXPECT_NEAR(static_cast<double>(plus) / n, 0.5, 4.0 * 0.5 / std::sqrt(n));
}

TEST(ExperimentId, StableAndDistinct) {
  EXPECT_EQ(ExperimentId("esd"), ExperimentId("esd"));
  EXPECT_NE(ExperimentId("esd"), ExperimentId("facts"));
  EXPECT_EQ(ExperimentId("esd"), 0xc3010118f061bfd7ull);
  // FNV-1a 64 of the empty string is the offset basis.
  EXPECT_EQ(ExperimentId(""), 0xcbf29ce484222325ull);
}

}  // namespace
}  // namespace mplab
