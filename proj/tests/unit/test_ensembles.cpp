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

#include <cmath>
#include <functional>
#include <string>

#include <gtest/gtest.h>

#include "mplab/error.hpp"

namespace mplab {
namespace {

std::string ParseError(const std::string& spec) {
  try {
    ParseModel(spec);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParse);
    return e.what();
  }
  return "";
}

// Empirical E x x^T over `trials` draws.
Matrix EmpiricalCovariance(const VectorModel& model, Index p, int trials, std::uint64_t seed) {
  Stream rng(seed);
  const Sampler sampler(model, p);
  Matrix acc = Matrix::Zero(p, p);
  Vector x(p);
  for (int t = 0; t < trials; ++t) {
    sampler.SampleInto(x, rng);
    acc.noalias() += x * x.transpose();
  }
  return acc / trials;
}

TEST(ParseModel, RoundTrips) {
  for (const std::string spec :
       {"iid-gauss", "iid-rademacher", "sparse-spike", "block-xi", "gauss-cov:identity",
        "gauss-cov:spiked:2,5", "gauss-cov:spiked:1,p", "gauss-cov:toeplitz:0.5",
        "gauss-cov:autocov:1,0.25", "weak-ma:1,0.5,0.25"}) {
    EXPECT_EQ(ModelSpec(ParseModel(spec)), spec);
  }
}

TEST(ParseModel, ErrorsNameOffendingToken) {
  EXPECT_NE(ParseError("iid-gaus").find("'iid-gaus'"), std::string::npos);
  EXPECT_NE(ParseError("gauss-cov:toeplitz:abc").find("'abc'"), std::string::npos);
  EXPECT_NE(ParseError("weak-ma:1,x").find("'x'"), std::string::npos);
  EXPECT_NE(ParseError("iid-gauss:3").find("'3'"), std::string::npos);
  EXPECT_NE(ParseError("gauss-cov:wishart").find("'wishart'"), std::string::npos);
}

TEST(ParseModel, DomainChecks) {
  try {
    ParseModel("gauss-cov:toeplitz:1.5");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
}

TEST(Predicates, IsotropicAndGaussian) {
  EXPECT_TRUE(IsIsotropic(ParseModel("block-xi")));
  EXPECT_TRUE(IsIsotropic(ParseModel("gauss-cov:identity")));
  EXPECT_FALSE(IsIsotropic(ParseModel("gauss-cov:toeplitz:0.5")));
  EXPECT_FALSE(IsIsotropic(ParseModel("weak-ma:1,0.5")));
  EXPECT_TRUE(IsIsotropic(ParseModel("weak-ma:0,2")));
  EXPECT_TRUE(IsGaussian(ParseModel("iid-gauss")));
  EXPECT_FALSE(IsGaussian(ParseModel("iid-rademacher")));
}

TEST(Covariance, ToeplitzAndSpiked) {
  const SymMatrix t = CovarianceMatrix(CovToeplitz{0.5}, 4);
  EXPECT_DOUBLE_EQ(t(3, 0), 0.125);
  EXPECT_DOUBLE_EQ(t(0, 3), 0.125);
  const SymMatrix s = CovarianceMatrix(CovSpiked{1, 0.0, true}, 8);
  EXPECT_EQ(s(0, 0), 8.0);
  EXPECT_EQ(s(1, 1), 1.0);
}

TEST(Covariance, WeakDependentAutocovariance) {
  // c = (1, 1) / sqrt(2): gamma(0) = 1, gamma(1) = 1/2.
  const SymMatrix s = PopulationCovariance(ParseModel("weak-ma:1,1"), 5);
  EXPECT_DOUBLE_EQ(s(0, 0), 1.0);
  EXPECT_NEAR(s(1, 0), 0.5, 1e-15);
  EXPECT_EQ(s(2, 0), 0.0);
}

TEST(Sampler, RademacherNormIsExact) {
  Stream rng(1);
  const Vector x = SampleVector(IidRademacher{}, 64, rng);
  EXPECT_EQ(x.squaredNorm(), 64.0);
}

TEST(Sampler, SparseSpikeSupport) {
  Stream rng(2);
  const Index p = 100;
  const Sampler sampler(SparseSpike{}, p);
  int nonzero = 0;
  const int trials = 2000;
  for (int t = 0; t < trials; ++t) {
    const Vector x = sampler.Sample(rng);
    for (Index i = 0; i < p; ++i) {
      ASSERT_TRUE(x(i) == 0.0 || std::abs(x(i)) == 10.0);
      nonzero += x(i) != 0.0;
    }
  }
  // Binomial(p, 1/p) per draw: mean 1, variance (1 - 1/p).
  EXPECT_NEAR(static_cast<double>(nonzero) / trials, 1.0, 4.0 * std::sqrt(0.99 / trials));
}

TEST(Sampler, BlockXiFillsOneHalf) {
  Stream rng(3);
  const Sampler sampler(BlockXi{}, 10);
  for (int t = 0; t < 50; ++t) {
    const Vector x = sampler.Sample(rng);
    const bool head = x.head(5).squaredNorm() > 0;
    const bool tail = x.tail(5).squaredNorm() > 0;
    ASSERT_NE(head, tail);
  }
  try {
    Sampler odd(BlockXi{}, 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
}

TEST(Sampler, IsotropicModelsHaveIdentityCovariance) {
  const Index p = 6;
  const int trials = 40000;
  for (const std::string spec : {"iid-gauss", "iid-rademacher", "sparse-spike", "block-xi"}) {
    const Matrix c = EmpiricalCovariance(ParseModel(spec), p, trials, 4);
    // Entry variance is at most E x_i^2 x_j^2 <= p (sparse spike diagonal).
    const double tol = 5.0 * std::sqrt(static_cast<double>(p) / trials);
    EXPECT_LE((c - Matrix::Identity(p, p)).cwiseAbs().maxCoeff(), tol) << spec;
  }
}

TEST(Sampler, CorrelatedModelsMatchPopulationCovariance) {
  const Index p = 5;
  const int trials = 40000;
  for (const std::string spec : {"gauss-cov:toeplitz:0.6", "weak-ma:1,0.5,-0.3",
                                 "gauss-cov:spiked:2,4"}) {
    const VectorModel model = ParseModel(spec);
    const Matrix c = EmpiricalCovariance(model, p, trials, 5);
    const Matrix ref = PopulationCovariance(model, p).dense();
    EXPECT_LE((c - ref).cwiseAbs().maxCoeff(), 6.0 * 4.0 / std::sqrt(trials)) << spec;
  }
}

TEST(Sampler, MovingAverageInnovationLayout) {
  Stream rng(6);
  const std::vector<double> c = {3.0, 4.0};
  const MovingAverageDraw d = SampleMovingAverage(c, 4, rng);
  ASSERT_EQ(d.innovations.size(), 5);
  for (Index k = 0; k < 4; ++k)
    EXPECT_NEAR(d.x(k), 0.6 * d.innovations(k + 1) + 0.8 * d.innovations(k), 1e-15);
}

TEST(SampleDataMatrix, ColumnsAreConsecutiveDraws) {
  Stream a(7), b(7);
  const Matrix x = SampleDataMatrix(IidGaussian{}, 4, 3, a);
  const Sampler s(IidGaussian{}, 4);
  for (Index k = 0; k < 3; ++k) EXPECT_TRUE(x.col(k) == s.Sample(b));
}

}  // namespace
}  // namespace mplab
