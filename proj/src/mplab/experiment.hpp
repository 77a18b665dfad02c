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

#ifndef MPLAB_EXPERIMENT_HPP_
#define MPLAB_EXPERIMENT_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mplab/report.hpp"

namespace mplab {

inline constexpr std::int64_t kMaxDimension = 4096;
inline constexpr std::int64_t kMaxFactDimension = 40;

struct ExperimentConfig {
  // esd | conditions | mp-property | equivalence | law-tables | facts
  std::string experiment = "esd";
  std::string model = "iid-gauss";
  std::int64_t p = 256;
  std::int64_t n = 512;
  // 0 means p / 2.
  std::int64_t q = 0;
  double epsilon = 0.5;
  // Points in the upper half plane as {re, im}. Empty selects the default
  // grid for equivalence and im = 0.1 for law-tables.
  std::vector<std::array<double, 2>> z;
  std::int64_t trials = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
  std::string family = "identity";
  std::string frame = "haar";
  // conditions: quadform | e9 | lindeberg; law-tables: cdf | density |
  // stieltjes. Empty picks the first.
  std::string statistic;
  std::string b = "none";
  std::string c = "none";
  // Per-column covariance specs, repeated cyclically over the n columns.
  std::vector<std::string> hetero;
  double rho = 0.5;
  std::int64_t grid = 101;
  std::string thresholds;
  std::string dump_matrix;
  std::string dump_esd;
  bool timing = false;

  bool operator==(const ExperimentConfig&) const = default;
};

std::string ConfigToJson(const ExperimentConfig& cfg);
ExperimentConfig ConfigFromJson(std::string_view text);

// Throws before any trial runs.
void ValidateConfig(const ExperimentConfig& cfg);
std::string ResolvedStatistic(const ExperimentConfig& cfg);

struct Aggregate {
  std::size_t count = 0;
  double mean = 0.0;
  double se = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean_abs = 0.0;
  double median_abs = 0.0;
  double max_abs = 0.0;
  // Fraction of |value| > epsilon.
  double exceedance = 0.0;
};

struct CheckResult {
  std::string name;
  std::string metric;
  std::string op;
  double threshold = 0.0;
  double observed = 0.0;
  bool passed = false;
};

struct RunSummary {
  std::string experiment;
  std::string statistic;
  std::size_t records = 0;
  Aggregate aggregate;
  std::map<std::string, double> extras;
  std::vector<CheckResult> checks;
  bool passed = true;

  std::string ToJson(const ExperimentConfig& cfg) const;
};

struct RunOptions {
  // 0 reads MPLAB_THREADS, falling back to hardware concurrency.
  int threads = 0;
  // Called for every record in emission order.
  std::function<void(const TrialRecord&)> sink;
};

int ThreadCountFromEnv();

RunSummary RunExperiment(const ExperimentConfig& cfg, const RunOptions& options = {});

}  // namespace mplab

#endif  // MPLAB_EXPERIMENT_HPP_
