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

#include "mplab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <cstdlib>
#include <deque>
#include <exception>
#include <fstream>
#include <mutex>
#include <optional>
#include <thread>
#include <utility>

#include "json.hpp"
#include "mplab/conditions.hpp"
#include "mplab/ensembles.hpp"
#include "mplab/equivalence.hpp"
#include "mplab/error.hpp"
#include "mplab/facts.hpp"
#include "mplab/mp_law.hpp"
#include "mplab/spectra.hpp"

#ifndef MPLAB_DEFAULT_THRESHOLDS
#define MPLAB_DEFAULT_THRESHOLDS "data/thresholds.json"
#endif

namespace mplab {
namespace {

using nlohmann::json;

const std::vector<std::string> kExperiments = {"esd",         "conditions", "mp-property",
                                               "equivalence", "law-tables", "facts"};

json ConfigJson(const ExperimentConfig& c) {
  json z = json::array();
  for (const auto& pt : c.z) z.push_back({pt[0], pt[1]});
  return json{{"experiment", c.experiment}, {"model", c.model},
              {"p", c.p},                   {"n", c.n},
              {"q", c.q},                   {"epsilon", c.epsilon},
              {"z", z},                     {"trials", c.trials},
              {"seed", c.seed},             {"out", c.out},
              {"format", c.format},         {"family", c.family},
              {"frame", c.frame},           {"statistic", c.statistic},
              {"b", c.b},                   {"c", c.c},
              {"hetero", c.hetero},         {"rho", c.rho},
              {"grid", c.grid},             {"thresholds", c.thresholds},
              {"dump_matrix", c.dump_matrix}, {"dump_esd", c.dump_esd},
              {"timing", c.timing}};
}

template <typename T>
void Take(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

std::vector<ComplexPoint> Points(const ExperimentConfig& cfg) {
  std::vector<ComplexPoint> out;
  for (const auto& pt : cfg.z) out.emplace_back(pt[0], pt[1]);
  return out;
}

Index EffectiveQ(const ExperimentConfig& cfg) { return cfg.q == 0 ? cfg.p / 2 : cfg.q; }

FrameMode ParseFrame(const std::string& s) {
  if (s == "haar") return FrameMode::kHaar;
  if (s == "fixed-half") return FrameMode::kFixedHalf;
  Fail(ErrorCode::kParse, "frame: expected haar or fixed-half, got '" + s + "'");
}

std::vector<CovSpec> ExpandHetero(const ExperimentConfig& cfg) {
  std::vector<CovSpec> pattern;
  for (const auto& s : cfg.hetero) pattern.push_back(ParseCovSpec(s));
  std::vector<CovSpec> out;
  if (pattern.empty()) return out;
  out.reserve(static_cast<std::size_t>(cfg.n));
  for (std::int64_t k = 0; k < cfg.n; ++k) out.push_back(pattern[static_cast<std::size_t>(k) % pattern.size()]);
  return out;
}

TrialRecord BaseRecord(const ExperimentConfig& cfg, const std::string& statistic,
                       std::int64_t trial) {
  TrialRecord r;
  r.experiment = cfg.experiment;
  r.trial = trial;
  r.seed = cfg.seed;
  r.model = cfg.model;
  r.p = cfg.p;
  r.n = cfg.n;
  r.epsilon = cfg.epsilon;
  r.statistic = statistic;
  return r;
}

using TrialFn = std::function<std::vector<TrialRecord>(std::int64_t, Stream&)>;

// Runs trials on a worker pool and hands records to `emit` in trial order.
// Workers stay at most `window` trials ahead of the emitter.
void RunTrials(std::int64_t trials, std::uint64_t seed, std::uint64_t experiment_id,
               int threads, const TrialFn& fn,
               const std::function<void(const TrialRecord&)>& emit) {
  const std::int64_t window = std::max<std::int64_t>(4 * threads, 8);
  std::vector<std::optional<std::vector<TrialRecord>>> slots(static_cast<std::size_t>(window));
  std::mutex mu;
  std::condition_variable cv;
  std::int64_t next_task = 0;
  std::int64_t next_emit = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      std::int64_t t;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return failure || next_task >= trials || next_task < next_emit + window; });
        if (failure || next_task >= trials) return;
        t = next_task++;
      }
      std::vector<TrialRecord> rows;
      try {
        Stream rng(seed, experiment_id, static_cast<std::uint64_t>(t), 0);
        rows = fn(t, rng);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!failure) failure = std::current_exception();
        cv.notify_all();
        return;
      }
      std::lock_guard<std::mutex> lock(mu);
      slots[static_cast<std::size_t>(t % window)] = std::move(rows);
      cv.notify_all();
    }
  };

  std::vector<std::thread> pool;
  const int workers = static_cast<int>(std::min<std::int64_t>(threads, trials));
  for (int i = 0; i < workers; ++i) pool.emplace_back(worker);

  std::exception_ptr emit_failure;
  while (next_emit < trials) {
    std::vector<TrialRecord> rows;
    {
      std::unique_lock<std::mutex> lock(mu);
      auto& slot = slots[static_cast<std::size_t>(next_emit % window)];
      cv.wait(lock, [&] { return failure || slot.has_value(); });
      if (failure) break;
      rows = std::move(*slot);
      slot.reset();
    }
    try {
      for (const auto& r : rows) emit(r);
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      failure = std::current_exception();
      cv.notify_all();
      break;
    }
    std::lock_guard<std::mutex> lock(mu);
    ++next_emit;
    cv.notify_all();
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

struct Collector {
  std::vector<double> values;
  std::vector<double> magnitudes;

  void Add(const TrialRecord& r) {
    values.push_back(r.value);
    magnitudes.push_back(std::hypot(r.value, r.value_im));
  }
};

Aggregate Summarize(const Collector& c, double epsilon) {
  Aggregate a;
  a.count = c.values.size();
  if (a.count == 0) return a;
  double sum = 0.0, sum_abs = 0.0;
  std::size_t exceed = 0;
  a.min = a.max = c.values.front();
  a.max_abs = 0.0;
  for (std::size_t i = 0; i < a.count; ++i) {
    sum += c.values[i];
    sum_abs += c.magnitudes[i];
    a.min = std::min(a.min, c.values[i]);
    a.max = std::max(a.max, c.values[i]);
    a.max_abs = std::max(a.max_abs, c.magnitudes[i]);
    if (c.magnitudes[i] > epsilon) ++exceed;
  }
  const double n = static_cast<double>(a.count);
  a.mean = sum / n;
  a.mean_abs = sum_abs / n;
  a.exceedance = static_cast<double>(exceed) / n;
  if (a.count > 1) {
    double ss = 0.0;
    for (double v : c.values) ss += (v - a.mean) * (v - a.mean);
    a.se = std::sqrt(ss / (n - 1.0) / n);
  }
  std::vector<double> sorted = c.magnitudes;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = a.count / 2;
  a.median_abs = a.count % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
  return a;
}

double MetricValue(const RunSummary& s, const Collector& c, const std::string& metric) {
  const Aggregate& a = s.aggregate;
  if (metric == "count") return static_cast<double>(a.count);
  if (metric == "mean") return a.mean;
  if (metric == "se") return a.se;
  if (metric == "min") return a.min;
  if (metric == "max") return a.max;
  if (metric == "mean_abs") return a.mean_abs;
  if (metric == "median_abs") return a.median_abs;
  if (metric == "max_abs") return a.max_abs;
  if (metric == "exceedance") return a.exceedance;
  if (metric.rfind("frac_abs_le:", 0) == 0) {
    const double level = std::stod(metric.substr(12));
    if (c.magnitudes.empty()) return 0.0;
    const auto hits = std::count_if(c.magnitudes.begin(), c.magnitudes.end(),
                                    [&](double m) { return m <= level; });
    return static_cast<double>(hits) / static_cast<double>(c.magnitudes.size());
  }
  if (auto it = s.extras.find(metric); it != s.extras.end()) return it->second;
  Fail(ErrorCode::kParse, "thresholds: unknown metric '" + metric + "'");
}

bool Matches(const json& rule_match, const json& cfg) {
  for (auto it = rule_match.begin(); it != rule_match.end(); ++it) {
    const auto c = cfg.find(it.key());
    if (c == cfg.end()) return false;
    if (it->is_number() && c->is_number()) {
      if (it->get<double>() != c->get<double>()) return false;
    } else if (*it != *c) {
      return false;
    }
  }
  return true;
}

void ApplyThresholds(const ExperimentConfig& cfg, const Collector& c, RunSummary& s) {
  const std::string path = cfg.thresholds.empty() ? MPLAB_DEFAULT_THRESHOLDS : cfg.thresholds;
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "thresholds: cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("thresholds: ") + e.what());
  }
  json cfg_json = ConfigJson(cfg);
  cfg_json["statistic"] = s.statistic;
  cfg_json["q"] = EffectiveQ(cfg);
  try {
    for (const json& rule : doc.at("rules")) {
      if (rule.at("experiment").get<std::string>() != cfg.experiment) continue;
      if (rule.contains("match") && !Matches(rule.at("match"), cfg_json)) continue;
      CheckResult r;
      r.name = rule.at("name").get<std::string>();
      r.metric = rule.at("metric").get<std::string>();
      r.op = rule.at("op").get<std::string>();
      r.observed = MetricValue(s, c, r.metric);
      if (r.op == "within_se") {
        const double k = rule.value("k", 4.0);
        r.threshold = rule.at("value").get<double>();
        r.passed = std::abs(r.observed - r.threshold) <= k * s.aggregate.se + 1e-12;
      } else {
        r.threshold = rule.at("value").get<double>();
        if (r.op == "<=") r.passed = r.observed <= r.threshold;
        else if (r.op == ">=") r.passed = r.observed >= r.threshold;
        else if (r.op == "<") r.passed = r.observed < r.threshold;
        else if (r.op == ">") r.passed = r.observed > r.threshold;
        else Fail(ErrorCode::kParse, "thresholds: unknown op '" + r.op + "'");
      }
      s.checks.push_back(std::move(r));
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("thresholds: ") + e.what());
  }
}

// Per-experiment trial functions. Shared state is read-only once built.

TrialFn EsdTrials(const ExperimentConfig& cfg, const std::string& statistic) {
  auto sampler = std::make_shared<Sampler>(ParseModel(cfg.model), cfg.p);
  const MPLaw law(static_cast<double>(cfg.p) / static_cast<double>(cfg.n));
  return [=](std::int64_t t, Stream& rng) {
    const Matrix x = SampleDataMatrix(*sampler, cfg.n, rng);
    const Esd esd = ComputeEsd(SampleCovariance(x), true);
    if (t == 0 && !cfg.dump_matrix.empty()) WriteMatrixBinary(x, cfg.dump_matrix);
    if (t == 0 && !cfg.dump_esd.empty()) WriteEsdCsv(esd, cfg.dump_esd);
    TrialRecord r = BaseRecord(cfg, statistic, t);
    r.value = KsDistance(esd, law);
    return std::vector<TrialRecord>{r};
  };
}

TrialFn ConditionsTrials(const ExperimentConfig& cfg, const std::string& statistic,
                         const std::shared_ptr<const QuadformProbe>& probe) {
  const MatrixFamily family = ParseFamily(cfg.family);
  return [=](std::int64_t t, Stream& rng) {
    TrialRecord r = BaseRecord(cfg, statistic, t);
    if (statistic == "quadform") {
      r.family = FamilyString(family);
      r.value = probe->Draw(DrawTestMatrix(family, cfg.p, rng), rng);
    } else if (statistic == "e9") {
      r.value = probe->DrawE9(rng);
    } else {
      r.value = LindebergTerm(probe->sampler().Sample(rng), cfg.epsilon);
    }
    return std::vector<TrialRecord>{r};
  };
}

TrialFn MpPropertyTrials(const ExperimentConfig& cfg, const std::string& statistic) {
  const VectorModel model = ParseModel(cfg.model);
  const FrameMode mode = ParseFrame(cfg.frame);
  const Index q = EffectiveQ(cfg);
  return [=](std::int64_t t, Stream& rng) {
    TrialRecord r = BaseRecord(cfg, statistic, t);
    r.q = q;
    r.family = cfg.frame;
    r.value = MpPropertyTrial(model, cfg.p, cfg.n, q, rng, mode);
    return std::vector<TrialRecord>{r};
  };
}

TrialFn EquivalenceTrials(const ExperimentConfig& cfg, const std::string& statistic,
                          const SwapConfig& swap, const std::vector<ComplexPoint>& points) {
  return [=](std::int64_t t, Stream& rng) {
    const std::vector<Complex> gaps = swap.hetero.empty()
                                          ? ResolventGaps(swap, points, rng)
                                          : ResolventGapsHetero(swap, points, rng).delta;
    std::vector<TrialRecord> rows;
    for (std::size_t k = 0; k < points.size(); ++k) {
      TrialRecord r = BaseRecord(cfg, statistic, t);
      r.z_re = points[k].re();
      r.z_im = points[k].im();
      r.b_spec = ShiftString(swap.shift);
      r.c_spec = OffsetString(swap.offset);
      r.value = gaps[k].real();
      r.value_im = gaps[k].imag();
      rows.push_back(std::move(r));
    }
    return rows;
  };
}

TrialFn FactsTrials(const ExperimentConfig& cfg, const std::string& statistic) {
  const Index max_dim = std::clamp<std::int64_t>(cfg.p, 2, kMaxFactDimension);
  return [=](std::int64_t t, Stream& rng) {
    const FactTrial f = RunFactTrial(rng, max_dim);
    TrialRecord r = BaseRecord(cfg, statistic, t);
    r.model.clear();
    r.p = f.p;
    r.n = 0;
    r.value = f.Violations();
    return std::vector<TrialRecord>{r};
  };
}

}  // namespace

std::string ConfigToJson(const ExperimentConfig& cfg) { return ConfigJson(cfg).dump(2); }

ExperimentConfig ConfigFromJson(std::string_view text) {
  ExperimentConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) Fail(ErrorCode::kParse, "config: expected a JSON object");
    const json known = ConfigJson(c);
    for (auto it = j.begin(); it != j.end(); ++it)
      if (!known.contains(it.key())) Fail(ErrorCode::kParse, "config: unknown key '" + it.key() + "'");
    Take(j, "experiment", c.experiment);
    Take(j, "model", c.model);
    Take(j, "p", c.p);
    Take(j, "n", c.n);
    Take(j, "q", c.q);
    Take(j, "epsilon", c.epsilon);
    Take(j, "z", c.z);
    Take(j, "trials", c.trials);
    Take(j, "seed", c.seed);
    Take(j, "out", c.out);
    Take(j, "format", c.format);
    Take(j, "family", c.family);
    Take(j, "frame", c.frame);
    Take(j, "statistic", c.statistic);
    Take(j, "b", c.b);
    Take(j, "c", c.c);
    Take(j, "hetero", c.hetero);
    Take(j, "rho", c.rho);
    Take(j, "grid", c.grid);
    Take(j, "thresholds", c.thresholds);
    Take(j, "dump_matrix", c.dump_matrix);
    Take(j, "dump_esd", c.dump_esd);
    Take(j, "timing", c.timing);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kParse, std::string("config: ") + e.what());
  }
  return c;
}

std::string ResolvedStatistic(const ExperimentConfig& cfg) {
  const std::string& s = cfg.statistic;
  if (cfg.experiment == "esd" || cfg.experiment == "mp-property") {
    if (!s.empty() && s != "ks_distance")
      Fail(ErrorCode::kParse, "statistic: " + cfg.experiment + " only reports ks_distance");
    return "ks_distance";
  }
  if (cfg.experiment == "conditions") {
    if (s.empty()) return "quadform";
    if (s == "quadform" || s == "e9" || s == "lindeberg") return s;
    Fail(ErrorCode::kParse, "statistic: expected quadform, e9 or lindeberg, got '" + s + "'");
  }
  if (cfg.experiment == "law-tables") {
    if (s.empty()) return "cdf";
    if (s == "cdf" || s == "density" || s == "stieltjes") return s;
    Fail(ErrorCode::kParse, "statistic: expected cdf, density or stieltjes, got '" + s + "'");
  }
  if (cfg.experiment == "equivalence") return "resolvent_gap";
  if (cfg.experiment == "facts") return "violations";
  Fail(ErrorCode::kParse, "experiment: unknown id '" + cfg.experiment + "'");
}

void ValidateConfig(const ExperimentConfig& cfg) {
  if (std::find(kExperiments.begin(), kExperiments.end(), cfg.experiment) == kExperiments.end())
    Fail(ErrorCode::kParse, "experiment: unknown id '" + cfg.experiment + "'");
  ResolvedStatistic(cfg);
  ParseFormat(cfg.format);
  for (const auto& pt : cfg.z) ComplexPoint(pt[0], pt[1]);
  if (cfg.experiment == "law-tables") {
    MPLaw law(cfg.rho);
    Require(cfg.grid >= 2 && cfg.grid <= 1000000, ErrorCode::kDomain,
            "law-tables: grid must be in [2, 1e6]");
    return;
  }
  Require(cfg.trials >= 1, ErrorCode::kDomain, "trials must be >= 1");
  if (cfg.experiment == "facts") {
    Require(cfg.p >= 2, ErrorCode::kDomain, "facts: p must be >= 2");
    return;
  }
  ParseModel(cfg.model);
  Require(cfg.p >= 1 && cfg.n >= 1, ErrorCode::kDomain, "p and n must be >= 1");
  if (cfg.p > kMaxDimension)
    Fail(ErrorCode::kResource, "p = " + std::to_string(cfg.p) + " exceeds the cap of " +
                                   std::to_string(kMaxDimension));
  Require(cfg.epsilon > 0.0 && std::isfinite(cfg.epsilon), ErrorCode::kDomain,
          "epsilon must be positive");
  if (cfg.experiment == "conditions") ParseFamily(cfg.family);
  if (cfg.experiment == "mp-property") {
    ParseFrame(cfg.frame);
    const Index q = EffectiveQ(cfg);
    Require(q >= 1 && q <= cfg.p, ErrorCode::kDomain, "mp-property: need 1 <= q <= p");
  }
  if (cfg.experiment == "equivalence") {
    ParseShift(cfg.b);
    ParseOffset(cfg.c);
    for (const auto& h : cfg.hetero) ParseCovSpec(h);
    if (!cfg.hetero.empty())
      Require(IsIsotropic(ParseModel(cfg.model)), ErrorCode::kPrecondition,
              "hetero: base model must be isotropic");
  }
  // Model-specific constraints, e.g. even p for block-xi.
  Sampler(ParseModel(cfg.model), cfg.p);
}

int ThreadCountFromEnv() {
  if (const char* env = std::getenv("MPLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, 256);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string RunSummary::ToJson(const ExperimentConfig& cfg) const {
  json checks_json = json::array();
  json failures = json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"metric", c.metric},
                           {"op", c.op},
                           {"threshold", c.threshold},
                           {"observed", c.observed},
                           {"passed", c.passed}});
    if (!c.passed) failures.push_back(c.name);
  }
  json extras_json = json::object();
  for (const auto& [k, v] : extras) extras_json[k] = v;
  const json j = {{"experiment", experiment},
                  {"statistic", statistic},
                  {"records", records},
                  {"config", ConfigJson(cfg)},
                  {"aggregate",
                   {{"count", aggregate.count},
                    {"mean", aggregate.mean},
                    {"se", aggregate.se},
                    {"min", aggregate.min},
                    {"max", aggregate.max},
                    {"mean_abs", aggregate.mean_abs},
                    {"median_abs", aggregate.median_abs},
                    {"max_abs", aggregate.max_abs},
                    {"exceedance", aggregate.exceedance}}},
                  {"extras", extras_json},
                  {"checks", checks_json},
                  {"failures", failures},
                  {"passed", passed}};
  return j.dump(2);
}

RunSummary RunExperiment(const ExperimentConfig& cfg, const RunOptions& options) {
  ValidateConfig(cfg);
  RunSummary summary;
  summary.experiment = cfg.experiment;
  summary.statistic = ResolvedStatistic(cfg);
  const int threads = options.threads > 0 ? options.threads : ThreadCountFromEnv();

  std::optional<RecordWriter> writer;
  if (!cfg.out.empty()) writer.emplace(cfg.out, ParseFormat(cfg.format));
  Collector collector;
  auto emit = [&](const TrialRecord& r) {
    collector.Add(r);
    if (writer) writer->Write(r);
    if (options.sink) options.sink(r);
    ++summary.records;
  };

  if (cfg.experiment == "law-tables") {
    const MPLaw law(cfg.rho);
    const double eta = cfg.z.empty() ? 0.1 : cfg.z.front()[1];
    const double hi = 1.1 * law.upper();
    for (std::int64_t k = 0; k < cfg.grid; ++k) {
      TrialRecord r = BaseRecord(cfg, summary.statistic, k);
      r.model.clear();
      r.p = r.n = 0;
      r.epsilon = 0.0;
      r.x = hi * static_cast<double>(k) / static_cast<double>(cfg.grid - 1);
      if (summary.statistic == "cdf") {
        r.value = Cdf(law, r.x);
      } else if (summary.statistic == "density") {
        r.value = Density(law, r.x);
      } else {
        const ComplexPoint z(r.x, eta);
        const Complex m = StieltjesClosed(law, z);
        r.z_re = z.re();
        r.z_im = z.im();
        r.value = m.real();
        r.value_im = m.imag();
      }
      emit(r);
    }
    summary.extras["normalization_error"] =
        std::abs(law.atom0() + ContinuousMass(law, law.upper()) - 1.0);
  } else {
    TrialFn fn;
    if (cfg.experiment == "esd") {
      fn = EsdTrials(cfg, summary.statistic);
    } else if (cfg.experiment == "conditions") {
      auto probe = std::make_shared<const QuadformProbe>(ParseModel(cfg.model), cfg.p);
      summary.extras["a3_stat"] = A3Stat(probe->sigma());
      fn = ConditionsTrials(cfg, summary.statistic, probe);
    } else if (cfg.experiment == "mp-property") {
      fn = MpPropertyTrials(cfg, summary.statistic);
    } else if (cfg.experiment == "equivalence") {
      SwapConfig swap;
      swap.model = ParseModel(cfg.model);
      swap.p = cfg.p;
      swap.n = cfg.n;
      swap.shift = ParseShift(cfg.b);
      swap.offset = ParseOffset(cfg.c);
      swap.hetero = ExpandHetero(cfg);
      std::vector<ComplexPoint> points = cfg.z.empty() ? DefaultZGrid() : Points(cfg);
      if (!swap.hetero.empty()) {
        double sum = 0.0;
        for (const CovSpec& cov : swap.hetero)
          sum += CovarianceMatrix(cov, cfg.p).dense().squaredNorm();
        const double p = static_cast<double>(cfg.p);
        summary.extras["a3_star"] = sum / (static_cast<double>(cfg.n) * p * p);
        summary.extras["a3_star_flagged"] = summary.extras["a3_star"] > kA3StarFlag ? 1.0 : 0.0;
      }
      fn = EquivalenceTrials(cfg, summary.statistic, swap, points);
    } else {
      fn = FactsTrials(cfg, summary.statistic);
    }
    if (cfg.timing) {
      fn = [inner = std::move(fn)](std::int64_t t, Stream& rng) {
        const auto start = std::chrono::steady_clock::now();
        auto rows = inner(t, rng);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        for (auto& r : rows) r.wall_ms = ms;
        return rows;
      };
    }
    RunTrials(cfg.trials, cfg.seed, ExperimentId(cfg.experiment), threads, fn, emit);
  }
  if (writer) writer->Close();

  summary.aggregate = Summarize(collector, cfg.epsilon);
  if (cfg.experiment == "equivalence") {
    // |Delta| <= 2 / Im z holds for every draw.
    double violations = 0.0;
    std::size_t i = 0;
    const std::size_t per_trial = cfg.z.empty() ? DefaultZGrid().size() : cfg.z.size();
    const std::vector<ComplexPoint> points = cfg.z.empty() ? DefaultZGrid() : Points(cfg);
    for (double m : collector.magnitudes) {
      if (m > 2.0 / points[i % per_trial].im() + 1e-10) violations += 1.0;
      ++i;
    }
    summary.extras["bound_violations"] = violations;
    summary.checks.push_back({"resolvent_gap_bound", "bound_violations", "<=", 0.0, violations,
                              violations == 0.0});
  }
  if (cfg.experiment == "facts") {
    double total = 0.0;
    for (double v : collector.values) total += v;
    summary.extras["violations_total"] = total;
  }
  ApplyThresholds(cfg, collector, summary);
  for (const auto& c : summary.checks) summary.passed = summary.passed && c.passed;
  return summary;
}

}  // namespace mplab
