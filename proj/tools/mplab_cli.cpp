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

// Command line front end over the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mplab/mplab.h"

namespace {

using nlohmann::json;

constexpr int kExitFailedChecks = 1;
constexpr int kExitError = 2;

struct Flags {
  std::string config;
  std::string model;
  std::int64_t p = 0, n = 0, q = 0, trials = 0, grid = 0;
  double epsilon = 0.0, rho = 0.0;
  std::vector<std::string> z;
  std::uint64_t seed = 0;
  std::string out, format, family, frame, statistic, b, c, thresholds, dump_matrix, dump_esd;
  std::vector<std::string> hetero;
  bool timing = false;
  bool print_config = false;
  int threads = 0;
};

std::vector<double> ParsePair(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("--z", "expected re,im but got '" + s + "'");
  try {
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--z", "bad number in '" + s + "'");
  }
}

void AddFlags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags override its fields");
  sub->add_option("--model", f.model, "vector model spec");
  sub->add_option("--p", f.p, "dimension");
  sub->add_option("--n", f.n, "sample size");
  sub->add_option("--q", f.q, "projection rank (0 = p/2)");
  sub->add_option("--epsilon", f.epsilon, "threshold epsilon");
  sub->add_option("--z", f.z, "point in the upper half plane as re,im (repeatable)");
  sub->add_option("--trials", f.trials, "number of trials");
  sub->add_option("--seed", f.seed, "64-bit seed");
  sub->add_option("--out", f.out, "output path for trial records");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--family", f.family, "test matrix family");
  sub->add_option("--frame", f.frame, "haar or fixed-half");
  sub->add_option("--statistic", f.statistic, "statistic to report");
  sub->add_option("--b", f.b, "shift: none | scaled:beta | random-psd:seed");
  sub->add_option("--c", f.c, "offset: none | const:gamma");
  sub->add_option("--hetero", f.hetero, "per-column covariance specs, cycled (repeatable)");
  sub->add_option("--rho", f.rho, "law ratio for law-tables");
  sub->add_option("--grid", f.grid, "grid points for law-tables");
  sub->add_option("--thresholds", f.thresholds, "acceptance thresholds file");
  sub->add_option("--dump-matrix", f.dump_matrix, "write the first data matrix here");
  sub->add_option("--dump-esd", f.dump_esd, "write the first spectrum here as CSV");
  sub->add_flag("--timing", f.timing, "record wall time per trial");
  sub->add_flag("--print-config", f.print_config, "print the resolved config and exit");
  sub->add_option("--threads", f.threads, "worker count (default MPLAB_THREADS)");
}

json BuildConfig(const CLI::App* sub, const Flags& f) {
  json j = json::object();
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw std::runtime_error("cannot open config '" + f.config + "'");
    j = json::parse(in);
  }
  j["experiment"] = sub->get_name();
  auto set = [&](const char* flag, const char* key, const auto& value) {
    if (sub->count(flag) > 0) j[key] = value;
  };
  set("--model", "model", f.model);
  set("--p", "p", f.p);
  set("--n", "n", f.n);
  set("--q", "q", f.q);
  set("--epsilon", "epsilon", f.epsilon);
  set("--trials", "trials", f.trials);
  set("--seed", "seed", f.seed);
  set("--out", "out", f.out);
  set("--format", "format", f.format);
  set("--family", "family", f.family);
  set("--frame", "frame", f.frame);
  set("--statistic", "statistic", f.statistic);
  set("--b", "b", f.b);
  set("--c", "c", f.c);
  set("--hetero", "hetero", f.hetero);
  set("--rho", "rho", f.rho);
  set("--grid", "grid", f.grid);
  set("--thresholds", "thresholds", f.thresholds);
  set("--dump-matrix", "dump_matrix", f.dump_matrix);
  set("--dump-esd", "dump_esd", f.dump_esd);
  if (sub->count("--timing") > 0) j["timing"] = f.timing;
  if (sub->count("--z") > 0) {
    json zs = json::array();
    for (const auto& s : f.z) zs.push_back(ParsePair(s));
    j["z"] = zs;
  }
  return j;
}

int Fail(mplab_status status) {
  std::fprintf(stderr, "mplab: %s: %s\n", mplab_status_string(status), mplab_last_error());
  return kExitError;
}

int Run(const CLI::App* sub, const Flags& f) {
  json cfg;
  try {
    cfg = BuildConfig(sub, f);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "mplab: %s\n", e.what());
    return kExitError;
  }
  mplab_experiment* exp = nullptr;
  mplab_status st = mplab_experiment_from_json(cfg.dump().c_str(), &exp);
  if (st != MPLAB_OK) return Fail(st);
  if (f.print_config) {
    char* text = nullptr;
    st = mplab_experiment_to_json(exp, &text);
    mplab_experiment_free(exp);
    if (st != MPLAB_OK) return Fail(st);
    std::printf("%s\n", text);
    mplab_string_free(text);
    return 0;
  }
  mplab_result* result = nullptr;
  st = mplab_experiment_run(exp, f.threads, &result);
  mplab_experiment_free(exp);
  if (st != MPLAB_OK) return Fail(st);
  std::printf("%s\n", mplab_result_summary_json(result));
  const bool passed = mplab_result_passed(result) != 0;
  mplab_result_free(result);
  return passed ? 0 : kExitFailedChecks;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marchenko-Pastur numerical lab"};
  app.set_version_flag("--version", mplab_version());
  app.require_subcommand(1);
  Flags flags;
  const char* names[][2] = {
      {"esd", "KS distance of sample covariance spectra to the MP law"},
      {"conditions", "quadratic form, norm and Lindeberg statistics"},
      {"mp-property", "KS distance of projected sample covariance spectra"},
      {"equivalence", "resolvent gap against the Gaussian twin"},
      {"law-tables", "tabulate the MP law cdf, density or Stieltjes transform"},
      {"facts", "randomized trace and resolvent inequality checks"},
  };
  for (const auto& [name, desc] : names) AddFlags(app.add_subcommand(name, desc), flags);
  CLI11_PARSE(app, argc, argv);
  for (const CLI::App* sub : app.get_subcommands()) return Run(sub, flags);
  return kExitError;
}
