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

// Acceptance suite. One PASS/FAIL line per criterion; the thresholds are
// pinned here rather than read from the data file so a recalibration of the
// shipped table cannot silently move them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "mplab/conditions.hpp"
#include "mplab/ensembles.hpp"
#include "mplab/equivalence.hpp"
#include "mplab/experiment.hpp"
#include "mplab/facts.hpp"
#include "mplab/mp_law.hpp"

namespace mplab {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

int failures = 0;

void Report(int id, const char* title, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string Fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), f, a);
  return buf;
}

// Runs an experiment and returns the |value| of every emitted record.
struct Collected {
  RunSummary summary;
  std::vector<double> values;
  std::vector<double> abs_values;
};

Collected Run(const ExperimentConfig& cfg, int threads = 1) {
  Collected c;
  RunOptions opt;
  opt.threads = threads;
  opt.sink = [&](const TrialRecord& r) {
    c.values.push_back(r.value);
    c.abs_values.push_back(std::hypot(r.value, r.value_im));
  };
  c.summary = RunExperiment(cfg, opt);
  return c;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double FracAtMost(const std::vector<double>& v, double level) {
  return static_cast<double>(std::count_if(v.begin(), v.end(), [&](double x) { return x <= level; })) /
         static_cast<double>(v.size());
}

ExperimentConfig Config(const char* experiment, const char* model, Index p, Index n, std::int64_t trials,
                        std::uint64_t seed) {
  ExperimentConfig c;
  c.experiment = experiment;
  c.model = model;
  c.p = p;
  c.n = n;
  c.trials = trials;
  c.seed = seed;
  return c;
}

// 1 -----------------------------------------------------------------------

double RawDensity(double rho, double x) {
  const double a = std::pow(1.0 - std::sqrt(rho), 2);
  const double b = std::pow(1.0 + std::sqrt(rho), 2);
  if (x <= a || x >= b) return 0.0;
  return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * rho * x);
}

template <typename F>
double Integrate(F f, double lo, double hi) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return ts.integrate(f, lo, hi, 1e-14);
}

Complex StieltjesQuadrature(double rho, Complex z) {
  const MPLaw law(rho);
  std::vector<double> cuts = {law.lower()};
  if (z.real() > law.lower() && z.real() < law.upper()) cuts.push_back(z.real());
  cuts.push_back(law.upper());
  Complex total = law.atom0() / (0.0 - z);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double re = Integrate([&](double x) { return (RawDensity(rho, x) / (x - z)).real(); },
                                cuts[i], cuts[i + 1]);
    const double im = Integrate([&](double x) { return (RawDensity(rho, x) / (x - z)).imag(); },
                                cuts[i], cuts[i + 1]);
    total += Complex(re, im);
  }
  return total;
}

void Criterion1() {
  const auto t0 = Clock::now();
  double mass_err = 0.0, st_err = 0.0;
  for (double rho : {0.1, 0.5, 1.0, 2.0, 4.0}) {
    const MPLaw law(rho);
    const double mass =
        Integrate([&](double x) { return Density(law, x); }, law.lower(), law.upper());
    mass_err = std::max(mass_err, std::abs(law.atom0() + mass - 1.0));
    for (double re : {-1.0, 0.5, 1.5, 3.0, 6.0})
      for (double im : {0.1, 0.5, 1.0, 2.0}) {
        const Complex z(re, im);
        st_err = std::max(st_err, std::abs(StieltjesClosed(law, ComplexPoint(z)) -
                                           StieltjesQuadrature(rho, z)));
      }
  }
  const double secs = Seconds(t0);
  const bool ok = mass_err <= 1e-8 && st_err <= 1e-8 && secs < 5.0;
  Report(1, "MP-law analytics", ok,
         Fmt("mass err %.2e", mass_err) + Fmt(", stieltjes err %.2e", st_err) +
             Fmt(" (<= 1e-8), %.2f s (< 5)", secs));
}

// 2 -----------------------------------------------------------------------

void Criterion2() {
  const auto t0 = Clock::now();
  const double g = Run(Config("esd", "iid-gauss", 512, 1024, 10, 2)).summary.aggregate.mean;
  const double r = Run(Config("esd", "iid-rademacher", 512, 1024, 10, 2)).summary.aggregate.mean;
  const double secs = Seconds(t0);
  Report(2, "sufficiency, iid entries", g <= 0.04 && r <= 0.04 && secs < 120.0,
         Fmt("mean KS gauss %.4f", g) + Fmt(", rademacher %.4f (<= 0.04)", r) +
             Fmt(", %.1f s (< 120)", secs));
}

// 3 -----------------------------------------------------------------------

void Criterion3() {
  const double ks_min = Run(Config("esd", "sparse-spike", 1024, 2048, 10, 3)).summary.aggregate.min;
  Stream rng(3, ExperimentId("lindeberg"));
  const McEstimate lin = LindebergStat(SparseSpike{}, 1024, 0.5, 2000, rng);
  const bool lin_ok = std::abs(lin.value - 1.0) <= std::max(4.0 * lin.se, 1e-12);
  Report(3, "necessity, Lindeberg violation", ks_min >= 0.10 && lin_ok,
         Fmt("min KS %.4f (>= 0.10)", ks_min) + Fmt(", L(0.5) = %.6f", lin.value) +
             Fmt(" +- %.2e", lin.se));
}

// 4 -----------------------------------------------------------------------

void Criterion4() {
  const double a = Run(Config("esd", "block-xi", 1024, 1024, 10, 4)).summary.aggregate.mean;

  ExperimentConfig qb = Config("conditions", "block-xi", 1024, 1024, 400, 4);
  qb.statistic = "quadform";
  qb.family = "fixed-half";
  qb.epsilon = 0.25;
  const double b = Run(qb).summary.aggregate.exceedance;

  ExperimentConfig mc = Config("mp-property", "block-xi", 1024, 1024, 10, 4);
  mc.q = 512;
  mc.frame = "fixed-half";
  const double c = Run(mc).summary.aggregate.min;

  ExperimentConfig e9 = Config("conditions", "block-xi", 1024, 1024, 2000, 4);
  e9.statistic = "e9";
  const double d = FracAtMost(Run(e9).abs_values, 0.1);

  const bool oka = a <= 0.05, okb = b >= 0.95, okc = c >= 0.07, okd = d >= 0.99;
  Report(4, "block counterexample", oka && okb && okc && okd,
         std::string("(a) ") + (oka ? "ok" : "FAIL") + Fmt(" mean KS %.4f (<= 0.05); ", a) +
             "(b) " + (okb ? "ok" : "FAIL") + Fmt(" exceedance %.4f (>= 0.95); ", b) + "(c) " +
             (okc ? "ok" : "FAIL") + Fmt(" min KS %.4f (>= 0.07); ", c) + "(d) " +
             (okd ? "ok" : "FAIL") + Fmt(" P(|e9| <= 0.1) %.4f (>= 0.99)", d));
}

// 5 -----------------------------------------------------------------------

void Criterion5() {
  ExperimentConfig c = Config("mp-property", "iid-gauss", 1024, 1024, 10, 5);
  c.q = 512;
  c.frame = "haar";
  const double m = Run(c).summary.aggregate.mean;
  Report(5, "(MP) positive control", m <= 0.04, Fmt("mean KS %.4f (<= 0.04)", m));
}

// 6 -----------------------------------------------------------------------

void Criterion6() {
  ExperimentConfig id = Config("conditions", "gauss-cov:identity", 2048, 2048, 400, 6);
  id.statistic = "quadform";
  id.family = "identity";
  id.epsilon = 0.5;
  const double ex_id = Run(id).summary.aggregate.exceedance;
  ExperimentConfig sp = id;
  sp.model = "gauss-cov:spiked:1,p";
  const double ex_sp = Run(sp).summary.aggregate.exceedance;
  const double a3_id = A3Stat(CovarianceMatrix(CovIdentity{}, 2048));
  const double a3_sp = A3Stat(CovarianceMatrix(CovSpiked{1, 0.0, true}, 2048));

  // Chebyshev bound over a grid of covariances, test matrices and epsilons.
  const Index p = 64;
  const std::vector<CovSpec> covs = {CovIdentity{}, CovToeplitz{0.5}, CovSpiked{4, 3.0, false},
                                     CovAutocov{{1.0, 0.4}}, CovSpiked{1, 0.0, true}};
  const std::vector<double> eps = {0.25, 1.0};
  Stream rng(6, ExperimentId("chebyshev"));
  int configs = 0, violated = 0;
  double worst = -HUGE_VAL;
  for (const CovSpec& cov : covs) {
    for (int fam = 0; fam < 2; ++fam) {
      const SymMatrix a = fam == 0 ? SymMatrix::Identity(p)
                                   : DenseTestMatrix(DrawTestMatrix(FamilyRandomPsd{}, p, rng));
      for (double e : eps) {
        const ChebyshevCheck chk =
            ChebyshevBoundCheck(GaussianCov{cov}, a, p, e, 2000, rng);
        ++configs;
        const double excess = chk.observed - chk.bound - 4.0 * chk.se;
        worst = std::max(worst, chk.observed - chk.bound);
        violated += excess > 0.0;
      }
    }
  }
  const bool ok = ex_id <= 0.01 && ex_sp >= 0.3 && violated == 0 && configs == 20;
  Report(6, "Gaussian dichotomy", ok,
         Fmt("exceedance identity %.4f (<= 0.01)", ex_id) +
             Fmt(", spiked %.4f (>= 0.3)", ex_sp) + Fmt("; a3 identity %.3e", a3_id) +
             Fmt(", spiked %.4f", a3_sp) + "; chebyshev " + std::to_string(violated) + "/" +
             std::to_string(configs) + " violated" + Fmt(", worst observed-bound %.4f", worst));
}

// 7 -----------------------------------------------------------------------

void Criterion7() {
  const auto t0 = Clock::now();
  std::vector<double> medians;
  for (Index p : {128, 256, 512}) {
    ExperimentConfig c = Config("equivalence", "iid-rademacher", p, 2 * p, 20, 7);
    c.z = {{0.0, 1.0}};
    medians.push_back(Median(Run(c).abs_values));
  }
  ExperimentConfig sp = Config("equivalence", "sparse-spike", 512, 1024, 20, 7);
  sp.z = {{0.0, 1.0}};
  const double sparse = Median(Run(sp).abs_values);

  double shift_err = 0.0;
  for (std::uint64_t t = 0; t < 5; ++t) {
    SwapConfig cfg;
    cfg.model = IidRademacher{};
    cfg.p = 128;
    cfg.n = 256;
    cfg.z = ComplexPoint(0.0, 1.0);
    cfg.shift = ShiftScaledIdentity{0.5};
    const Stream rng(7, ExperimentId("shift"), t);
    const Complex with_b = ResolventGap(cfg, rng);
    cfg.shift = ShiftNone{};
    cfg.z = ComplexPoint(-0.5, 1.0);
    shift_err = std::max(shift_err, std::abs(with_b - ResolventGap(cfg, rng)));
  }
  const double secs = Seconds(t0);
  const bool decreasing = medians[0] > medians[1] && medians[1] > medians[2];
  const bool ok = decreasing && medians[2] <= 0.02 && sparse >= 0.05 && shift_err <= 1e-10 &&
                  secs < 300.0;
  Report(7, "Gaussian swap", ok,
         Fmt("median |D| rademacher %.5f", medians[0]) + Fmt(" > %.5f", medians[1]) +
             Fmt(" > %.5f (<= 0.02)", medians[2]) + Fmt(", sparse %.4f (>= 0.05)", sparse) +
             Fmt(", shift identity %.2e (<= 1e-10)", shift_err) + Fmt(", %.1f s (< 300)", secs));
}

// 8 -----------------------------------------------------------------------

void Criterion8() {
  ExperimentConfig c = Config("equivalence", "iid-gauss", 256, 512, 40, 8);
  c.z = {{0.0, 1.0}};
  c.hetero = {"identity", "toeplitz:0.5"};
  const Collected r = Run(c);
  const double frac = FracAtMost(r.abs_values, 0.03);
  const double a3 = r.summary.extras.at("a3_star");
  Report(8, "heterogeneous swap", frac >= 0.95,
         Fmt("P(|D| <= 0.03) %.3f (>= 0.95)", frac) + Fmt(", a3* %.5f", a3));
}

// 9 -----------------------------------------------------------------------

void Criterion9() {
  const auto t0 = Clock::now();
  Stream rng(9, ExperimentId("facts"));
  int violations = 0;
  for (int t = 0; t < 1000; ++t) violations += RunFactTrial(rng, 40).Violations();
  const double secs = Seconds(t0);
  Report(9, "invariant suite", violations == 0 && secs < 30.0,
         std::to_string(violations) + " violations over 1000 instances" +
             Fmt(", %.2f s (< 30)", secs));
}

// 10 ----------------------------------------------------------------------

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

void Criterion10() {
  const fs::path dir = fs::temp_directory_path();
  std::vector<ExperimentConfig> cfgs = {
      Config("esd", "iid-rademacher", 128, 256, 12, 10),
      Config("conditions", "block-xi", 256, 256, 40, 10),
      Config("mp-property", "iid-gauss", 128, 128, 8, 10),
      Config("equivalence", "sparse-spike", 64, 128, 12, 10),
      Config("law-tables", "iid-gauss", 1, 1, 1, 10),
      Config("facts", "iid-gauss", 40, 1, 50, 10),
  };
  cfgs[1].family = "haar-projector";
  cfgs[4].statistic = "stieltjes";
  ExperimentConfig hetero = Config("equivalence", "iid-gauss", 64, 128, 6, 10);
  hetero.hetero = {"identity", "toeplitz:0.5"};
  cfgs.push_back(hetero);

  int mismatched = 0;
  for (const ExperimentConfig& base : cfgs) {
    std::string outputs[2];
    const char* threads[2] = {"1", "8"};
    for (int k = 0; k < 2; ++k) {
      ExperimentConfig c = base;
      c.out = (dir / ("mplab_acceptance_det_" + std::string(threads[k]) + ".csv")).string();
      setenv("MPLAB_THREADS", threads[k], 1);
      RunOptions opt;
      opt.threads = 0;
      const std::string summary = RunExperiment(c, opt).ToJson(base);
      outputs[k] = Slurp(c.out) + summary;
      fs::remove(c.out);
    }
    mismatched += outputs[0] != outputs[1] || outputs[0].empty();
  }
  unsetenv("MPLAB_THREADS");
  Report(10, "determinism", mismatched == 0,
         std::to_string(cfgs.size() - static_cast<std::size_t>(mismatched)) + "/" +
             std::to_string(cfgs.size()) + " experiments byte-identical at MPLAB_THREADS 1 vs 8");
}

}  // namespace
}  // namespace mplab

int main(int argc, char** argv) {
  using namespace mplab;
  const std::vector<std::function<void()>> all = {Criterion1, Criterion2, Criterion3, Criterion4,
                                                  Criterion5, Criterion6, Criterion7, Criterion8,
                                                  Criterion9, Criterion10};
  // Optional list of criterion numbers to run.
  std::vector<int> pick;
  for (int i = 1; i < argc; ++i) pick.push_back(std::atoi(argv[i]));
  for (std::size_t i = 0; i < all.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!pick.empty() && std::find(pick.begin(), pick.end(), id) == pick.end()) continue;
    try {
      all[i]();
    } catch (const std::exception& e) {
      Report(id, "error", false, e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures ? 1 : 0;
}
