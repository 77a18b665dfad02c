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

#include "mplab/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "mplab/error.hpp"

namespace mplab {

SymMatrix SampleCovariance(const Matrix& x) {
  Require(x.rows() >= 1 && x.cols() >= 1, ErrorCode::kDomain,
          "sample covariance: empty data matrix");
  Matrix s = Matrix::Zero(x.rows(), x.rows());
  s.selfadjointView<Eigen::Lower>().rankUpdate(
      x, 1.0 / static_cast<double>(x.cols()));
  return SymMatrix::FromLower(std::move(s));
}

Esd ComputeEsd(const SymMatrix& m, bool psd) {
  Spectrum s = Eigh(m, false);
  if (psd) ClampPsd(s.eigenvalues);
  return Esd{std::move(s.eigenvalues)};
}

double KsDistance(const Esd& e, const MPLaw& law) {
  const Index p = e.size();
  Require(p >= 1, ErrorCode::kDomain, "ks_distance: empty ESD");
  const double inv_p = 1.0 / static_cast<double>(p);
  double sup = 0.0;
  // Walk runs of tied eigenvalues; F_n jumps from i/p to j/p at x while F
  // jumps only at 0 (the atom). Between eigenvalues both are monotone, so
  // the one-sided limits at the jump points suffice.
  Index i = 0;
  while (i < p) {
    const double x = e.eigenvalues(i);
    Index j = i + 1;
    while (j < p && e.eigenvalues(j) == x) ++j;
    const double f = Cdf(law, x);
    const double f_left = x == 0.0 ? f - law.atom0() : f;
    sup = std::max(sup, std::abs(static_cast<double>(j) * inv_p - f));
    sup = std::max(sup, std::abs(static_cast<double>(i) * inv_p - f_left));
    i = j;
  }
  return std::min(sup, 1.0);
}

Complex EmpiricalStieltjes(const Esd& e, ComplexPoint z) {
  Require(e.size() >= 1, ErrorCode::kDomain, "stieltjes: empty ESD");
  Complex sum = 0.0;
  for (Index k = 0; k < e.size(); ++k) sum += 1.0 / (e.eigenvalues(k) - z.value());
  return sum / static_cast<double>(e.size());
}

SymMatrix ProjectedCovariance(const ProjectorFrame& frame, const SymMatrix& m) {
  Require(frame.cols() == m.dim(), ErrorCode::kDomain,
          "projected covariance: frame columns must match matrix dimension");
  const Matrix& c = frame.matrix();
  const Matrix cm = c * m.dense();
  Matrix out = cm * c.transpose();
  return SymMatrix::FromLower(std::move(out));
}

void WriteEsdCsv(const Esd& e, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) Fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  std::fputs("eigenvalue\n", f);
  for (Index k = 0; k < e.size(); ++k) std::fprintf(f, "%.17g\n", e.eigenvalues(k));
  if (std::fclose(f) != 0) Fail(ErrorCode::kIo, "write failed for " + path);
}

Esd ReadEsdCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path);
  std::string line;
  std::vector<double> values;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first && line == "eigenvalue") {
      first = false;
      continue;
    }
    first = false;
    try {
      values.push_back(std::stod(line));
    } catch (const std::exception&) {
      Fail(ErrorCode::kParse, "bad ESD row '" + line + "'");
    }
  }
  std::sort(values.begin(), values.end());
  Esd e;
  e.eigenvalues = Eigen::Map<Vector>(values.data(), static_cast<Index>(values.size()));
  return e;
}

}  // namespace mplab
