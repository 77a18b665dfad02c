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

#ifndef MPLAB_SPECTRA_HPP_
#define MPLAB_SPECTRA_HPP_

#include <string>

#include "mplab/matcore.hpp"
#include "mplab/mp_law.hpp"

namespace mplab {

// Empirical spectral distribution: ascending eigenvalues, each of mass 1/p.
struct Esd {
  Vector eigenvalues;

  Index size() const { return eigenvalues.size(); }
  double Mean() const { return eigenvalues.mean(); }
};

// (1/n) X X^T.
SymMatrix SampleCovariance(const Matrix& x);

// With psd set, eigenvalues within kPsdClamp of zero are snapped to 0 and
// anything more negative is an error.
Esd ComputeEsd(const SymMatrix& m, bool psd = false);

// sup_x |F_esd(x) - F_law(x)|, using left limits of the law's CDF so the atom
// at 0 is matched against eigenvalues that are exactly 0.
double KsDistance(const Esd& e, const MPLaw& law);

// (1/p) sum_k 1 / (lambda_k - z).
Complex EmpiricalStieltjes(const Esd& e, ComplexPoint z);

// C M C^T.
SymMatrix ProjectedCovariance(const ProjectorFrame& frame, const SymMatrix& m);

// One-column CSV with an "eigenvalue" header, 17 significant digits.
void WriteEsdCsv(const Esd& e, const std::string& path);
Esd ReadEsdCsv(const std::string& path);

}  // namespace mplab

#endif  // MPLAB_SPECTRA_HPP_
