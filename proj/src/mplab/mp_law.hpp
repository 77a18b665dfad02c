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

#ifndef MPLAB_MP_LAW_HPP_
#define MPLAB_MP_LAW_HPP_

#include "mplab/matcore.hpp"

namespace mplab {

// Marchenko-Pastur law with aspect ratio rho: an atom of mass
// max(1 - 1/rho, 0) at zero plus a density on [(1-sqrt rho)^2, (1+sqrt rho)^2].
class MPLaw {
 public:
  explicit MPLaw(double rho);

  double rho() const { return rho_; }
  double lower() const { return a_; }
  double upper() const { return b_; }
  double atom0() const { return atom0_; }

 private:
  double rho_, a_, b_, atom0_;
};

struct Support {
  double a;
  double b;
  double atom0;
};

Support LawSupport(const MPLaw& law);

// Continuous part only. Returns 0 at x = 0 when the lower edge is 0, where the
// true density diverges integrably.
double Density(const MPLaw& law, double x);

// Right-continuous CDF, including the atom at 0.
double Cdf(const MPLaw& law, double x);

// Integral of the continuous part over [a, x] (without the atom).
double ContinuousMass(const MPLaw& law, double x);

// k-th moment for 0 <= k <= 4.
double Moment(const MPLaw& law, int k);

// Closed-form Stieltjes transform m(z) = integral of dmu(t)/(t - z), the root
// of rho z m^2 + (z + rho - 1) m + 1 = 0 with Im m > 0.
Complex StieltjesClosed(const MPLaw& law, ComplexPoint z);

}  // namespace mplab

#endif  // MPLAB_MP_LAW_HPP_
