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

#include "mplab/mp_law.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mplab/error.hpp"
#include "mplab/quadrature.hpp"

namespace mplab {
namespace {

constexpr double kQuadTol = 1e-14;

// Density pulled back by x = a + (b - a) sin^2(theta), theta in [0, pi/2].
// Both square-root edge singularities cancel against the Jacobian.
double AngularIntegrand(const MPLaw& law, double theta) {
  const double width = law.upper() - law.lower();
  const double s2 = std::sin(theta) * std::sin(theta);
  const double c2 = std::cos(theta) * std::cos(theta);
  const double shifted = width * s2;
  const double x = law.lower() + shifted;
  const double ratio = x > 0.0 ? shifted / x : 1.0;
  return width * c2 * ratio / (std::numbers::pi * law.rho());
}

double AngleOf(const MPLaw& law, double x) {
  const double u = (x - law.lower()) / (law.upper() - law.lower());
  return std::asin(std::sqrt(std::clamp(u, 0.0, 1.0)));
}

}  // namespace

MPLaw::MPLaw(double rho) : rho_(rho) {
  Require(std::isfinite(rho) && rho > 0.0, ErrorCode::kDomain,
          "MP law: rho must be positive and finite");
  const double r = std::sqrt(rho);
  a_ = (1.0 - r) * (1.0 - r);
  b_ = (1.0 + r) * (1.0 + r);
  atom0_ = std::max(1.0 - 1.0 / rho, 0.0);
}

Support LawSupport(const MPLaw& law) {
  return {law.lower(), law.upper(), law.atom0()};
}

double Density(const MPLaw& law, double x) {
  Require(std::isfinite(x), ErrorCode::kInvalidInput, "density: non-finite x");
  if (x <= law.lower() || x >= law.upper() || x <= 0.0) return 0.0;
  return std::sqrt((law.upper() - x) * (x - law.lower())) /
         (2.0 * std::numbers::pi * x * law.rho());
}

double ContinuousMass(const MPLaw& law, double x) {
  if (x <= law.lower()) return 0.0;
  const double theta = x >= law.upper() ? 0.5 * std::numbers::pi : AngleOf(law, x);
  return GaussKronrod::Integrate(
      [&](double t) { return AngularIntegrand(law, t); }, 0.0, theta, kQuadTol);
}

double Cdf(const MPLaw& law, double x) {
  Require(std::isfinite(x), ErrorCode::kInvalidInput, "cdf: non-finite x");
  if (x < 0.0) return 0.0;
  if (x >= law.upper()) return 1.0;
  return std::min(1.0, law.atom0() + ContinuousMass(law, x));
}

double Moment(const MPLaw& law, int k) {
  Require(k >= 0 && k <= 4, ErrorCode::kDomain, "moment: k must be in [0, 4]");
  const double width = law.upper() - law.lower();
  const double continuous = GaussKronrod::Integrate(
      [&](double t) {
        const double x = law.lower() + width * std::sin(t) * std::sin(t);
        return std::pow(x, k) * AngularIntegrand(law, t);
      },
      0.0, 0.5 * std::numbers::pi, kQuadTol);
  return continuous + (k == 0 ? law.atom0() : 0.0);
}

Complex StieltjesClosed(const MPLaw& law, ComplexPoint point) {
  const Complex z = point.value();
  const double rho = law.rho();
  const Complex qa = rho * z;
  const Complex qb = z + rho - 1.0;
  const Complex root = std::sqrt(qb * qb - 4.0 * qa);
  // Pick the sign that avoids cancellation, then get the other root from the
  // product of roots 1/(rho z).
  const double sign =
      (std::conj(qb) * root).real() >= 0.0 ? 1.0 : -1.0;
  const Complex q = -0.5 * (qb + sign * root);
  const Complex r1 = q / qa;
  const Complex r2 = 1.0 / q;
  const double bound = 1.0 / point.im();
  auto admissible = [&](Complex m) {
    return m.imag() > 0.0 && std::abs(m) <= bound * (1.0 + 1e-12);
  };
  if (admissible(r1) && !admissible(r2)) return r1;
  if (admissible(r2) && !admissible(r1)) return r2;
  // Both or neither: fall back to the larger imaginary part.
  return r1.imag() >= r2.imag() ? r1 : r2;
}

}  // namespace mplab
