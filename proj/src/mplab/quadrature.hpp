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

#ifndef MPLAB_QUADRATURE_HPP_
#define MPLAB_QUADRATURE_HPP_

#include <array>
#include <cmath>

namespace mplab {

// Adaptive 7/15-point Gauss-Kronrod. Splits an interval until the Gauss and
// Kronrod estimates agree to abs_tol (halved at each split) or to roundoff,
// or max_depth is reached. F may return double or std::complex<double>.
class GaussKronrod {
 public:
  template <typename F>
  static auto Integrate(F&& f, double a, double b, double abs_tol,
                        int max_depth = 30) {
    return Recurse(f, a, b, abs_tol, max_depth);
  }

 private:
  static constexpr std::array<double, 8> kNodes = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.0};
  static constexpr std::array<double, 8> kKronrod = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  // Gauss weights for nodes 1, 3, 5 and the center.
  static constexpr std::array<double, 4> kGauss = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

  template <typename F>
  static auto Recurse(F& f, double a, double b, double tol, int depth) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    auto fc = f(center);
    auto kronrod = fc * kKronrod[7];
    auto gauss = fc * kGauss[3];
    for (int i = 0; i < 7; ++i) {
      const double dx = half * kNodes[i];
      auto pair = f(center - dx) + f(center + dx);
      kronrod += pair * kKronrod[i];
      if (i % 2 == 1) gauss += pair * kGauss[i / 2];
    }
    kronrod *= half;
    gauss *= half;
    const double diff = std::abs(kronrod - gauss);
    if (depth <= 0 || diff <= tol || diff <= 1e-14 * std::abs(kronrod)) {
      return kronrod;
    }
    return Recurse(f, a, center, 0.5 * tol, depth - 1) +
           Recurse(f, center, b, 0.5 * tol, depth - 1);
  }
};

}  // namespace mplab

#endif  // MPLAB_QUADRATURE_HPP_
