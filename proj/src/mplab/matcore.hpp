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

#ifndef MPLAB_MATCORE_HPP_
#define MPLAB_MATCORE_HPP_

#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "mplab/rng.hpp"

namespace mplab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using Complex = std::complex<double>;

inline constexpr double kOrthTol = 1e-10;
inline constexpr double kReconTol = 1e-9;
// Eigenvalues of nominally PSD input above -kPsdClamp * ||A|| are snapped to 0.
inline constexpr double kPsdClamp = 1e-10;
inline constexpr int kMaxQlIterations = 64;

// Dense real symmetric matrix. The lower triangle is authoritative; it is
// mirrored into the upper one on construction.
class SymMatrix {
 public:
  static SymMatrix FromLower(Matrix m);
  static SymMatrix Identity(Index p);
  static SymMatrix Zero(Index p);
  static SymMatrix Diagonal(const Vector& d);

  Index dim() const { return m_.rows(); }
  const Matrix& dense() const { return m_; }
  double operator()(Index i, Index j) const { return m_(i, j); }
  double Trace() const { return m_.trace(); }

 private:
  explicit SymMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

// A point of the open upper half-plane.
class ComplexPoint {
 public:
  ComplexPoint(double re, double im);
  explicit ComplexPoint(Complex z) : ComplexPoint(z.real(), z.imag()) {}

  double re() const { return z_.real(); }
  double im() const { return z_.imag(); }
  Complex value() const { return z_; }

 private:
  Complex z_;
};

struct Spectrum {
  Vector eigenvalues;                  // ascending
  std::optional<Matrix> eigenvectors;  // column k pairs with eigenvalues[k]

  Index size() const { return eigenvalues.size(); }
};

// q x p matrix with orthonormal rows.
class ProjectorFrame {
 public:
  // Throws kDomain unless rows <= cols and C C^T = I within kOrthTol.
  static ProjectorFrame FromRows(Matrix rows);
  // Rows are the coordinate vectors e_offset, ..., e_{offset+q-1}.
  static ProjectorFrame Coordinate(Index q, Index p, Index offset = 0);

  Index rows() const { return c_.rows(); }
  Index cols() const { return c_.cols(); }
  const Matrix& matrix() const { return c_; }

 private:
  explicit ProjectorFrame(Matrix c) : c_(std::move(c)) {}
  Matrix c_;
};

// Householder tridiagonalization followed by implicit-shift QL.
Spectrum Eigh(const SymMatrix& m, bool want_vectors);

// (1/p) tr(A - zI)^{-1} from the spectrum of A.
Complex ResolventTrace(const Spectrum& s, ComplexPoint z);

// tr(A + w w^T - zI)^{-1} (unnormalized) via Sherman-Morrison on the
// eigenbasis of A. Requires eigenvectors.
Complex RankOneTraceUpdate(const Spectrum& s, const Vector& w, ComplexPoint z);
// Same identity at a real shift; throws kDomain if A - shift*I or the
// Sherman-Morrison denominator is singular.
double RankOneTraceUpdate(const Spectrum& s, const Vector& w, double shift);

// Haar-distributed frame: QR of a Gaussian matrix with positive R diagonal.
ProjectorFrame HaarFrame(Index q, Index p, Stream& rng);

// Largest singular value.
double SpectralNorm(const Matrix& m);
double SpectralNorm(const SymMatrix& m);

// Principal square root of a PSD matrix. Diagonal input takes a direct path.
SymMatrix PsdSqrt(const SymMatrix& m);

// Snaps eigenvalues with |lambda| <= kPsdClamp * scale to 0; throws kDomain on
// anything more negative. scale defaults to max |lambda|.
void ClampPsd(Vector& eigenvalues);

}  // namespace mplab

#endif  // MPLAB_MATCORE_HPP_
