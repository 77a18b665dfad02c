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

#include "mplab/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <vector>

#include "mplab/error.hpp"

namespace mplab {
namespace {

bool AllFinite(const Matrix& m) { return m.allFinite(); }

// Reduces the symmetric matrix held in the lower triangle of `a` to
// tridiagonal form T = H_{n-3} ... H_0 A H_0 ... H_{n-3}. The essential part
// of each Householder vector is left below the subdiagonal of `a`.
void Tridiagonalize(Matrix& a, Vector& diag, Vector& off, Vector& tau) {
  const Index n = a.rows();
  off.setZero(n);
  tau.setZero(n);
  Vector v, w;
  for (Index k = 0; k + 2 < n; ++k) {
    const Index m = n - k - 1;
    auto x = a.col(k).segment(k + 1, m);
    const double alpha = x(0);
    const double sigma = x.tail(m - 1).squaredNorm();
    if (sigma == 0.0) {
      off(k) = alpha;
      continue;
    }
    const double norm = std::sqrt(alpha * alpha + sigma);
    const double beta = alpha <= 0.0 ? norm : -norm;
    const double t = (beta - alpha) / beta;
    x.tail(m - 1) /= (alpha - beta);
    x(0) = 1.0;
    v = x;

    auto trailing = a.bottomRightCorner(m, m);
    w.noalias() = t * (trailing.selfadjointView<Eigen::Lower>() * v);
    w -= (0.5 * t * w.dot(v)) * v;
    trailing.selfadjointView<Eigen::Lower>().rankUpdate(v, w, -1.0);

    off(k) = beta;
    tau(k) = t;
  }
  if (n >= 2) off(n - 2) = a(n - 1, n - 2);
  diag = a.diagonal();
}

// Accumulates Q = H_0 H_1 ... H_{n-3} backwards.
Matrix FormQ(const Matrix& a, const Vector& tau) {
  const Index n = a.rows();
  Matrix q = Matrix::Identity(n, n);
  Vector v;
  Eigen::RowVectorXd vq;
  for (Index k = n - 3; k >= 0; --k) {
    if (tau(k) == 0.0) continue;
    const Index m = n - k - 1;
    v.resize(m);
    v(0) = 1.0;
    v.tail(m - 1) = a.col(k).segment(k + 2, m - 1);
    auto block = q.bottomRightCorner(m, m);
    vq.noalias() = v.transpose() * block;
    block.noalias() -= (tau(k) * v) * vq;
  }
  return q;
}

std::string FormatResidual(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

// Implicit-shift QL on the tridiagonal (diag, off); off(i) couples i and i+1.
// Rotations are accumulated into the columns of z when non-null.
void TridiagonalQl(Vector& diag, Vector& off, Matrix* z) {
  const Index n = diag.size();
  const double eps = std::numeric_limits<double>::epsilon();
  // Exact zero eigenvalues leave dd = 0 and the relative test can never pass,
  // so couplings below eps * ||T|| are also dropped.
  double tnorm = 0.0;
  for (Index i = 0; i < n; ++i)
    tnorm = std::max(tnorm, std::abs(diag(i)) + (i > 0 ? std::abs(off(i - 1)) : 0.0) +
                                (i + 1 < n ? std::abs(off(i)) : 0.0));
  const double floor_tol = eps * tnorm;
  for (Index l = 0; l < n; ++l) {
    int iter = 0;
    Index m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(diag(m)) + std::abs(diag(m + 1));
        if (std::abs(off(m)) <= eps * dd || std::abs(off(m)) <= floor_tol) break;
      }
      if (m == l) break;
      if (iter++ == kMaxQlIterations) {
        Fail(ErrorCode::kConvergence,
             "eigh: QL iteration limit exceeded at index " +
                 std::to_string(l) + ", residual " +
                 FormatResidual(std::abs(off(l))));
      }
      double g = (diag(l + 1) - diag(l)) / (2.0 * off(l));
      double r = std::hypot(g, 1.0);
      g = diag(m) - diag(l) + off(l) / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool deflated = false;
      for (Index i = m - 1; i >= l; --i) {
        double f = s * off(i);
        const double b = c * off(i);
        r = std::hypot(f, g);
        off(i + 1) = r;
        if (r == 0.0) {
          diag(i + 1) -= p;
          off(m) = 0.0;
          deflated = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag(i + 1) - p;
        r = (diag(i) - g) * s + 2.0 * c * b;
        p = s * r;
        diag(i + 1) = g + p;
        g = c * r - b;
        if (z != nullptr) {
          auto zi = z->col(i);
          auto zi1 = z->col(i + 1);
          for (Index k = 0; k < z->rows(); ++k) {
            f = zi1(k);
            zi1(k) = s * zi(k) + c * f;
            zi(k) = c * zi(k) - s * f;
          }
        }
      }
      if (deflated) continue;
      diag(l) -= p;
      off(l) = g;
      off(m) = 0.0;
    } while (true);
  }
}

}  // namespace

SymMatrix SymMatrix::FromLower(Matrix m) {
  Require(m.rows() >= 1 && m.rows() == m.cols(), ErrorCode::kInvalidInput,
          "SymMatrix: expected a non-empty square matrix");
  m.triangularView<Eigen::StrictlyUpper>() = m.transpose();
  Require(AllFinite(m), ErrorCode::kInvalidInput,
          "SymMatrix: non-finite entry");
  return SymMatrix(std::move(m));
}

SymMatrix SymMatrix::Identity(Index p) {
  Require(p >= 1, ErrorCode::kInvalidInput, "SymMatrix: dim must be >= 1");
  return SymMatrix(Matrix::Identity(p, p));
}

SymMatrix SymMatrix::Zero(Index p) {
  Require(p >= 1, ErrorCode::kInvalidInput, "SymMatrix: dim must be >= 1");
  return SymMatrix(Matrix::Zero(p, p));
}

SymMatrix SymMatrix::Diagonal(const Vector& d) {
  Require(d.size() >= 1 && d.allFinite(), ErrorCode::kInvalidInput,
          "SymMatrix: bad diagonal");
  return SymMatrix(Matrix(d.asDiagonal()));
}

ComplexPoint::ComplexPoint(double re, double im) : z_(re, im) {
  Require(std::isfinite(re) && std::isfinite(im) && im > 0.0,
          ErrorCode::kDomain, "complex point must lie in the upper half-plane");
}

ProjectorFrame ProjectorFrame::FromRows(Matrix rows) {
  Require(rows.rows() >= 1 && rows.rows() <= rows.cols(), ErrorCode::kDomain,
          "frame: need 1 <= q <= p");
  Require(AllFinite(rows), ErrorCode::kInvalidInput, "frame: non-finite entry");
  const Matrix gram = rows * rows.transpose();
  const double err =
      (gram - Matrix::Identity(rows.rows(), rows.rows())).cwiseAbs().maxCoeff();
  Require(err <= kOrthTol, ErrorCode::kDomain, "frame: rows not orthonormal");
  return ProjectorFrame(std::move(rows));
}

ProjectorFrame ProjectorFrame::Coordinate(Index q, Index p, Index offset) {
  Require(q >= 1 && offset >= 0 && q + offset <= p, ErrorCode::kDomain,
          "frame: coordinate block out of range");
  Matrix c = Matrix::Zero(q, p);
  for (Index i = 0; i < q; ++i) c(i, offset + i) = 1.0;
  return ProjectorFrame(std::move(c));
}

Spectrum Eigh(const SymMatrix& m, bool want_vectors) {
  Matrix a = m.dense();
  Vector diag, off, tau;
  Tridiagonalize(a, diag, off, tau);
  Spectrum out;
  Matrix z;
  if (want_vectors) z = FormQ(a, tau);
  TridiagonalQl(diag, off, want_vectors ? &z : nullptr);

  const Index n = diag.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index i, Index j) { return diag(i) < diag(j); });
  out.eigenvalues.resize(n);
  for (Index k = 0; k < n; ++k) out.eigenvalues(k) = diag(order[k]);
  if (want_vectors) {
    Matrix sorted(n, n);
    for (Index k = 0; k < n; ++k) sorted.col(k) = z.col(order[k]);
    out.eigenvectors = std::move(sorted);
  }
  return out;
}

Complex ResolventTrace(const Spectrum& s, ComplexPoint z) {
  Complex sum = 0.0;
  for (Index k = 0; k < s.size(); ++k) sum += 1.0 / (s.eigenvalues(k) - z.value());
  return sum / static_cast<double>(s.size());
}

namespace {

template <typename T>
T ShermanMorrisonTrace(const Spectrum& s, const Vector& w, T shift) {
  Require(s.eigenvectors.has_value(), ErrorCode::kPrecondition,
          "rank-one update needs eigenvectors");
  Require(w.size() == s.size(), ErrorCode::kDomain,
          "rank-one update: vector length mismatch");
  const Vector u = s.eigenvectors->transpose() * w;
  T trace = 0.0, q1 = 0.0, q2 = 0.0;
  for (Index k = 0; k < s.size(); ++k) {
    const T inv = T(1.0) / (s.eigenvalues(k) - shift);
    trace += inv;
    q1 += u(k) * u(k) * inv;
    q2 += u(k) * u(k) * inv * inv;
  }
  return trace - q2 / (T(1.0) + q1);
}

}  // namespace

Complex RankOneTraceUpdate(const Spectrum& s, const Vector& w, ComplexPoint z) {
  return ShermanMorrisonTrace<Complex>(s, w, z.value());
}

double RankOneTraceUpdate(const Spectrum& s, const Vector& w, double shift) {
  Require(s.eigenvectors.has_value(), ErrorCode::kPrecondition,
          "rank-one update needs eigenvectors");
  const double scale = std::max(1.0, s.eigenvalues.cwiseAbs().maxCoeff());
  for (Index k = 0; k < s.size(); ++k) {
    Require(std::abs(s.eigenvalues(k) - shift) > 1e-14 * scale,
            ErrorCode::kDomain, "rank-one update: A - shift*I is singular");
  }
  const Vector u = s.eigenvectors->transpose() * w;
  double q1 = 0.0;
  for (Index k = 0; k < s.size(); ++k) q1 += u(k) * u(k) / (s.eigenvalues(k) - shift);
  Require(std::abs(1.0 + q1) > 1e-14, ErrorCode::kDomain,
          "rank-one update: singular Sherman-Morrison denominator");
  return ShermanMorrisonTrace<double>(s, w, shift);
}

ProjectorFrame HaarFrame(Index q, Index p, Stream& rng) {
  Require(q >= 1 && q <= p, ErrorCode::kDomain, "haar_frame: need 1 <= q <= p");
  Matrix g(p, q);  // transpose of the q x p Gaussian draw
  for (Index i = 0; i < q; ++i)
    for (Index j = 0; j < p; ++j) g(j, i) = rng.Normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix basis = qr.householderQ() * Matrix::Identity(p, q);
  const auto& r = qr.matrixQR();
  for (Index i = 0; i < q; ++i) {
    if (r(i, i) < 0.0) basis.col(i) = -basis.col(i);
  }
  return ProjectorFrame::FromRows(basis.transpose());
}

double SpectralNorm(const Matrix& m) {
  Require(m.size() > 0 && AllFinite(m), ErrorCode::kInvalidInput,
          "spectral_norm: empty or non-finite input");
  Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.transpose())
                                     : Matrix(m.transpose() * m);
  const Spectrum s = Eigh(SymMatrix::FromLower(std::move(gram)), false);
  return std::sqrt(std::max(0.0, s.eigenvalues(s.size() - 1)));
}

double SpectralNorm(const SymMatrix& m) {
  const Spectrum s = Eigh(m, false);
  return std::max(std::abs(s.eigenvalues(0)), std::abs(s.eigenvalues(s.size() - 1)));
}

void ClampPsd(Vector& eigenvalues) {
  if (eigenvalues.size() == 0) return;
  const double scale = eigenvalues.cwiseAbs().maxCoeff();
  const double tol = kPsdClamp * scale;
  for (Index k = 0; k < eigenvalues.size(); ++k) {
    double& v = eigenvalues(k);
    if (v < -tol) {
      Fail(ErrorCode::kDomain,
           "expected a PSD matrix, found eigenvalue " + std::to_string(v));
    }
    if (std::abs(v) <= tol) v = 0.0;
  }
}

SymMatrix PsdSqrt(const SymMatrix& m) {
  const Matrix& a = m.dense();
  const Index p = m.dim();
  bool diagonal = true;
  for (Index j = 0; j < p && diagonal; ++j)
    for (Index i = j + 1; i < p; ++i)
      if (a(i, j) != 0.0) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    Vector d = a.diagonal();
    ClampPsd(d);
    return SymMatrix::Diagonal(d.cwiseSqrt());
  }
  Spectrum s = Eigh(m, true);
  ClampPsd(s.eigenvalues);
  const Matrix& q = *s.eigenvectors;
  Matrix root = q * s.eigenvalues.cwiseSqrt().asDiagonal() * q.transpose();
  return SymMatrix::FromLower(std::move(root));
}

}  // namespace mplab
