// Copyright 2026 The Holant Dichotomy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holant/linalg.hpp"

#include "holant/signature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace holant {

namespace {

double norm(const RealVector& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double dot(const RealVector& a, const RealVector& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void sign_by_largest(RealVector& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best]) + 1e-12) best = i;
  if (v[best] < 0)
    for (double& x : v) x = -x;
}

void sign_by_first_nonzero(RealVector& v) {
  for (double x : v) {
    if (std::abs(x) <= 1e-12) continue;
    if (x < 0)
      for (double& y : v) y = -y;
    return;
  }
}

}  // namespace

TransformMatrix TransformMatrix::real_orthogonal(const RealMatrix& m) {
  return real_orthogonal(m, tolerances().orth);
}

TransformMatrix TransformMatrix::real_orthogonal(const RealMatrix& m,
                                                 double tol_orth) {
  if (!m.square()) throw Error("transform must be square");
  const double r = orthogonality_residual(m);
  if (r > tol_orth)
    throw Error("matrix is not orthogonal (residual " + std::to_string(r) + ")");
  return TransformMatrix(to_complex(m), TransformKind::real_orthogonal);
}

TransformMatrix TransformMatrix::general(const ComplexMatrix& m) {
  if (!m.square()) throw Error("transform must be square");
  return TransformMatrix(m, TransformKind::complex_general);
}

RealMatrix TransformMatrix::real() const {
  if (kind_ != TransformKind::real_orthogonal)
    throw Error("transform is not real");
  return real_part(m_);
}

double orthogonality_residual(const RealMatrix& t) {
  return max_abs_diff(t * t.transpose(), RealMatrix::identity(t.rows()));
}

double EigenResult::residual(const RealMatrix& m) const {
  return max_abs_diff(q * m * q.transpose(), RealMatrix::diagonal(lambdas));
}

EigenResult eig_sym(const RealMatrix& m) {
  if (!m.square()) throw Error("eigendecomposition needs a square matrix");
  const std::size_t n = m.rows();
  const double scale = std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tolerances().eq * scale)
        throw Error("eigendecomposition input is not symmetric");

  RealMatrix a = m;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (m(i, j) + m(j, i));
  RealMatrix v = RealMatrix::identity(n);

  const double total = std::max(a.max_abs(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (std::sqrt(off) <= 1e-17 * total) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= 1e-18 * total) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });
  EigenResult res{RealMatrix(n, n), RealVector(n)};
  for (std::size_t r = 0; r < n; ++r) {
    RealVector col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = v(k, order[r]);
    sign_by_largest(col);
    res.q.set_row(r, col);
    res.lambdas[r] = a(order[r], order[r]);
  }
  return res;
}

EigenResult eig_sym(const ComplexMatrix& m) {
  for (const auto& x : m.data())
    if (std::abs(x.imag()) > tolerances().im)
      throw Error("eigendecomposition input is not real");
  return eig_sym(real_part(m));
}

RealMatrix orthogonal_from_first_row(const RealVector& u) {
  const double n = norm(u);
  if (!(n > 1e-12)) throw Error("orthogonal completion of a zero vector");
  const std::size_t d = u.size();
  RealVector unit(d);
  for (std::size_t i = 0; i < d; ++i) unit[i] = u[i] / n;
  RealVector w(d);
  for (std::size_t i = 0; i < d; ++i) w[i] = (i == 0 ? 1.0 : 0.0) - unit[i];
  const double ww = dot(w, w);
  RealMatrix h = RealMatrix::identity(d);
  if (ww > 1e-30)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) h(i, j) -= 2.0 * w[i] * w[j] / ww;
  h.set_row(0, unit);
  for (std::size_t r = 1; r < d; ++r) {
    RealVector row = h.row(r);
    sign_by_first_nonzero(row);
    h.set_row(r, row);
  }
  return h;
}

IsotropicCanonical isotropic_canonicalize(const Vector& beta) {
  if (beta.size() != 3) throw Error("isotropic canonicalization is for C^3");
  RealVector gamma(3), delta(3);
  for (int i = 0; i < 3; ++i) {
    gamma[i] = beta[i].real();
    delta[i] = beta[i].imag();
  }
  const double gn = norm(gamma), dn = norm(delta);
  const double sq = std::max(1.0, gn * gn + dn * dn);
  const Tolerances& tol = tolerances();
  if (std::abs(bilinear_dot(beta, beta)) > tol.iso * sq)
    throw Error("vector is not isotropic");
  IsotropicCanonical out{RealMatrix::identity(3), gn};
  if (gn <= 1e-300) return out;
  RealVector t1(3), t2(3);
  for (int i = 0; i < 3; ++i) t1[i] = gamma[i] / gn;
  const double proj = dot(delta, t1);
  for (int i = 0; i < 3; ++i) t2[i] = delta[i] - proj * t1[i];
  const double t2n = norm(t2);
  for (double& x : t2) x /= t2n;
  const RealVector t3 = {t1[1] * t2[2] - t1[2] * t2[1], t1[2] * t2[0] - t1[0] * t2[2],
                         t1[0] * t2[1] - t1[1] * t2[0]};
  out.t.set_row(0, t1);
  out.t.set_row(1, t2);
  out.t.set_row(2, t3);
  return out;
}

RealVector singular_values(const RealMatrix& m) {
  bool symmetric = m.square();
  for (std::size_t i = 0; symmetric && i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) {
        symmetric = false;
        break;
      }
  RealVector s;
  if (symmetric) {
    for (double l : eig_sym(m).lambdas) s.push_back(std::abs(l));
  } else {
    for (double l : eig_sym(m.transpose() * m).lambdas)
      s.push_back(std::sqrt(std::max(0.0, l)));
  }
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

int rank_with_tolerance(const RealMatrix& m) {
  return rank_with_tolerance(m, tolerances().rank);
}

int rank_with_tolerance(const RealMatrix& m, double tol_rank) {
  if (!m.square()) throw Error("rank needs a square matrix");
  const RealVector s = singular_values(m);
  if (s.empty() || s[0] <= 1e-300) return 0;
  return static_cast<int>(
      std::count_if(s.begin(), s.end(), [&](double x) { return x > tol_rank * s[0]; }));
}

}  // namespace holant
