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

#include "holant/random.hpp"

#include <cmath>

namespace holant {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * M_PI * u2;
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

RealVector Rng::unit_vector(int n) {
  while (true) {
    RealVector v(n);
    double s = 0.0;
    for (double& x : v) {
      x = normal();
      s += x * x;
    }
    if (s < 1e-12) continue;
    s = std::sqrt(s);
    for (double& x : v) x /= s;
    return v;
  }
}

RealMatrix Rng::orthogonal(int n) {
  RealMatrix q(n, n);
  for (int r = 0; r < n; ++r) {
    while (true) {
      RealVector v = unit_vector(n);
      for (int k = 0; k < r; ++k) {
        double p = 0.0;
        for (int j = 0; j < n; ++j) p += v[j] * q(k, j);
        for (int j = 0; j < n; ++j) v[j] -= p * q(k, j);
      }
      double s = 0.0;
      for (double x : v) s += x * x;
      if (s < 1e-6) continue;
      s = std::sqrt(s);
      for (int j = 0; j < n; ++j) q(r, j) = v[j] / s;
      break;
    }
  }
  return q;
}

RealMatrix Rng::rotation(int n) {
  RealMatrix q = orthogonal(n);
  // Determinant sign via Gaussian elimination on a copy.
  RealMatrix a = q;
  double det = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (piv != c) {
      for (int j = 0; j < n; ++j) std::swap(a(c, j), a(piv, j));
      det = -det;
    }
    det *= a(c, c);
    for (int r = c + 1; r < n; ++r) {
      const double f = a(r, c) / a(c, c);
      for (int j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  if (det < 0)
    for (int j = 0; j < n; ++j) q(0, j) = -q(0, j);
  return q;
}

}  // namespace holant
