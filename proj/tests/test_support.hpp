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

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "holant/grid.hpp"
#include "holant/random.hpp"
#include "holant/signature.hpp"

namespace holant::testing {

inline const double kSqrt2 = std::sqrt(2.0);
inline const double kSqrt3 = std::sqrt(3.0);
inline const double kSqrt6 = std::sqrt(6.0);

/// K4 with every vertex carrying the ternary f.
inline SignatureGrid k4(const SymmetricSignature& f) {
  SignatureGrid g(f.domain());
  for (int v = 0; v < 4; ++v) g.add_vertex(f);
  std::vector<int> next(4, 0);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) g.connect(a, next[a]++, b, next[b]++);
  return g;
}

/// Test-side Holant: recursive assignment of edge colors, each vertex looked
/// up by its color counts. Closed grids only.
inline Scalar naive_holant(const SignatureGrid& g) {
  const int d = g.domain();
  const auto& edges = g.edges();
  std::vector<std::vector<int>> counts(g.vertex_count(), std::vector<int>(d, 0));
  std::function<Scalar(std::size_t)> rec = [&](std::size_t e) -> Scalar {
    if (e == edges.size()) {
      Scalar p = 1.0;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) p *= g.signature(static_cast<int>(v)).at(counts[v]);
      return p;
    }
    Scalar s = 0.0;
    for (int c = 0; c < d; ++c) {
      ++counts[edges[e].a.vertex][c];
      ++counts[edges[e].b.vertex][c];
      s += rec(e + 1);
      --counts[edges[e].a.vertex][c];
      --counts[edges[e].b.vertex][c];
    }
    return s;
  };
  return rec(0);
}

/// The {0,1} domain-4 signature whose contraction with e4 is
/// [[1,1,0,1],[1,0,1,1],[0,1,1,1],[1,1,1,0]].
inline SymmetricSignature rank4_example() {
  const std::vector<int> bits = {1, 0, 0, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 1, 1, 0, 1, 1, 0};
  return SymmetricSignature(4, 3, std::vector<Scalar>(bits.begin(), bits.end()));
}

inline RealMatrix rank4_example_gadget() {
  return RealMatrix{{1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}};
}

/// Orthogonal Q with Q M Q^T = diag(3, -1, 1, -1) for the gadget above.
inline RealMatrix rank4_example_q() {
  const double s = 1.0 / (2.0 * kSqrt3);
  return RealMatrix{{kSqrt3 * s, kSqrt3 * s, kSqrt3 * s, kSqrt3 * s},
                    {-s, -s, -s, 3 * s},
                    {-kSqrt6 * s, 0, kSqrt6 * s, 0},
                    {kSqrt2 * s, -2 * kSqrt2 * s, kSqrt2 * s, 0}};
}

/// The listed domain-3 triangle of the rank-4 example, in triangle
/// reading order.
inline SymmetricSignature reference_triangle() {
  return SymmetricSignature(
      3, 3,
      {-41 / (24 * kSqrt3), 1 / (4 * kSqrt2), -1 / (12 * kSqrt6), 2 / kSqrt3, 0.0, -5 / (3 * kSqrt3),
       -2 / kSqrt2, kSqrt2 / kSqrt3, 1 / kSqrt2, -kSqrt2 / (3 * kSqrt3)});
}

/// Embeds a domain-3 ternary on colors {1, 2, 3} of domain 4.
inline SymmetricSignature embed_last_three(const SymmetricSignature& t) {
  SymmetricSignature f(4, 3);
  std::vector<Scalar> e(f.entries().begin(), f.entries().end());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const MultiIndex& c = f.table().counts(i);
    if (c[0] == 0) e[i] = t.at({c[1], c[2], c[3]});
  }
  return SymmetricSignature(4, 3, e);
}

/// Orthogonal Q of the {-1,1}-valued third-form example.
inline RealMatrix third_form_q() {
  const double r = kSqrt2;
  const double a = 2 * std::sqrt(r + 2), b = 2 * std::sqrt(2 - r);
  const double c = 2 * std::sqrt(10 - 7 * r), e = 2 * std::sqrt(7 * r + 10);
  return RealMatrix{{(1 + r) / a, -1 / a, (-r - 1) / a, 1 / a},
                    {(-1 + r) / b, 1 / b, (-1 + r) / b, 1 / b},
                    {(-3 + 2 * r) / c, (1 - r) / c, (3 - 2 * r) / c, (-1 + r) / c},
                    {(-3 - 2 * r) / e, (1 + r) / e, (-3 - 2 * r) / e, (1 + r) / e}};
}

/// Q^T applied to sqrt(2 - sqrt2) (b0^3 + conj b0^3) - sqrt(2 + sqrt2) (b1^3 + conj b1^3).
inline SymmetricSignature third_form_example() {
  const Scalar i(0, 1);
  const Vector b0{1.0, i, 0.0, 0.0}, b1{0.0, 0.0, 1.0, i};
  auto pair = [](const Vector& b) { return add_scaled(tensor_power(b, 3), tensor_power(conj(b), 3), 1.0); };
  const SymmetricSignature canonical =
      add_scaled(scale(pair(b0), std::sqrt(2 - kSqrt2)), pair(b1), -std::sqrt(2 + kSqrt2));
  return apply_transform(third_form_q().transpose(), canonical);
}

/// Both vectors of the tractable strategy-3 example.
inline RealVector tractable_alpha() {
  return {0, -std::pow(2.0, 1.0 / 6), std::pow(2.0, -1.0 / 3), std::pow(2.0, -1.0 / 3)};
}
inline RealVector tractable_beta() {
  return {0, std::pow(2.0, 1.0 / 6), std::pow(2.0, -1.0 / 3), std::pow(2.0, -1.0 / 3)};
}
inline RealMatrix tractable_q() {
  const double h = 1 / kSqrt2;
  return RealMatrix{{h, -h, 0, 0}, {h, h, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
}
/// g = Q^T (alpha^3 + beta^3); <g, (1,-1,0,0)> = 0.
inline SymmetricSignature tractable_strategy3_example() {
  return apply_transform(tractable_q().transpose(),
                         add_scaled(tensor_power(tractable_alpha(), 3), tensor_power(tractable_beta(), 3), 1.0));
}

/// All entries 1 except g(0,0,0) = 0; <g, (0,1,-1,0)> = 0.
inline SymmetricSignature hard_strategy3_example() {
  std::vector<Scalar> e(20, 1.0);
  e[0] = 0.0;
  return SymmetricSignature(4, 3, e);
}
inline RealMatrix hard_strategy3_q() {
  const double h = 1 / kSqrt2;
  return RealMatrix{{0, h, -h, 0}, {1, 0, 0, 0}, {0, h, h, 0}, {0, 0, 0, 1}};
}

/// Isotropic gamma + i delta with |gamma| = |delta| and gamma _|_ delta.
inline Vector random_isotropic(Rng& rng) {
  RealVector gamma = rng.unit_vector(3);
  const double scale = rng.uniform(0.1, 10.0);
  RealVector w = rng.unit_vector(3);
  double dot = 0.0;
  for (int j = 0; j < 3; ++j) dot += w[j] * gamma[j];
  double norm = 0.0;
  for (int j = 0; j < 3; ++j) {
    w[j] -= dot * gamma[j];
    norm += w[j] * w[j];
  }
  norm = std::sqrt(norm);
  Vector beta(3);
  for (int j = 0; j < 3; ++j) beta[j] = scale * Scalar(gamma[j], w[j] / norm);
  return beta;
}

inline RealVector random_real_vector(Rng& rng, int n) {
  RealVector v(n);
  for (double& x : v) x = rng.normal();
  return v;
}

}  // namespace holant::testing
