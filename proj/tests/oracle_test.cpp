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

#include <gtest/gtest.h>

#include <array>

#include "holant/oracle.hpp"
#include "holant/random.hpp"
#include "holant/trials.hpp"
#include "test_support.hpp"

namespace holant {
namespace {

/// Proper 3-edge-colorings of K4, counted on the graph itself.
int k4_edge_colorings() {
  const std::array<std::array<int, 2>, 6> edges = {{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
  int count = 0;
  for (int code = 0; code < 729; ++code) {
    std::array<int, 6> color;
    for (int e = 0, c = code; e < 6; ++e, c /= 3) color[e] = c % 3;
    bool ok = true;
    for (int e = 0; e < 6 && ok; ++e)
      for (int f = e + 1; f < 6 && ok; ++f) {
        const bool adjacent = edges[e][0] == edges[f][0] || edges[e][0] == edges[f][1] ||
                              edges[e][1] == edges[f][0] || edges[e][1] == edges[f][1];
        if (adjacent && color[e] == color[f]) ok = false;
      }
    count += ok;
  }
  return count;
}

TEST(BruteForce, K4ExactOneCountsPerfectMatchings) {
  const SignatureGrid g = testing::k4(SymmetricSignature::exact_one(3));
  EXPECT_EQ(brute_force_holant(g), Scalar(3.0));
  EXPECT_EQ(testing::naive_holant(g), Scalar(3.0));
}

TEST(BruteForce, K4AllDistinctCountsEdgeColorings) {
  ASSERT_EQ(k4_edge_colorings(), 6);
  const SignatureGrid g = testing::k4(SymmetricSignature::all_distinct(3, 3));
  EXPECT_EQ(brute_force_holant(g), Scalar(6.0));
}

TEST(BruteForce, SingleEdgeIsBilinearDot) {
  const Vector u{Scalar(1, 2), 3.0, -1.0}, v{2.0, Scalar(0, -1), 4.0};
  SignatureGrid g(3);
  g.add_vertex(SymmetricSignature::unary(u));
  g.add_vertex(SymmetricSignature::unary(v));
  g.connect(0, 0, 1, 0);
  EXPECT_LT(std::abs(brute_force_holant(g) - bilinear_dot(u, v)), 1e-14);
}

TEST(BruteForce, RejectsDanglingAndOversized) {
  SignatureGrid g(2);
  g.add_vertex(SymmetricSignature::exact_one(3));
  g.add_dangling(0, 0);
  g.connect(0, 1, 0, 2);
  EXPECT_THROW(brute_force_holant(g), Error);
  SignatureGrid big(4);
  for (int v = 0; v < 10; ++v) big.add_vertex(SymmetricSignature::equality(4, 3));
  for (int v = 0; v < 10; v += 2) {
    big.connect(v, 0, v + 1, 0);
    big.connect(v, 1, v + 1, 1);
    big.connect(v, 2, v + 1, 2);
  }
  EXPECT_THROW(brute_force_holant(big), Error);
}

TEST(BruteForce, MatchesNaiveOnRandomGrids) {
  Rng rng(21);
  for (int t = 0; t < 100; ++t) {
    const int d = 2 + t % 3;
    const RandomGrid rg = random_grid(rng, d, 1 + t % 7, 0, 1, SymmetricSignature(d, 1),
                                      [&](int arity) { return random_real_signature(rng, d, arity); });
    const Scalar a = brute_force_holant(rg.grid), b = testing::naive_holant(rg.grid);
    EXPECT_LT(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(b)));
  }
}

TEST(BruteForce, ThreadCountIndependent) {
  Rng rng(22);
  const RandomGrid rg = random_grid(rng, 4, 9, 0, 1, SymmetricSignature(4, 1),
                                    [&](int arity) { return random_real_signature(rng, 4, arity); });
  const Scalar one = brute_force_holant(rg.grid, {.threads = 1});
  for (unsigned threads : {2u, 3u, 8u}) EXPECT_EQ(brute_force_holant(rg.grid, {.threads = threads}), one);
}

TEST(Invariance, OrthogonalHolographicTransform) {
  Rng rng(23);
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + t % 3;
    const RandomGrid rg = random_grid(rng, d, 2 + t % 6, 0, 1, SymmetricSignature(d, 1),
                                      [&](int arity) { return random_real_signature(rng, d, arity); });
    const Scalar a = brute_force_holant(rg.grid);
    const Scalar b = brute_force_holant(transform_grid(rg.grid, rng.orthogonal(d)));
    EXPECT_LT(relative_error(b, a, magnitude_scale(rg.grid)), 1e-9);
  }
}

TEST(Invariance, ColorPermutation) {
  Rng rng(24);
  const RealMatrix p{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
  for (int t = 0; t < 30; ++t) {
    const RandomGrid rg = random_grid(rng, 3, 2 + t % 6, 0, 1, SymmetricSignature(3, 1),
                                      [&](int arity) { return random_real_signature(rng, 3, arity); });
    const Scalar a = brute_force_holant(rg.grid), b = brute_force_holant(transform_grid(rg.grid, p));
    EXPECT_LT(std::abs(a - b), 1e-12 * magnitude_scale(rg.grid));
  }
}

TEST(Invariance, DisjointUnionMultiplies) {
  Rng rng(25);
  for (int t = 0; t < 30; ++t) {
    auto sig = [&](int arity) { return random_real_signature(rng, 3, arity); };
    const RandomGrid a = random_grid(rng, 3, 1 + t % 4, 0, 1, SymmetricSignature(3, 1), sig);
    const RandomGrid b = random_grid(rng, 3, 1 + t % 3, 0, 1, SymmetricSignature(3, 1), sig);
    const Scalar ab = brute_force_holant(disjoint_union(a.grid, b.grid));
    const Scalar want = brute_force_holant(a.grid) * brute_force_holant(b.grid);
    EXPECT_LT(std::abs(ab - want), 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST(EvaluateDangling, SingleVertexIsItsSignature) {
  const SymmetricSignature f = testing::rank4_example();
  SignatureGrid g(4);
  g.add_vertex(f);
  for (int p = 0; p < 3; ++p) g.add_dangling(0, p);
  EXPECT_LT(max_abs_diff(evaluate_dangling(g).to_symmetric(), f), 1e-15);
}

TEST(EvaluateDangling, UnaryContraction) {
  Rng rng(26);
  const SymmetricSignature f = random_real_signature(rng, 3, 3);
  const Vector u{0.5, -2.0, 1.5};
  SignatureGrid g(3);
  g.add_vertex(f);
  g.add_vertex(SymmetricSignature::unary(u));
  g.connect(0, 0, 1, 0);
  g.add_dangling(0, 1);
  g.add_dangling(0, 2);
  EXPECT_LT(max_abs_diff(evaluate_dangling(g).to_symmetric(), contract_unary(f, u)), 1e-14);
}

TEST(EvaluateDangling, ChainedBinariesMultiply) {
  const RealMatrix h{{1, 2, 0}, {2, -1, 3}, {0, 3, 0.5}};
  SignatureGrid g(3);
  g.add_vertex(SymmetricSignature::from_matrix(h));
  g.add_vertex(SymmetricSignature::from_matrix(h));
  g.connect(0, 1, 1, 0);
  g.add_dangling(0, 0);
  g.add_dangling(1, 1);
  const ComplexMatrix got = evaluate_dangling(g).as_matrix();
  EXPECT_LT(max_abs_diff(got, to_complex(h * h)), 1e-14);
}

TEST(Stratified, UnaryOnEdge) {
  const Vector v{2.0, -3.0, 7.0};
  SignatureGrid g(3);
  g.add_vertex(SymmetricSignature::unary(Vector{1.0, 1.0, 1.0}));
  g.add_vertex(SymmetricSignature::unary(v));
  g.connect(0, 0, 1, 0);
  const StratifiedTable st = stratified_holant(g, {0});
  ASSERT_EQ(st.rho.size(), 3u);
  EXPECT_EQ(st.rho.at({1, 0, 0}), v[0]);
  EXPECT_EQ(st.rho.at({0, 1, 0}), v[1]);
  EXPECT_EQ(st.rho.at({0, 0, 1}), v[2]);
}

TEST(Stratified, RestrictedEqualityHasNoFirstColor) {
  Rng rng(27);
  const SymmetricSignature eq_gbw = SymmetricSignature::from_matrix(RealMatrix::diagonal({0, 1, 1, 1}));
  for (int t = 0; t < 10; ++t) {
    const RandomGrid rg = random_grid(rng, 4, 3 + t % 3, 1 + t % 2, 2, eq_gbw,
                                      [&](int arity) { return random_real_signature(rng, 4, arity); });
    const StratifiedTable st = stratified_holant(rg.grid, rg.marked);
    const IndexTable& tab = index_table(4, 2);
    for (const auto& [profile, rho] : st.rho)
      EXPECT_EQ(profile[tab.rank({2, 0, 0, 0})], 0) << "first color reached a marked vertex";
    EXPECT_LT(std::abs(st.reconstruct() - brute_force_holant(rg.grid)),
              1e-10 * magnitude_scale(rg.grid));
  }
}

TEST(Stratified, ReconstructsBruteForce) {
  Rng rng(28);
  for (int t = 0; t < 40; ++t) {
    const int d = 3 + t % 2;
    const RandomGrid rg = random_grid(rng, d, 3 + t % 4, 1 + t % 3, 1 + t % 2,
                                      random_real_signature(rng, d, 1 + t % 2),
                                      [&](int arity) { return random_real_signature(rng, d, arity); });
    const StratifiedTable st = stratified_holant(rg.grid, rg.marked);
    EXPECT_LT(std::abs(st.reconstruct() - brute_force_holant(rg.grid)), 1e-10 * magnitude_scale(rg.grid));
  }
}

}  // namespace
}  // namespace holant
