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

#include <algorithm>

#include "holant/dichotomy_d3.hpp"
#include "holant/dichotomy_d4.hpp"
#include "holant/linalg.hpp"
#include "holant/random.hpp"
#include "holant/trials.hpp"
#include "test_support.hpp"

namespace holant {
namespace {

RealVector sorted(RealVector v) {
  std::sort(v.begin(), v.end());
  return v;
}

void expect_near_vec(const RealVector& a, const RealVector& b, double tol) {
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "component " << i;
}

void expect_sound(const SymmetricSignature& f, const Classification& c) {
  std::string why;
  EXPECT_TRUE(verify_classification(f, c, &why)) << why;
}

/// |<u, v>| / (|u| |v|).
double alignment(const RealVector& u, const RealVector& v) {
  double uv = 0, uu = 0, vv = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    uv += u[i] * v[i];
    uu += u[i] * u[i];
    vv += v[i] * v[i];
  }
  return std::abs(uv) / std::sqrt(uu * vv);
}

SymmetricSignature cubes(const RealVector& a) {
  SymmetricSignature f(static_cast<int>(a.size()), 3);
  for (std::size_t c = 0; c < a.size(); ++c) {
    RealVector e(a.size(), 0.0);
    e[c] = 1.0;
    f = add_scaled(f, tensor_power(e, 3), a[c]);
  }
  return f;
}

// Domain 3.

TEST(DetectForm1D3, AlreadyCanonical) {
  const SymmetricSignature f = cubes({2, 3, -1});
  const auto w = detect_form1_d3(f);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->form, Form::orthogonal_cubes);
  expect_near_vec(sorted(w->coefficients), {-1, 2, 3}, 1e-12);
  EXPECT_LT(witness_residual(*w, f), 1e-12);
}

TEST(DetectForm1D3, RotatedPairOfCubes) {
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const RealMatrix q = rng.orthogonal(3);
    const RealVector u{q(0, 0), q(0, 1), q(0, 2)}, v{q(1, 0), q(1, 1), q(1, 2)};
    const SymmetricSignature f = add_scaled(tensor_power(u, 3), tensor_power(v, 3), 1.0);
    const auto w = detect_form1_d3(f);
    ASSERT_TRUE(w);
    // Each cube is determined up to the sign of its vector, which flips a_c.
    RealVector mags = w->coefficients;
    for (double& a : mags) a = std::abs(a);
    expect_near_vec(sorted(mags), {0, 1, 1}, 1e-9);
    EXPECT_LT(witness_residual(*w, f), 1e-9);
  }
}

TEST(DetectForm1D3, TrickTwoAxisCondition) {
  Rng rng(32);
  for (int t = 0; t < 30; ++t) {
    const Witness planted = random_witness(rng, Form::orthogonal_cubes, 3);
    const SymmetricSignature f = reconstruct(planted);
    const auto w = detect_form1_d3(f);
    ASSERT_TRUE(w);
    for (int c = 0; c < 3; ++c) {
      if (std::abs(w->coefficients[c]) < 1e-9) continue;
      Vector u(3);
      for (int j = 0; j < 3; ++j) u[j] = w->t(c, j);
      const SymmetricSignature m = contract_unary(f, u);
      const SymmetricSignature want = scale(tensor_power(u, 2), w->coefficients[c]);
      EXPECT_LT(max_abs_diff(m, want), 1e-9 * std::max(1.0, f.max_abs()));
    }
  }
}

TEST(DetectD3, ReferenceTriangleHasNoForm) {
  const SymmetricSignature tri = testing::reference_triangle();
  EXPECT_FALSE(detect_form1_d3(tri));
  EXPECT_FALSE(detect_form2_d3(tri));
}

TEST(DetectForm2D3, ConjugatePairPlusCube) {
  const Vector b0{1.0, Scalar(0, 1), 0.0};
  const SymmetricSignature f = add_scaled(add_scaled(tensor_power(b0, 3), tensor_power(conj(b0), 3), 1.0),
                                          tensor_power(RealVector{0, 0, 1}, 3), 5.0);
  const auto w = detect_form2_d3(f);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->form, Form::conjugate_pair);
  ASSERT_EQ(w->coefficients.size(), 3u);
  // c T f = e (b0^3 + conj b0^3) + l e3^3 with f = pair + 5 e3^3: l / e = 5.
  EXPECT_NEAR(w->coefficients[1] / w->coefficients[0], 5.0, 1e-9);
  EXPECT_LT(witness_residual(*w, f), 1e-12);
}

TEST(DetectForm2D3, SingleCubeHasZeroPair) {
  const SymmetricSignature f = cubes({0, 0, 7});
  const auto w = detect_form2_d3(f);
  ASSERT_TRUE(w);
  EXPECT_NEAR(w->coefficients[0], 0.0, 1e-12);
  EXPECT_LT(witness_residual(*w, f), 1e-12);
  EXPECT_TRUE(detect_form1_d3(f));
}

TEST(DetectForm2D3, EdgeSpanMembership) {
  // (2, 0, -2, 0) on the first two colors is 2 Re b0^3, inside the span.
  EXPECT_TRUE(detect_form2_d3(SymmetricSignature(3, 3, {2, 0, 0, -2, 0, 0, 0, 0, 0, 0})));
  // (1, 1, 0, 0) on that edge is outside the span and is no single cube.
  EXPECT_FALSE(detect_form2_d3(SymmetricSignature(3, 3, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0})));
}

TEST(ClassifyD3, Examples) {
  const Classification zero = classify_d3(SymmetricSignature(3, 3));
  EXPECT_EQ(zero.verdict, Verdict::tractable);
  expect_sound(SymmetricSignature(3, 3), zero);

  const Classification hard = classify_d3(testing::reference_triangle());
  EXPECT_EQ(hard.verdict, Verdict::hard);
  EXPECT_GT(hard.residual, tolerances().gray * tolerances().eq);
  expect_sound(testing::reference_triangle(), hard);

  const RealVector a = testing::tractable_alpha(), b = testing::tractable_beta();
  const SymmetricSignature r = add_scaled(tensor_power(RealVector{a[1], a[2], a[3]}, 3),
                                          tensor_power(RealVector{b[1], b[2], b[3]}, 3), 1.0);
  const Classification ok = classify_d3(r);
  EXPECT_EQ(ok.verdict, Verdict::tractable);
  expect_sound(r, ok);
}

TEST(ClassifyD3, OrthogonalAndScalingInvariance) {
  Rng rng(33);
  for (int t = 0; t < 60; ++t) {
    SymmetricSignature f = random_real_signature(rng, 3, 3);
    if (t % 3 == 0) f = reconstruct(random_witness(rng, t % 2 ? Form::conjugate_pair : Form::orthogonal_cubes, 3));
    const Verdict v = classify_d3(f).verdict;
    EXPECT_EQ(classify_d3(apply_transform(rng.orthogonal(3), f)).verdict, v);
    const double c = (rng.coin() ? 1 : -1) * rng.uniform(0.1, 10.0);
    EXPECT_EQ(classify_d3(scale(f, c)).verdict, v);
  }
}

TEST(ClassifyD2, Examples) {
  EXPECT_EQ(classify_d2(SymmetricSignature(2, 3, {1, 0, 0, 1})).verdict, Verdict::tractable);
  EXPECT_EQ(classify_d2(SymmetricSignature(2, 3)).verdict, Verdict::tractable);
  Rng rng(34);
  for (int t = 0; t < 10; ++t) {
    const Vector b{1.0, Scalar(0, 1)};
    const SymmetricSignature pair = add_scaled(tensor_power(b, 3), tensor_power(conj(b), 3), 1.0);
    const SymmetricSignature f = apply_transform(rng.orthogonal(2), pair);
    const Classification c = classify_d2(f);
    EXPECT_EQ(c.verdict, Verdict::tractable);
    expect_sound(f, c);
  }
  const Classification hard = classify_d2(SymmetricSignature::exact_one(3));
  EXPECT_EQ(hard.verdict, Verdict::hard);
}

// Domain 4.

TEST(DetectD4, TwoCubes) {
  const SymmetricSignature f = cubes({1, 1, 0, 0});
  const auto w = detect_tractable_d4(f);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->form, Form::d4_form1);
  expect_near_vec(sorted(w->coefficients), {0, 0, 1, 1}, 1e-12);
}

TEST(DetectD4, ThirdFormExampleIsPlusMinusOne) {
  const SymmetricSignature f = testing::third_form_example();
  EXPECT_LT(orthogonality_residual(testing::third_form_q()), 1e-12);
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_NEAR(std::abs(f[i]), 1.0, 1e-6) << "entry " << i;
  const auto w = detect_tractable_d4(f);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->form, Form::d4_form3);
  EXPECT_LT(witness_residual(*w, f), 1e-9);
}

TEST(DetectD4, OrthogonalAlphaBeta) {
  const RealVector a = testing::tractable_alpha(), b = testing::tractable_beta();
  double dot = 0.0;
  for (int j = 0; j < 4; ++j) dot += a[j] * b[j];
  EXPECT_NEAR(dot, 0.0, 1e-12);
  const SymmetricSignature f = add_scaled(tensor_power(a, 3), tensor_power(b, 3), 1.0);
  const auto w = detect_tractable_d4(f);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->form, Form::d4_form1);
}

TEST(StrategyVanishingUnary, HardExample) {
  const SymmetricSignature g = testing::hard_strategy3_example();
  EXPECT_EQ(contract_unary(g, Vector{0.0, 1.0, -1.0, 0.0}).max_abs(), 0.0);
  const auto s = strategy_vanishing_unary(g);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->verdict, Verdict::hard);
  ASSERT_FALSE(s->chain.empty());
  EXPECT_EQ(s->chain.front().kind, StepKind::vanishing_unary);
  // The kernel of u -> <g, u> is not one-dimensional; any annihilating unary will do.
  EXPECT_LT(contract_unary(g, to_complex(s->chain.front().unary)).max_abs(), 1e-9);
  std::string why;
  EXPECT_TRUE(verify_certificate(g, s->chain, &why)) << why;
}

TEST(StrategyVanishingUnary, ReferenceTransformConfinesToThreeColors) {
  const SymmetricSignature qg = apply_transform(testing::hard_strategy3_q(), testing::hard_strategy3_example());
  for (std::size_t i = 0; i < qg.size(); ++i)
    if (qg.table().counts(i)[0] > 0) EXPECT_LT(std::abs(qg[i]), 1e-12);
  EXPECT_EQ(classify_d3(restrict_to_subdomain(qg, {1, 2, 3})).verdict, Verdict::hard);
}

TEST(StrategyVanishingUnary, TractableExample) {
  const SymmetricSignature g = testing::tractable_strategy3_example();
  const auto s = strategy_vanishing_unary(g);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->verdict, Verdict::tractable);
  EXPECT_LT(contract_unary(g, to_complex(s->chain.front().unary)).max_abs(), 1e-9);
}

TEST(StrategyVanishingUnary, SingleCube) {
  const auto s = strategy_vanishing_unary(cubes({1, 0, 0, 0}));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->verdict, Verdict::tractable);
  EXPECT_NEAR(s->chain.front().unary[0], 0.0, 1e-12);
}

TEST(StrategyDomainSeparation, CubePlusTriangle) {
  const SymmetricSignature tri = testing::embed_last_three(testing::reference_triangle());
  const SymmetricSignature f = add_scaled(tri, cubes({1, 0, 0, 0}), 5.0);
  const auto s = strategy_domain_separation(f);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->verdict, Verdict::hard);
  EXPECT_EQ(s->chain.front().kind, StepKind::domain_separation);
  EXPECT_NEAR(s->chain.front().constant, 5.0, 1e-9);
}

TEST(StrategyDomainSeparation, FourCubesIsTractableRemainder) {
  const auto s = strategy_domain_separation(cubes({1, 1, 1, 1}));
  ASSERT_TRUE(s);
  EXPECT_EQ(s->verdict, Verdict::tractable);
}

TEST(StrategyDomainSeparation, PlantedUnderRandomRotation) {
  Rng rng(35);
  const SymmetricSignature tri = testing::embed_last_three(testing::reference_triangle());
  const SymmetricSignature canonical = add_scaled(tri, cubes({1, 0, 0, 0}), 2.0);
  for (int t = 0; t < 5; ++t) {
    const RealMatrix q = rng.orthogonal(4);
    const SymmetricSignature f = apply_transform(q.transpose(), canonical);
    const auto s = strategy_domain_separation(f);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->verdict, Verdict::hard);
    EXPECT_NEAR(alignment(s->chain.front().unary, {q(0, 0), q(0, 1), q(0, 2), q(0, 3)}), 1.0, 1e-9);
  }
}

TEST(StrategyRank, CoordinateProbesOnFourCubesGiveNothing) {
  const std::vector<RealVector> probes = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
  const SymmetricSignature f = cubes({1, 1, 1, 1});
  EXPECT_FALSE(strategy_rank2(f, probes));
  EXPECT_FALSE(strategy_rank3(f, probes));
}

TEST(StrategyRank, RankTwoGadgetWithHardBooleanRestriction) {
  // <f, e1> = diag(0, 0, 1, 1) and the restriction to colors {2, 3} is
  // Exact-One.
  SymmetricSignature f(4, 3);
  std::vector<Scalar> e(f.entries().begin(), f.entries().end());
  const IndexTable& tab = index_table(4, 3);
  e[tab.rank({1, 0, 2, 0})] = 1.0;
  e[tab.rank({1, 0, 0, 2})] = 1.0;
  e[tab.rank({0, 0, 2, 1})] = 1.0;
  f = SymmetricSignature(4, 3, e);
  const std::vector<RealVector> probes = {{1, 0, 0, 0}};
  const auto s = strategy_rank2(f, probes);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->verdict, Verdict::hard);
  std::string why;
  EXPECT_TRUE(verify_certificate(f, s->chain, &why)) << why;
}

TEST(StrategyRank, PlantedRankThreeGadget) {
  Rng rng(36);
  const SymmetricSignature tri = testing::embed_last_three(testing::reference_triangle());
  for (int t = 0; t < 5; ++t) {
    const SymmetricSignature f = apply_transform(rng.orthogonal(4), tri);
    const auto s = strategy_rank3(f);
    ASSERT_TRUE(s);
    EXPECT_EQ(s->verdict, Verdict::hard);
    std::string why;
    EXPECT_TRUE(verify_certificate(f, s->chain, &why)) << why;
  }
}

TEST(StrategyRank4, WorkedExample) {
  const SymmetricSignature g = testing::rank4_example();
  const std::vector<RealVector> probes = {{0, 0, 0, 1}};
  const auto s = strategy_rank4(g, probes);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->verdict, Verdict::hard);
  const auto step = std::find_if(s->chain.begin(), s->chain.end(),
                                 [](const CertificateStep& x) { return x.kind == StepKind::rank4_interpolation; });
  ASSERT_NE(step, s->chain.end());
  expect_near_vec(sorted(step->eigenvalues), {-1, -1, 1, 3}, 1e-9);
  std::string why;
  EXPECT_TRUE(verify_certificate(g, s->chain, &why)) << why;
}

TEST(RestrictToSubdomain, Examples) {
  Rng rng(37);
  const SymmetricSignature f = random_real_signature(rng, 4, 3);
  const SymmetricSignature r = restrict_to_subdomain(f, {1, 2, 3});
  for (std::size_t i = 0; i < r.size(); ++i) {
    const MultiIndex& c = r.table().counts(i);
    EXPECT_EQ(r[i], f.at({0, c[0], c[1], c[2]}));
  }
  const RealVector v{0, 0.5, -2, 3};
  EXPECT_LT(max_abs_diff(restrict_to_subdomain(tensor_power(v, 3), {1, 2, 3}),
                         tensor_power(RealVector{0.5, -2, 3}, 3)),
            1e-14);
}

TEST(ClassifyD4, Examples) {
  const Classification zero = classify_d4(SymmetricSignature(4, 3));
  EXPECT_EQ(zero.verdict, Verdict::tractable);
  EXPECT_EQ(zero.form(), Form::d4_form1);

  const SymmetricSignature g = testing::rank4_example();
  const Classification hard = classify_d4(g);
  EXPECT_EQ(hard.verdict, Verdict::hard);
  expect_sound(g, hard);

  const SymmetricSignature t = testing::tractable_strategy3_example();
  const Classification ok = classify_d4(t);
  EXPECT_EQ(ok.verdict, Verdict::tractable);
  expect_sound(t, ok);

  const SymmetricSignature h = testing::hard_strategy3_example();
  const Classification h3 = classify_d4(h);
  EXPECT_EQ(h3.verdict, Verdict::hard);
  expect_sound(h, h3);
}

TEST(ClassifyD4, PermutationInvarianceOnZeroOneSamples) {
  Rng rng(38);
  std::vector<RealMatrix> perms;
  std::vector<int> p = {0, 1, 2, 3};
  do {
    RealMatrix m(4, 4);
    for (int i = 0; i < 4; ++i) m(i, p[i]) = 1.0;
    perms.push_back(m);
  } while (std::next_permutation(p.begin(), p.end()));
  for (int t = 0; t < 15; ++t) {
    std::vector<Scalar> e(20);
    for (auto& x : e) x = rng.coin() ? 1.0 : 0.0;
    const SymmetricSignature f(4, 3, e);
    const Verdict v = classify_d4(f).verdict;
    for (const RealMatrix& m : perms) EXPECT_EQ(classify_d4(apply_transform(m, f)).verdict, v);
  }
}

TEST(ClassifyD4, PlantedTractableRoundTrip) {
  Rng rng(39);
  for (Form form : {Form::d4_form1, Form::d4_form2, Form::d4_form3}) {
    for (int t = 0; t < 20; ++t) {
      const SymmetricSignature f = reconstruct(random_witness(rng, form, 4));
      const Classification c = classify_d4(f);
      EXPECT_EQ(c.verdict, Verdict::tractable);
      expect_sound(f, c);
    }
  }
}

}  // namespace
}  // namespace holant
