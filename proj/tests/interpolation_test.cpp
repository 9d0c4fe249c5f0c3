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

#include "holant/interpolation.hpp"
#include "holant/linalg.hpp"
#include "holant/oracle.hpp"
#include "holant/random.hpp"
#include "holant/trials.hpp"
#include "test_support.hpp"

namespace holant {
namespace {

SymmetricSignature binary(const RealMatrix& m) { return SymmetricSignature::from_matrix(m); }

/// Two ternary vertices joined directly once and through two marked binary
/// vertices: A0-X0, X1-B0, A1-B1, A2-Y0, Y1-B2. Marked: X = 2, Y = 3.
SignatureGrid two_occurrence_grid(const SymmetricSignature& a, const SymmetricSignature& b,
                                  const SymmetricSignature& placeholder) {
  SignatureGrid g(a.domain());
  g.add_vertex(a);
  g.add_vertex(b);
  g.add_vertex(placeholder);
  g.add_vertex(placeholder);
  g.connect(0, 0, 2, 0);
  g.connect(2, 1, 1, 0);
  g.connect(0, 1, 1, 1);
  g.connect(0, 2, 3, 0);
  g.connect(3, 1, 1, 2);
  return g;
}

SignatureGrid with_marked(SignatureGrid g, const std::vector<int>& marked, const SymmetricSignature& s) {
  for (int v : marked) g.set_signature(v, s);
  return g;
}

TEST(CheckCondition, Examples) {
  const ConditionResult a = check_condition(Variant::eq3_3, {3, 1, -1, -1}, 12);
  EXPECT_TRUE(a.holds);
  const ConditionResult b = check_condition(Variant::eq3_3, {1, 1, 2, 2}, 12);
  EXPECT_FALSE(b.holds);
  EXPECT_EQ(b.exponents, (std::vector<int>{1, 1, 0, 0}));
  EXPECT_TRUE(check_condition(Variant::eq3_4, {2, 3, 5, 7}, 12).holds);
  EXPECT_TRUE(check_condition(Variant::eq3_3, {2, 3, 5, 7}, 12).holds);
}

TEST(CheckCondition, PlantedViolationFoundByBoundedSearch) {
  // sqrt6^2 = 2 * 3 with s = 2 = a + b.
  const RealVector l = {std::sqrt(6.0), 2, 3, 0.7};
  const ConditionResult r = check_condition(Variant::eq3_3, l, 12);
  EXPECT_FALSE(r.holds);
  EXPECT_FALSE(r.exact);
  ASSERT_EQ(r.exponents.size(), 4u);
  const auto& x = r.exponents;
  EXPECT_GT(x[0], 0);
  EXPECT_EQ(x[1] + x[2] + x[3], x[0]);
  const double lhs = std::pow(l[0], x[0]);
  const double rhs = std::pow(l[1], x[1]) * std::pow(l[2], x[2]) * std::pow(l[3], x[3]);
  EXPECT_NEAR(lhs / rhs, 1.0, 1e-12);
}

TEST(CheckCondition, MonotoneInBound) {
  Rng rng(41);
  for (int t = 0; t < 200; ++t) {
    RealVector l(4);
    for (double& x : l) x = (rng.coin() ? 1 : -1) * rng.uniform(0.2, 3.0);
    if (t % 4 == 0) l[1] = l[0] * l[0] / l[2];  // plant l0^2 = l1 l2
    for (Variant v : {Variant::eq3_3, Variant::eq3_4}) {
      bool previous = false;
      for (int bound = 12; bound >= 1; --bound) {
        const bool holds = check_condition(v, l, bound).holds;
        if (previous) EXPECT_TRUE(holds) << "bound " << bound;
        previous = previous || holds;
      }
    }
  }
}

TEST(ChainPower, Examples) {
  EXPECT_LT(max_abs_diff(chain_power(RealMatrix::diagonal({0, 2, -3, 5}), 3),
                         RealMatrix::diagonal({0, 8, -27, 125})),
            1e-12);
  const RealMatrix m = testing::rank4_example_gadget();
  EXPECT_EQ(max_abs_diff(chain_power(m, 1), m), 0.0);
  const EigenResult e = eig_sym(chain_power(m, 2));
  const RealVector want = {9, 1, 1, 1};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(e.lambdas[i], want[i], 1e-12);
}

TEST(RestrictedEquality, SingleOccurrence) {
  Rng rng(42);
  const SymmetricSignature a = random_real_signature(rng, 4, 3), b = random_real_signature(rng, 4, 3);
  SignatureGrid g = two_occurrence_grid(a, b, binary(RealMatrix::diagonal({0, 2, 3, 5})));
  // Y becomes an ordinary binary vertex; only X is marked.
  g.set_signature(3, random_real_signature(rng, 4, 2));
  const InterpolationResult r =
      interpolate_restricted_equality(g, {2}, RealMatrix::diagonal({0, 2, 3, 5}), Variant::eq3);
  const Scalar direct = brute_force_holant(with_marked(g, {2}, binary(RealMatrix::diagonal({0, 1, 1, 1}))));
  EXPECT_LT(relative_error(r.value, direct, magnitude_scale(g)), 1e-9);
  EXPECT_EQ(r.plan.m, 1);
}

TEST(RestrictedEquality, EqualityItselfMergesToOneColumn) {
  Rng rng(43);
  const SymmetricSignature a = random_real_signature(rng, 4, 3), b = random_real_signature(rng, 4, 3);
  const RealMatrix h = RealMatrix::diagonal({0, 1, 1, 1});
  const SignatureGrid g = two_occurrence_grid(a, b, binary(h));
  const InterpolationResult r = interpolate_restricted_equality(g, {2, 3}, h, Variant::eq3);
  EXPECT_EQ(r.plan.distinct_nodes.size(), 1u);
  EXPECT_LT(relative_error(r.value, brute_force_holant(g), magnitude_scale(g)), 1e-12);
}

TEST(RestrictedEquality, NoOccurrences) {
  Rng rng(44);
  const SymmetricSignature a = random_real_signature(rng, 4, 3), b = random_real_signature(rng, 4, 3);
  const SignatureGrid g = two_occurrence_grid(a, b, random_real_signature(rng, 4, 2));
  const InterpolationResult r =
      interpolate_restricted_equality(g, {}, RealMatrix::diagonal({0, 2, 3, 5}), Variant::eq3);
  EXPECT_TRUE(r.plan.compositions.empty() || r.plan.m == 0);
  EXPECT_EQ(r.value, brute_force_holant(g));
}

TEST(RestrictedEquality, RankTwoVariant) {
  Rng rng(45);
  const SymmetricSignature a = random_real_signature(rng, 4, 3), b = random_real_signature(rng, 4, 3);
  const RealMatrix h = RealMatrix::diagonal({0, 0, -2, 3});
  const SignatureGrid g = two_occurrence_grid(a, b, binary(h));
  const InterpolationResult r = interpolate_restricted_equality(g, {2, 3}, h, Variant::eq3_2);
  const Scalar direct = brute_force_holant(with_marked(g, {2, 3}, binary(RealMatrix::diagonal({0, 0, 1, 1}))));
  EXPECT_LT(relative_error(r.value, direct, magnitude_scale(g)), 1e-9);
}

TEST(RestrictedEquality, RejectsWrongShape) {
  Rng rng(46);
  const SymmetricSignature a = random_real_signature(rng, 4, 3), b = random_real_signature(rng, 4, 3);
  const SignatureGrid g = two_occurrence_grid(a, b, binary(RealMatrix::identity(4)));
  EXPECT_THROW(interpolate_restricted_equality(g, {2, 3}, RealMatrix::identity(4), Variant::eq3), Error);
}

TEST(Rank4, WorkedExampleGadget) {
  Rng rng(47);
  const RealMatrix m = testing::rank4_example_gadget();
  const SymmetricSignature a = random_real_signature(rng, 4, 3), b = random_real_signature(rng, 4, 3);
  const SignatureGrid g = two_occurrence_grid(a, b, binary(m));
  const InterpolationResult r = interpolate_from_rank4(g, {2, 3}, m, Variant::eq3_3, {0});
  const SignatureGrid direct_grid =
      with_marked(transform_grid(g, r.q), {2, 3}, binary(RealMatrix::diagonal({0, 1, 1, 1})));
  EXPECT_LT(relative_error(r.value, brute_force_holant(direct_grid), magnitude_scale(direct_grid)), 1e-9);
  EXPECT_NEAR(std::abs(r.q(0, 0)), 0.5, 1e-12);  // eigenvector of 3 is (1,1,1,1)/2
}

TEST(Rank4, PrimeDiagonalPair) {
  Rng rng(48);
  const RealMatrix h = RealMatrix::diagonal({2, 3, 5, 7});
  const SymmetricSignature a = random_real_signature(rng, 4, 3), b = random_real_signature(rng, 4, 3);
  const SignatureGrid g = two_occurrence_grid(a, b, binary(h));
  // Descending order is (7, 5, 3, 2): indices 3 and 2 distinguish 2 and 3.
  const InterpolationResult r = interpolate_from_rank4(g, {2, 3}, h, Variant::eq3_4, {3, 2});
  const SignatureGrid direct_grid =
      with_marked(transform_grid(g, r.q), {2, 3}, binary(RealMatrix::diagonal({0, 0, 1, 1})));
  EXPECT_LT(relative_error(r.value, brute_force_holant(direct_grid), magnitude_scale(direct_grid)), 1e-9);
}

TEST(Rank4, RefusesFailedCondition) {
  Rng rng(49);
  const RealMatrix h = RealMatrix::diagonal({1, 1, 2, 2});
  const SymmetricSignature a = random_real_signature(rng, 4, 3), b = random_real_signature(rng, 4, 3);
  const SignatureGrid g = two_occurrence_grid(a, b, binary(h));
  EXPECT_THROW(interpolate_from_rank4(g, {2, 3}, h, Variant::eq3_3, {2}), Error);
}

TEST(Realify, SingleEdgeIsExact) {
  const Vector u{Scalar(1, 1), 2.0, Scalar(0.5, -1)};
  const Vector v{3.0, -1.0, 2.0};
  SignatureGrid g(3);
  g.add_vertex(SymmetricSignature::unary(u));
  g.add_vertex(SymmetricSignature::unary(v));
  g.connect(0, 0, 1, 0);
  const InterpolationResult r = realify_unaries(g, {0});
  EXPECT_LT(std::abs(r.value - bilinear_dot(u, v)), 1e-12);
}

TEST(Realify, TwoComplexUnaries) {
  Rng rng(50);
  const Vector u{Scalar(1, 1), 2.0, 1.0};
  for (int t = 0; t < 10; ++t) {
    SignatureGrid g(3);
    g.add_vertex(random_real_signature(rng, 3, 3));
    g.add_vertex(SymmetricSignature::unary(u));
    g.add_vertex(SymmetricSignature::unary(u));
    g.add_vertex(random_real_signature(rng, 3, 1));
    g.connect(0, 0, 1, 0);
    g.connect(0, 1, 2, 0);
    g.connect(0, 2, 3, 0);
    const InterpolationResult r = realify_unaries(g, {1, 2});
    EXPECT_LT(relative_error(r.value, brute_force_holant(g), magnitude_scale(g)), 1e-9);
  }
}

TEST(Realify, RealUnaryIsUnchanged) {
  Rng rng(51);
  const RandomGrid rg = random_grid(rng, 3, 4, 2, 1, SymmetricSignature::unary(Vector{0.3, -1.0, 2.0}),
                                    [&](int arity) { return random_real_signature(rng, 3, arity); });
  const InterpolationResult r = realify_unaries(rg.grid, rg.marked);
  EXPECT_LT(relative_error(r.value, brute_force_holant(rg.grid), magnitude_scale(rg.grid)), 1e-9);
}

TEST(EvalTractable, FourCubesOnK4) {
  const Witness w{Form::d4_form1, RealMatrix::identity(4), {1, 1, 1, 1}};
  const SignatureGrid g = testing::k4(reconstruct(w));
  EXPECT_LT(std::abs(eval_tractable(w, g) - Scalar(4.0)), 1e-12);
  EXPECT_LT(std::abs(brute_force_holant(g) - Scalar(4.0)), 1e-12);
}

TEST(EvalTractable, WeightedCubesOnConnectedGrids) {
  const Witness w{Form::d4_form1, RealMatrix::identity(4), {2, 3, 0, 0}};
  const SymmetricSignature f = reconstruct(w);
  // Theta graph: two vertices joined by three parallel edges (n = 2).
  SignatureGrid theta(4);
  theta.add_vertex(f);
  theta.add_vertex(f);
  for (int p = 0; p < 3; ++p) theta.connect(0, p, 1, p);
  EXPECT_LT(std::abs(eval_tractable(w, theta) - Scalar(4.0 + 9.0)), 1e-12);
  EXPECT_LT(std::abs(brute_force_holant(theta) - Scalar(13.0)), 1e-12);
  // K4 (n = 4).
  const SignatureGrid k4 = testing::k4(f);
  EXPECT_LT(std::abs(eval_tractable(w, k4) - Scalar(16.0 + 81.0)), 1e-12);
  EXPECT_LT(std::abs(brute_force_holant(k4) - Scalar(97.0)), 1e-10);
}

TEST(EvalTractable, ConjugatePairOnTriangle) {
  const Witness w{Form::conjugate_pair, RealMatrix::identity(3), {1, 0, 1}};
  const SymmetricSignature f = reconstruct(w);
  Rng rng(52);
  SignatureGrid g(3);
  for (int v = 0; v < 3; ++v) g.add_vertex(f);
  g.connect(0, 0, 1, 1);
  g.connect(1, 0, 2, 1);
  g.connect(2, 0, 0, 1);
  for (int v = 0; v < 3; ++v) {
    const int u = g.add_vertex(random_real_signature(rng, 3, 1));
    g.connect(v, 2, u, 0);
  }
  EXPECT_LT(std::abs(eval_tractable(w, g) - brute_force_holant(g)), 1e-10 * magnitude_scale(g));
}

TEST(EvalTractable, RejectsForeignVertices) {
  const Witness w{Form::d4_form1, RealMatrix::identity(4), {1, 1, 1, 1}};
  SignatureGrid g = testing::k4(reconstruct(w));
  g.set_signature(0, SymmetricSignature::all_distinct(4, 3));
  EXPECT_THROW(eval_tractable(w, g), Error);
}

class LemmaTrials : public ::testing::TestWithParam<Lemma> {};

TEST_P(LemmaTrials, InterpolatedMatchesDirect) {
  const TrialReport r = interpolation_trials(GetParam(), 60 + static_cast<int>(GetParam()), 25);
  EXPECT_TRUE(r.ok()) << r.passed << "/" << r.trials << (r.failures.empty() ? "" : ": " + r.failures.front());
  EXPECT_LE(r.max_error, 1e-6);
}

INSTANTIATE_TEST_SUITE_P(AllLemmas, LemmaTrials,
                         ::testing::Values(Lemma::eq3, Lemma::eq3_2, Lemma::eq3_3, Lemma::eq3_4, Lemma::star),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(TractableTrials, AllForms) {
  const std::pair<Form, int> forms[] = {{Form::orthogonal_cubes, 3}, {Form::conjugate_pair, 3},
                                        {Form::d4_form1, 4},         {Form::d4_form2, 4},
                                        {Form::d4_form3, 4}};
  for (const auto& [form, d] : forms) {
    const TrialReport r = tractable_trials(form, d, 70 + static_cast<int>(form), 40);
    EXPECT_TRUE(r.ok()) << r.name << ": " << (r.failures.empty() ? "" : r.failures.front());
  }
}

}  // namespace
}  // namespace holant
