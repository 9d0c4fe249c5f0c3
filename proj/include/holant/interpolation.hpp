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

#include <vector>

#include "holant/classification.hpp"
#include "holant/grid.hpp"
#include "holant/oracle.hpp"

namespace holant {

struct ConditionResult {
  bool holds = true;
  /// Decided for all integer exponents (integer eigenvalues), not only up to
  /// the bound.
  bool exact = false;
  /// A violating exponent tuple: (s, a, b, c) for eq3_3, (s, t, a, b) for
  /// eq3_4. Empty when the condition holds, or when an exact violation was
  /// proved without a small witness.
  std::vector<int> exponents;
};

/// eq3_3: no s > 0 and a + b + c = s with l1^s = l2^a l3^b l4^c.
/// eq3_4: no s, t >= 0, s + t > 0 and a + b = s + t with
///        l1^s l2^t = l3^a l4^b.
/// Exponents are searched with every |exponent| <= bound; products are
/// compared with relative tolerance 1e-12. Integer eigenvalues are decided
/// exactly by unique factorization.
ConditionResult check_condition(Variant variant, const RealVector& lambdas, int bound = 12);

/// H^k: the binary signature of a chain of k copies of H.
RealMatrix chain_power(const RealMatrix& h, int k);

/// Stratification bookkeeping: the compositions t of the m marked
/// occurrences over colors with nonzero weight, their Vandermonde nodes
/// x_t = prod_c (mu_c / mu_ref)^{t_c}, and the groups of equal nodes.
struct InterpolationPlan {
  int m = 0;
  int reference_color = 0;
  std::vector<std::vector<int>> compositions;
  std::vector<Scalar> nodes;
  std::vector<std::vector<int>> merged_columns;
  std::vector<Scalar> distinct_nodes;
  std::vector<SignatureGrid> instances;
};

struct InterpolationResult {
  Scalar value;
  InterpolationPlan plan;
  std::vector<Scalar> instance_values;
  /// Gautschi-type bound on the condition number of the Vandermonde solve.
  double condition = 1.0;
  /// Basis in which the restricted equality lives (rank-4 variants).
  RealMatrix q;
};

/// Largest acceptable condition estimate. Instances and the solve run in
/// 50-digit arithmetic, so this leaves about 20 significant digits.
inline constexpr double kMaxCondition = 1e30;

/// `marked` vertices (binary, arbitrary placeholder signatures) stand for
/// =_{G,B,W} (eq3) or =_{B,W} (eq3_2). H must be diag(0, l1, l2, l3) or
/// diag(0, 0, l, mu) with nonzero l's. Each instance replaces every marked
/// vertex by H^k; the answer is the Holant value of the grid with the
/// restricted equality in place.
InterpolationResult interpolate_restricted_equality(const SignatureGrid& grid,
                                                    const std::vector<int>& marked,
                                                    const RealMatrix& h, Variant variant,
                                                    const OracleOptions& opts = {});

/// Rank-4 symmetric H with Q H Q^T = diag(l). Rows of Q are ordered with the
/// distinguished eigenvalue(s) first (eq3_3 takes one index, eq3_4 two;
/// indices refer to eig_sym's descending order). Instances use H^k in the
/// original basis; the answer equals the Holant value of Q applied to every
/// unmarked vertex with diag(0,1,1,1) (resp. diag(0,0,1,1)) on the marked
/// ones. Refuses when check_condition fails for bound m.
InterpolationResult interpolate_from_rank4(const SignatureGrid& grid,
                                           const std::vector<int>& marked,
                                           const RealMatrix& h, Variant variant,
                                           const std::vector<int>& distinguished,
                                           const OracleOptions& opts = {});

/// The `marked` unary vertices all carry the same complex unary u. Each
/// instance replaces u by a real unary with entry 1 at a reference color
/// where u is nonzero and 3^k, 2^k (5^k, ...) elsewhere; the answer is the
/// Holant value with u in place.
InterpolationResult realify_unaries(const SignatureGrid& grid, const std::vector<int>& marked,
                                    const OracleOptions& opts = {});

/// Polynomial-time Holant for grids whose ternary vertices all carry the f
/// described by `w` and whose other vertices are unaries (or nullary
/// constants). Components of the ternary subgraph are summed over the
/// canonical blocks of w: an axis contributes a_c^n times its unary factors;
/// a conjugate-pair plane contributes only on bipartite components without
/// self-loops, once per 2-coloring, with weight 2 per internal edge.
Scalar eval_tractable(const Witness& w, const SignatureGrid& grid);

}  // namespace holant
