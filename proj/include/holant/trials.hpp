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

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "holant/classification.hpp"
#include "holant/grid.hpp"
#include "holant/random.hpp"

namespace holant {

/// Entries uniform in [-1, 1].
SymmetricSignature random_real_signature(Rng& rng, int domain, int arity);

/// Random T and coefficients for `form`; every coefficient is bounded away
/// from zero so the witness is unambiguous.
Witness random_witness(Rng& rng, Form form, int domain);

struct RandomGrid {
  SignatureGrid grid;
  std::vector<int> marked;
};

/// Closed multigraph with `edges` edges: `marked` vertices of arity
/// `marked_arity` carrying `placeholder`, the remaining ports spread over
/// vertices of arity 1 to 3 carrying sig(arity). Ports are paired uniformly
/// at random, so self-loops and parallel edges occur.
RandomGrid random_grid(Rng& rng, int domain, int edges, int marked, int marked_arity,
                       const SymmetricSignature& placeholder,
                       const std::function<SymmetricSignature(int arity)>& sig);

/// Closed grid of `ternary` vertices carrying f and `unary` vertices
/// carrying sig(1); 3 ternary + unary must be even.
SignatureGrid random_tractable_grid(Rng& rng, const SymmetricSignature& f, int ternary, int unary,
                                    const std::function<SymmetricSignature(int arity)>& sig);

/// Brute-force value of the grid with every entry replaced by its modulus:
/// the size of the sum before cancellation.
double magnitude_scale(const SignatureGrid& grid);

/// |a - b| / max(|b|, 1e-6 scale): values cancelling below a millionth of
/// their magnitude scale are compared at that scale.
double relative_error(Scalar a, Scalar b, double scale);

enum class Lemma { eq3, eq3_2, eq3_3, eq3_4, star };
std::string_view to_string(Lemma l);
/// Throws Error on an unknown name.
Lemma parse_lemma(std::string_view name);

struct TrialReport {
  std::string name;
  int trials = 0;
  int passed = 0;
  double max_error = 0.0;
  double seconds = 0.0;
  std::vector<std::string> failures;

  bool ok() const { return trials > 0 && passed == trials; }
};

/// Random grids with at most 6 edges and 0 to 3 marked occurrences; the
/// interpolated value is compared with the direct oracle value.
TrialReport interpolation_trials(Lemma lemma, std::uint64_t seed, int trials, double tol = 1e-6);

/// eval_tractable against brute_force_holant on random grids with at most
/// 8 edges whose ternary vertices carry a random planted f of `form`.
TrialReport tractable_trials(Form form, int domain, std::uint64_t seed, int trials,
                             double tol = 1e-6);

/// Planted tractable signatures cycling through every form on domains 3 and
/// 4: each must classify tractable with a witness reconstructing f to tol.
TrialReport roundtrip_trials(std::uint64_t seed, int trials, double tol = 1e-6);

}  // namespace holant
