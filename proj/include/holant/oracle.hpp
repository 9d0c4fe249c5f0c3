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
#include <map>
#include <vector>

#include "holant/grid.hpp"

namespace holant {

struct OracleOptions {
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  /// Guard on d^(number of edge variables).
  std::uint64_t max_assignments = 100'000'000;
};

/// Sum over all edge assignments of the product of vertex evaluations.
/// Edges are enumerated in declaration order; the work is split into a
/// fixed set of contiguous prefix blocks whose partial sums are added in
/// block order, so the result does not depend on the thread count.
Scalar brute_force_holant(const SignatureGrid& grid, const OracleOptions& opts = {});

/// Effective signature of a gadget: entry per assignment of the dangling
/// ports, each the Holant sum over the internal edges.
Tensor evaluate_dangling(const SignatureGrid& grid, const OracleOptions& opts = {});

/// rho[t]: for each profile t (how many marked vertices see each multiset
/// of the marked signature), the sum over assignments with that profile of
/// the product of all unmarked vertices. Profiles including a multiset on
/// which the marked signature vanishes are dropped.
struct StratifiedTable {
  SymmetricSignature marked_signature;
  std::map<std::vector<int>, Scalar> rho;

  /// sum_t rho[t] * prod_k w_k^{t_k}; equals the Holant value.
  Scalar reconstruct() const;
};

StratifiedTable stratified_holant(const SignatureGrid& grid,
                                  const std::vector<int>& marked,
                                  const OracleOptions& opts = {});

}  // namespace holant
