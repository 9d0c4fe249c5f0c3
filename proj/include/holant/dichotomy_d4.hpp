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

#include <optional>
#include <span>

#include "holant/classification.hpp"

namespace holant {

/// Real orthogonal T placing f in d4_form1, d4_form2 or d4_form3, tried in
/// that order.
std::optional<Witness> detect_tractable_d4(const SymmetricSignature& f);

/// The hardness strategies. Each returns the first chain whose restriction
/// is hard; failing that, the first chain found at all (with its tractable
/// or unknown restriction verdict as evidence); nullopt when nothing
/// applies. Strategies that search over gadgets <f, u> take the probe
/// unaries u explicitly.

/// Strategy 3: a real u != 0 with <f, u> = 0; Q (first row u) confines Qf to
/// the last three colors.
std::optional<StrategyOutcome> strategy_vanishing_unary(const SymmetricSignature& f);

/// Strategy 4: a unit u with <f, u> = c u u^T, c != 0; Qf separates into
/// c e1^3 plus a signature on the last three colors.
std::optional<StrategyOutcome> strategy_domain_separation(
    const SymmetricSignature& f, std::span<const RealVector> probes = default_probes(4));

/// Strategies 1 and 2: a gadget <f, u> of rank 2 (resp. 3) yields =_{B,W}
/// (resp. =_{G,B,W}) in its eigenbasis.
std::optional<StrategyOutcome> strategy_rank2(
    const SymmetricSignature& f, std::span<const RealVector> probes = default_probes(4));
std::optional<StrategyOutcome> strategy_rank3(
    const SymmetricSignature& f, std::span<const RealVector> probes = default_probes(4));

/// Strategy 5: a rank-4 gadget whose eigenvalues satisfy the eq3_3 condition
/// for some distinguished eigenvalue, or eq3_4 for some pair.
std::optional<StrategyOutcome> strategy_rank4(
    const SymmetricSignature& f, std::span<const RealVector> probes = default_probes(4));

/// detect_tractable_d4, then strategies 3, 4, 1, 2, 5. Unknown when no
/// strategy proves hardness.
Classification classify_d4(const SymmetricSignature& f);

}  // namespace holant
