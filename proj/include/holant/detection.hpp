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

#include <limits>
#include <optional>
#include <span>

#include "holant/classification.hpp"

namespace holant {

struct Detection {
  std::optional<Witness> witness;
  /// Smallest relative residual against the requested forms over all probes.
  double residual = std::numeric_limits<double>::infinity();
};

/// Searches for a real orthogonal T placing f in one of `forms`.
///
/// Every canonical form is block diagonal: T f is a sum of cubes living on
/// single coordinate axes and of conjugate-pair terms living on coordinate
/// planes. For any unary u, M = <f, u> is then block diagonal in the same
/// basis, so eigenvectors of M are candidate rows of T. For each probe the
/// eigenbasis Q is tried against each block layout of the form: Qf must
/// vanish on every index touching two blocks, and on each plane its four
/// edge values must lie in span{Re b^3, Im b^3}. A passing plane is then
/// rotated to make the conjugate-pair coefficient real and positive, and the
/// resulting witness is accepted only if it reconstructs f within tol_eq.
///
/// With `angle_scan`, eigenbases with a repeated eigenvalue pair are also
/// searched over rotations inside that 2-dimensional eigenspace for the
/// axes layout (180 angles, then golden-section polish).
Detection detect_canonical(const SymmetricSignature& f, std::span<const Form> forms,
                           std::span<const RealVector> probes, bool angle_scan);

}  // namespace holant
