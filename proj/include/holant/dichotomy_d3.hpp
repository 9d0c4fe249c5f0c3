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

#include "holant/classification.hpp"

namespace holant {

/// T f = a e1^3 + b e2^3 + c e3^3 for a real orthogonal T.
std::optional<Witness> detect_form1_d3(const SymmetricSignature& f);

/// c T f = e (b0^3 + conj(b0)^3) + l e3^3 with b0 = (1, i, 0).
std::optional<Witness> detect_form2_d3(const SymmetricSignature& f);

/// Real symmetric ternary signatures on domain 3: tractable iff one of the
/// two canonical forms applies. A hard verdict needs every detector residual
/// above gray * tol_eq; anything closer is reported as unknown.
Classification classify_d3(const SymmetricSignature& f);

/// Domain-2 analogue with forms a e1^3 + b e2^3 and l (b^3 + conj(b)^3),
/// b = (1, i), each up to a real rotation.
Classification classify_d2(const SymmetricSignature& f);

/// Dispatches on f.domain() (2, 3 or 4).
Classification classify(const SymmetricSignature& f);

}  // namespace holant
