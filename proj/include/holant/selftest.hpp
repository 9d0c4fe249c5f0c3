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
#include <vector>

namespace holant {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
  double seconds = 0.0;
};

/// Property checks across the library: oracle sanity, isotropic
/// canonicalization, every interpolation lemma, the tractable evaluators,
/// planted round trips, certificate replay through JSON, symmetry soundness
/// and orbit counting. `report` is called after each check.
std::vector<CheckResult> run_selftest(std::uint64_t seed,
                                      const std::function<void(const CheckResult&)>& report = {});

}  // namespace holant
