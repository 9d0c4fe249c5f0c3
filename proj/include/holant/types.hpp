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

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace holant {

using Scalar = std::complex<double>;
using Vector = std::vector<Scalar>;
using RealVector = std::vector<double>;

inline constexpr Scalar kI{0.0, 1.0};

/// Raised on contract violations: shape mismatches, invalid witnesses,
/// oversized instances. Carries a human-readable diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical tolerance bundle. Every comparison in the library draws from
/// one of these fields; the process-wide defaults can be overridden through
/// the HOLANT_TOL environment variable (see tolerances()).
struct Tolerances {
  double eq = 1e-9;       // relative equality of signatures and witnesses
  double iso = 1e-9;      // |<u,u>| threshold for isotropy
  double im = 1e-9;       // |im| threshold for realness
  double orth = 1e-9;     // ||T T^T - I||_max
  double eig = 1e-9;      // eigendecomposition reconstruction residual
  double rank = 1e-8;     // singular value cutoff relative to the largest
  double interp = 1e-6;   // interpolated vs direct Holant values
  double gray = 1e3;      // residuals in (eq, gray*eq] give verdict unknown
};

/// Process-wide tolerances. HOLANT_TOL is either a single number (applied
/// to eq, iso, im, orth and eig) or a comma list such as "eq=1e-8,rank=1e-7".
const Tolerances& tolerances();

/// Parses a HOLANT_TOL-style string on top of the defaults. Throws Error on
/// malformed input.
Tolerances parse_tolerances(const std::string& text);

inline double max_abs(const Vector& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

/// |a - b| <= rel * max(1, |a|, |b|).
inline bool close_rel(Scalar a, Scalar b, double rel) {
  const double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= rel * scale;
}

}  // namespace holant
