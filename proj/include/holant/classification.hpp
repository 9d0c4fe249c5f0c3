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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "holant/matrix.hpp"
#include "holant/signature.hpp"

namespace holant {

enum class Verdict { tractable, hard, unknown };

/// Real canonical tractable forms. The first two cover domains 2 and 3,
/// the d4 forms cover domain 4:
///   orthogonal_cubes  T f = sum_c a_c e_c^3
///   conjugate_pair    d=2: T f = l (b^3 + conj(b)^3), b = (1, i)
///                     d=3: c T f = e (b0^3 + conj(b0)^3) + l e3^3
///   d4_form1          T f = sum_c a_c e_c^3
///   d4_form2          c T f = b0^3 + conj(b0)^3 + l1 e3^3 + l2 e4^3
///   d4_form3          T f = l1 (b0^3 + conj(b0)^3) + l2 (b1^3 + conj(b1)^3)
/// with b0 = (1, i, 0[, 0]) and b1 = (0, 0, 1, i).
enum class Form { orthogonal_cubes, conjugate_pair, d4_form1, d4_form2, d4_form3 };

/// Interpolation lemma variants: which restricted equality a binary gadget
/// yields (=_{G,B,W} for eq3 and eq3_3, =_{B,W} for eq3_2 and eq3_4).
enum class Variant { eq3, eq3_2, eq3_3, eq3_4 };

enum class StepKind {
  gadget_binary,             // M = <f, u> for a recorded unary u
  rank_reduction,            // rank 2 or 3 gadget diagonalized by Q
  vanishing_unary,           // <f, u> = 0
  domain_separation,         // <f, u> = c u u^T
  rank4_interpolation,       // eigenvalue condition on a rank-4 gadget
  subdomain_classification,  // recursive verdict on the restriction
  form_exclusion,            // both canonical-form detectors failed
};

std::string_view to_string(Verdict v);
std::string_view to_string(Form f);
std::string_view to_string(Variant v);
std::string_view to_string(StepKind k);

/// Orthogonal T and coefficients placing T f in a canonical form.
struct Witness {
  Form form = Form::orthogonal_cubes;
  RealMatrix t;
  RealVector coefficients;

  int domain() const { return static_cast<int>(t.rows()); }
};

/// The canonical signature named by (form, domain, coefficients).
SymmetricSignature canonical_signature(Form form, int domain, const RealVector& coefficients);
/// T^T applied to the canonical signature: the f the witness claims.
SymmetricSignature reconstruct(const Witness& w);
/// max |f - reconstruct(w)| / max |f| (absolute when f = 0).
double witness_residual(const Witness& w, const SymmetricSignature& f);

/// The two isotropic vectors of the canonical forms.
Vector beta0(int domain);
Vector beta1();

struct Classification;

/// One link of a hardness certificate. Only the fields relevant to `kind`
/// are populated; verify_certificate replays each of them.
struct CertificateStep {
  StepKind kind = StepKind::gadget_binary;
  RealVector unary;
  RealMatrix binary;
  int rank = 0;
  RealVector eigenvalues;
  RealMatrix transform;
  std::vector<int> colors;
  double constant = 0.0;
  Variant variant = Variant::eq3;
  std::vector<int> distinguished;
  int bound = 0;
  std::vector<std::pair<std::string, double>> residuals;
  SymmetricSignature restricted;
  std::shared_ptr<const Classification> sub;
};

using Certificate = std::vector<CertificateStep>;

struct Classification {
  Verdict verdict = Verdict::unknown;
  std::optional<Witness> witness;
  Certificate certificate;
  /// Strategy chains whose restriction turned out tractable: no hardness,
  /// but recorded as evidence.
  std::vector<Certificate> evidence;
  /// Smallest canonical-form residual seen (hard/unknown verdicts).
  double residual = 0.0;
  std::string note;

  std::optional<Form> form() const {
    return witness ? std::optional<Form>(witness->form) : std::nullopt;
  }
};

/// Outcome of one hardness strategy: the certificate chain and the verdict
/// of the restriction it delegates to.
struct StrategyOutcome {
  Certificate chain;
  Verdict verdict = Verdict::unknown;
};

/// Probe unaries: d=2 {e1, e2, (1,1)/sqrt2, (1,-1)/sqrt2}, d=3 {e1, e2, e3,
/// (1,1,1)/sqrt3}, d=4 the 40 normalized 0/+-1 vectors up to sign; followed
/// by 8 (d <= 3) or 16 (d = 4) seeded random unit vectors.
const std::vector<RealVector>& default_probes(int domain);

/// Keeps the entries whose colors all lie in `colors`; colors are renumbered
/// in the given order.
SymmetricSignature restrict_to_subdomain(const SymmetricSignature& f,
                                         const std::vector<int>& colors);

/// Re-checks a classification of f: tractable witnesses must reconstruct f
/// within tol_eq, hard certificates must replay. On failure returns false
/// and, if `why` is non-null, explains.
bool verify_classification(const SymmetricSignature& f, const Classification& c,
                           std::string* why = nullptr);
bool verify_certificate(const SymmetricSignature& f, const Certificate& cert,
                        std::string* why = nullptr);

}  // namespace holant
