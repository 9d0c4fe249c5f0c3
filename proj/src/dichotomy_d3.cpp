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

#include "holant/dichotomy_d3.hpp"

#include <array>

#include "holant/detection.hpp"
#include "holant/dichotomy_d4.hpp"

namespace holant {

namespace {

void require_shape(const SymmetricSignature& f, int d) {
  if (f.domain() != d || f.arity() != 3)
    throw Error("expected a ternary signature on domain " + std::to_string(d));
  if (!f.is_real(tolerances().im)) throw Error("classification needs a real signature");
}

Detection run(const SymmetricSignature& f, Form form) {
  const std::array<Form, 1> forms{form};
  return detect_canonical(f, forms, default_probes(f.domain()), true);
}

/// Tractable if a detector fires; otherwise hard or unknown depending on
/// how close the nearest canonical form came.
Classification decide(const SymmetricSignature& f) {
  Classification out;
  std::vector<std::pair<std::string, double>> residuals;
  double best = std::numeric_limits<double>::infinity();
  for (Form form : {Form::orthogonal_cubes, Form::conjugate_pair}) {
    Detection det = run(f, form);
    if (det.witness) {
      out.verdict = Verdict::tractable;
      out.witness = std::move(det.witness);
      out.residual = det.residual;
      return out;
    }
    residuals.emplace_back(std::string(to_string(form)), det.residual);
    best = std::min(best, det.residual);
  }
  out.residual = best;
  const Tolerances& tol = tolerances();
  if (best > tol.gray * tol.eq) {
    out.verdict = Verdict::hard;
    CertificateStep step;
    step.kind = StepKind::form_exclusion;
    step.residuals = std::move(residuals);
    out.certificate.push_back(std::move(step));
  } else {
    out.verdict = Verdict::unknown;
    out.note = "canonical-form residual in the gray zone";
  }
  return out;
}

}  // namespace

std::optional<Witness> detect_form1_d3(const SymmetricSignature& f) {
  require_shape(f, 3);
  return run(f, Form::orthogonal_cubes).witness;
}

std::optional<Witness> detect_form2_d3(const SymmetricSignature& f) {
  require_shape(f, 3);
  return run(f, Form::conjugate_pair).witness;
}

Classification classify_d3(const SymmetricSignature& f) {
  require_shape(f, 3);
  return decide(f);
}

Classification classify_d2(const SymmetricSignature& f) {
  require_shape(f, 2);
  return decide(f);
}

Classification classify(const SymmetricSignature& f) {
  switch (f.domain()) {
    case 2: return classify_d2(f);
    case 3: return classify_d3(f);
    case 4: return classify_d4(f);
    default: throw Error("classification is implemented for domains 2 to 4");
  }
}

}  // namespace holant
