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

#include "holant/selftest.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "holant/dichotomy_d3.hpp"
#include "holant/dichotomy_d4.hpp"
#include "holant/enumeration.hpp"
#include "holant/io.hpp"
#include "holant/linalg.hpp"
#include "holant/oracle.hpp"
#include "holant/trials.hpp"

namespace holant {

namespace {

/// K4 with every vertex carrying `f` (arity 3).
SignatureGrid k4(const SymmetricSignature& f) {
  SignatureGrid g(f.domain());
  for (int v = 0; v < 4; ++v) g.add_vertex(f);
  std::vector<int> next(4, 0);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) g.connect(a, next[a]++, b, next[b]++);
  return g;
}

CheckResult from_trials(const TrialReport& r) {
  std::ostringstream os;
  os << r.passed << "/" << r.trials << " max error " << r.max_error;
  if (!r.failures.empty()) os << "; " << r.failures.front();
  return {r.name, r.ok(), os.str(), r.seconds};
}

}  // namespace

std::vector<CheckResult> run_selftest(std::uint64_t seed,
                                      const std::function<void(const CheckResult&)>& report) {
  std::vector<CheckResult> out;
  auto run = [&](const std::string& name, const std::function<CheckResult()>& check) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = check();
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    if (r.name.empty()) r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(r);
    if (report) report(r);
  };

  run("oracle: K4 exact-one", [] {
    const Scalar z = brute_force_holant(k4(SymmetricSignature::exact_one(3)));
    return CheckResult{"", z == Scalar(3.0), "value " + format_scalar(z)};
  });

  run("isotropic canonicalization", [&] {
    Rng rng(seed);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
      const RealMatrix r = rng.orthogonal(3);
      const double c = rng.uniform(0.1, 10.0);
      Vector beta(3);
      for (int j = 0; j < 3; ++j) beta[j] = c * Scalar(r(0, j), r(1, j));
      const IsotropicCanonical iso = isotropic_canonicalize(beta);
      const Vector tb = to_complex(iso.t).apply(beta);
      const Vector want{iso.c, Scalar(0.0, iso.c), 0.0};
      double err = orthogonality_residual(iso.t);
      for (int j = 0; j < 3; ++j) err = std::max(err, std::abs(tb[j] - want[j]) / c);
      worst = std::max(worst, err);
    }
    std::ostringstream os;
    os << "max residual " << worst;
    return CheckResult{"", worst <= 1e-9, os.str()};
  });

  for (Lemma l : {Lemma::eq3, Lemma::eq3_2, Lemma::eq3_3, Lemma::eq3_4, Lemma::star})
    run("", [&] { return from_trials(interpolation_trials(l, seed + 10 + static_cast<int>(l), 20)); });

  const std::pair<Form, int> forms[] = {{Form::orthogonal_cubes, 3}, {Form::conjugate_pair, 3},
                                        {Form::d4_form1, 4},         {Form::d4_form2, 4},
                                        {Form::d4_form3, 4}};
  for (const auto& [form, d] : forms)
    run("", [&] { return from_trials(tractable_trials(form, d, seed + 20 + static_cast<int>(form), 30)); });

  run("", [&] { return from_trials(roundtrip_trials(seed + 30, 200)); });

  run("certificate replay through JSON", [&] {
    Rng rng(seed + 40);
    int hard = 0, bad = 0;
    for (int t = 0; t < 40; ++t) {
      const SymmetricSignature f = signature_from_bits(static_cast<std::uint32_t>(rng.next() % kSignatureCount));
      const Classification c = classify_d4(f);
      if (c.verdict != Verdict::hard) continue;
      ++hard;
      const Classification back = classification_from_json(parse_json(to_json(c).dump()));
      if (!verify_classification(f, back) || classification_digest(back) != classification_digest(c)) ++bad;
    }
    return CheckResult{"", hard > 0 && bad == 0,
                       std::to_string(hard) + " hard certificates, " + std::to_string(bad) + " failed"};
  });

  run("symmetry soundness", [&] {
    Rng rng(seed + 50);
    int mismatches = 0;
    for (int t = 0; t < 30; ++t) {
      const auto bits = static_cast<std::uint32_t>(rng.next() % kSignatureCount);
      const Verdict v = classify_d4(signature_from_bits(bits)).verdict;
      const Verdict w = classify_d4(signature_from_bits(canonical_representative(bits))).verdict;
      if (v != w) ++mismatches;
    }
    return CheckResult{"", mismatches == 0, std::to_string(mismatches) + " of 30 differ"};
  });

  run("orbit count", [] {
    const std::uint64_t burnside = burnside_orbit_count();
    const std::size_t streamed = orbit_representatives().size();
    return CheckResult{"", burnside == streamed,
                       "Burnside " + std::to_string(burnside) + ", streamed " + std::to_string(streamed)};
  });

  return out;
}

}  // namespace holant
