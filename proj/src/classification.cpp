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

#include "holant/classification.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "holant/random.hpp"

namespace holant {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::tractable: return "tractable";
    case Verdict::hard: return "hard";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

std::string_view to_string(Form f) {
  switch (f) {
    case Form::orthogonal_cubes: return "orthogonal_cubes";
    case Form::conjugate_pair: return "conjugate_pair";
    case Form::d4_form1: return "d4_form1";
    case Form::d4_form2: return "d4_form2";
    case Form::d4_form3: return "d4_form3";
  }
  return "?";
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::eq3: return "eq3";
    case Variant::eq3_2: return "eq3_2";
    case Variant::eq3_3: return "eq3_3";
    case Variant::eq3_4: return "eq3_4";
  }
  return "?";
}

std::string_view to_string(StepKind k) {
  switch (k) {
    case StepKind::gadget_binary: return "gadget_binary";
    case StepKind::rank_reduction: return "rank_reduction";
    case StepKind::vanishing_unary: return "vanishing_unary";
    case StepKind::domain_separation: return "domain_separation";
    case StepKind::rank4_interpolation: return "rank4_interpolation";
    case StepKind::subdomain_classification: return "subdomain_classification";
    case StepKind::form_exclusion: return "form_exclusion";
  }
  return "?";
}

Vector beta0(int domain) {
  Vector b(domain, 0.0);
  b[0] = 1.0;
  b[1] = kI;
  return b;
}

Vector beta1() { return {0.0, 0.0, 1.0, kI}; }

namespace {

void expect_size(const RealVector& c, std::size_t n, Form form) {
  if (c.size() != n)
    throw Error("form " + std::string(to_string(form)) + " takes " + std::to_string(n) +
                " coefficients, got " + std::to_string(c.size()));
}

SymmetricSignature cube(const Vector& v) { return tensor_power(v, 3); }

SymmetricSignature pair_sum(const Vector& b) {
  return add_scaled(cube(b), cube(conj(b)), 1.0);
}

SymmetricSignature axis_cube(int domain, int c) { return cube(basis_vector(domain, c)); }

/// Imaginary parts of the real canonical forms are pure rounding noise.
SymmetricSignature drop_imaginary(const SymmetricSignature& f) {
  std::vector<Scalar> e(f.entries().begin(), f.entries().end());
  for (auto& x : e) x = x.real();
  return SymmetricSignature(f.domain(), f.arity(), std::move(e));
}

}  // namespace

SymmetricSignature canonical_signature(Form form, int domain, const RealVector& c) {
  SymmetricSignature g(domain, 3);
  switch (form) {
    case Form::orthogonal_cubes:
    case Form::d4_form1:
      if (form == Form::d4_form1 && domain != 4) throw Error("d4_form1 needs domain 4");
      expect_size(c, domain, form);
      for (int k = 0; k < domain; ++k) g = add_scaled(g, axis_cube(domain, k), c[k]);
      break;
    case Form::conjugate_pair:
      if (domain == 2) {
        expect_size(c, 1, form);
        g = scale(pair_sum(beta0(2)), c[0]);
      } else if (domain == 3) {
        expect_size(c, 3, form);
        if (c[2] == 0.0) throw Error("conjugate_pair scale c must be nonzero");
        g = add_scaled(scale(pair_sum(beta0(3)), c[0]), axis_cube(3, 2), c[1]);
        g = scale(g, 1.0 / c[2]);
      } else {
        throw Error("conjugate_pair is defined on domains 2 and 3");
      }
      break;
    case Form::d4_form2:
      if (domain != 4) throw Error("d4_form2 needs domain 4");
      expect_size(c, 3, form);
      if (c[0] == 0.0) throw Error("d4_form2 scale c must be nonzero");
      g = add_scaled(pair_sum(beta0(4)), axis_cube(4, 2), c[1]);
      g = add_scaled(g, axis_cube(4, 3), c[2]);
      g = scale(g, 1.0 / c[0]);
      break;
    case Form::d4_form3:
      if (domain != 4) throw Error("d4_form3 needs domain 4");
      expect_size(c, 2, form);
      g = add_scaled(scale(pair_sum(beta0(4)), c[0]), pair_sum(beta1()), c[1]);
      break;
  }
  return drop_imaginary(g);
}

SymmetricSignature reconstruct(const Witness& w) {
  return apply_transform(w.t.transpose(),
                         canonical_signature(w.form, w.domain(), w.coefficients));
}

double witness_residual(const Witness& w, const SymmetricSignature& f) {
  if (w.domain() != f.domain()) throw Error("witness domain mismatch");
  const double diff = max_abs_diff(reconstruct(w), f);
  const double scale = f.max_abs();
  return scale > 0.0 ? diff / scale : diff;
}

const std::vector<RealVector>& default_probes(int domain) {
  static std::once_flag once;
  static std::vector<RealVector> probes[5];
  std::call_once(once, [] {
    for (int d = 2; d <= 4; ++d) {
      auto& out = probes[d];
      if (d == 4) {
        // 0/+-1 vectors with first nonzero entry positive, by support size.
        for (int support = 1; support <= 4; ++support)
          for (int code = 0; code < 81; ++code) {
            RealVector v(4);
            int x = code, nz = 0;
            for (int j = 3; j >= 0; --j) {
              v[j] = static_cast<double>(x % 3) - 1.0;
              x /= 3;
              nz += v[j] != 0.0;
            }
            if (nz != support) continue;
            const auto first = std::find_if(v.begin(), v.end(), [](double t) { return t != 0.0; });
            if (*first < 0) continue;
            const double n = std::sqrt(static_cast<double>(nz));
            for (double& t : v) t /= n;
            out.push_back(v);
          }
      } else {
        for (int k = 0; k < d; ++k) {
          RealVector e(d, 0.0);
          e[k] = 1.0;
          out.push_back(e);
        }
        if (d == 2) {
          out.push_back({M_SQRT1_2, M_SQRT1_2});
          out.push_back({M_SQRT1_2, -M_SQRT1_2});
        } else {
          const double s = 1.0 / std::sqrt(3.0);
          out.push_back({s, s, s});
        }
      }
      Rng rng(0x5eed0000u + static_cast<unsigned>(d));
      const int randoms = d == 4 ? 16 : 8;
      for (int k = 0; k < randoms; ++k) out.push_back(rng.unit_vector(d));
    }
  });
  if (domain < 2 || domain > 4) throw Error("probes exist for domains 2 to 4");
  return probes[domain];
}

SymmetricSignature restrict_to_subdomain(const SymmetricSignature& f,
                                         const std::vector<int>& colors) {
  const int k = static_cast<int>(colors.size());
  if (k < 1 || k > f.domain()) throw Error("bad sub-domain size");
  std::vector<bool> seen(f.domain(), false);
  for (int c : colors) {
    if (c < 0 || c >= f.domain()) throw Error("sub-domain color out of range");
    if (seen[c]) throw Error("repeated sub-domain color");
    seen[c] = true;
  }
  const IndexTable& sub = index_table(k, f.arity());
  std::vector<Scalar> e(sub.size());
  MultiIndex full(f.domain());
  for (std::size_t i = 0; i < sub.size(); ++i) {
    std::fill(full.begin(), full.end(), 0);
    for (int j = 0; j < k; ++j) full[colors[j]] = sub.counts(i)[j];
    e[i] = f.at(full);
  }
  return SymmetricSignature(k, f.arity(), std::move(e));
}

}  // namespace holant
