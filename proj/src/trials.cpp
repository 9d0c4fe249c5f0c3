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

#include "holant/trials.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>

#include "holant/dichotomy_d3.hpp"
#include "holant/interpolation.hpp"
#include "holant/linalg.hpp"
#include "holant/oracle.hpp"

namespace holant {

namespace {

const OracleOptions kSerial{.threads = 1};

/// sign * uniform(lo, hi).
double away_from_zero(Rng& rng, double lo, double hi) {
  const double x = rng.uniform(lo, hi);
  return rng.coin() ? -x : x;
}

template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.next() % i]);
}

/// Random arities in [1, 3] summing to `ports`.
std::vector<int> split_ports(Rng& rng, int ports) {
  std::vector<int> out;
  while (ports > 0) {
    const int a = std::min(ports, rng.integer(1, 3));
    out.push_back(a);
    ports -= a;
  }
  return out;
}

SignatureGrid pair_ports(Rng& rng, int domain,
                         const std::vector<std::shared_ptr<const SymmetricSignature>>& sigs) {
  SignatureGrid g(domain);
  std::vector<PortRef> ports;
  for (const auto& s : sigs) {
    const int v = g.add_vertex(s);
    for (int p = 0; p < s->arity(); ++p) ports.push_back({v, p});
  }
  if (ports.size() % 2 != 0) throw Error("odd number of ports");
  shuffle(rng, ports);
  for (std::size_t i = 0; i < ports.size(); i += 2)
    g.connect(ports[i].vertex, ports[i].port, ports[i + 1].vertex, ports[i + 1].port);
  return g;
}

SignatureGrid with_signature(const SignatureGrid& grid, const std::vector<int>& vertices,
                             const SymmetricSignature& sig) {
  SignatureGrid g = grid;
  auto shared = std::make_shared<const SymmetricSignature>(sig);
  for (int v : vertices) g.set_signature(v, shared);
  return g;
}

/// Four eigenvalues with pairwise distinct prime moduli and random signs, so
/// both rank-4 conditions hold for every choice of distinguished values.
RealVector prime_eigenvalues(Rng& rng) {
  std::vector<double> p{2.0, 3.0, 5.0, 7.0};
  shuffle(rng, p);
  for (double& x : p)
    if (rng.coin()) x = -x;
  return p;
}

int index_of(const RealVector& values, double x) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(values.size()); ++i)
    if (std::abs(values[i] - x) < std::abs(values[best] - x)) best = i;
  return best;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void record(TrialReport& r, int trial, double err, double tol, const std::string& what = {}) {
  ++r.trials;
  r.max_error = std::max(r.max_error, std::isfinite(err) ? err : INFINITY);
  if (err <= tol) {
    ++r.passed;
    return;
  }
  std::ostringstream os;
  os << "trial " << trial << ": " << (what.empty() ? "error " : what + ", error ") << err;
  r.failures.push_back(os.str());
}

void record_exception(TrialReport& r, int trial, const std::exception& e) {
  ++r.trials;
  r.max_error = INFINITY;
  r.failures.push_back("trial " + std::to_string(trial) + ": " + e.what());
}

}  // namespace

SymmetricSignature random_real_signature(Rng& rng, int domain, int arity) {
  SymmetricSignature shape(domain, arity);
  std::vector<Scalar> e(shape.size());
  for (Scalar& x : e) x = rng.uniform(-1.0, 1.0);
  return SymmetricSignature(domain, arity, std::move(e));
}

Witness random_witness(Rng& rng, Form form, int domain) {
  Witness w;
  w.form = form;
  w.t = rng.orthogonal(domain);
  switch (form) {
    case Form::orthogonal_cubes:
    case Form::d4_form1:
      for (int k = 0; k < domain; ++k) w.coefficients.push_back(away_from_zero(rng, 0.5, 1.5));
      break;
    case Form::conjugate_pair:
      if (domain == 2)
        w.coefficients = {away_from_zero(rng, 0.5, 1.5)};
      else
        w.coefficients = {1.0, away_from_zero(rng, 0.5, 1.5), rng.uniform(0.5, 2.0)};
      break;
    case Form::d4_form2:
      w.coefficients = {rng.uniform(0.5, 2.0), away_from_zero(rng, 0.5, 1.5),
                        away_from_zero(rng, 0.5, 1.5)};
      break;
    case Form::d4_form3:
      w.coefficients = {away_from_zero(rng, 0.5, 1.5), away_from_zero(rng, 0.5, 1.5)};
      break;
  }
  (void)canonical_signature(form, domain, w.coefficients);  // validates the domain
  return w;
}

RandomGrid random_grid(Rng& rng, int domain, int edges, int marked, int marked_arity,
                       const SymmetricSignature& placeholder,
                       const std::function<SymmetricSignature(int arity)>& sig) {
  const int rest = 2 * edges - marked * marked_arity;
  if (rest < 0) throw Error("too many marked ports for the edge count");
  std::vector<std::shared_ptr<const SymmetricSignature>> sigs;
  auto shared = std::make_shared<const SymmetricSignature>(placeholder);
  for (int i = 0; i < marked; ++i) sigs.push_back(shared);
  for (int a : split_ports(rng, rest))
    sigs.push_back(std::make_shared<const SymmetricSignature>(sig(a)));
  RandomGrid out{pair_ports(rng, domain, sigs), {}};
  for (int i = 0; i < marked; ++i) out.marked.push_back(i);
  return out;
}

SignatureGrid random_tractable_grid(Rng& rng, const SymmetricSignature& f, int ternary, int unary,
                                    const std::function<SymmetricSignature(int arity)>& sig) {
  std::vector<std::shared_ptr<const SymmetricSignature>> sigs;
  auto shared = std::make_shared<const SymmetricSignature>(f);
  for (int i = 0; i < ternary; ++i) sigs.push_back(shared);
  for (int i = 0; i < unary; ++i) sigs.push_back(std::make_shared<const SymmetricSignature>(sig(1)));
  return pair_ports(rng, f.domain(), sigs);
}

double magnitude_scale(const SignatureGrid& grid) {
  SignatureGrid g = grid;
  for (int v = 0; v < static_cast<int>(g.vertex_count()); ++v) {
    const SymmetricSignature& s = grid.signature(v);
    std::vector<Scalar> e(s.entries().begin(), s.entries().end());
    for (Scalar& x : e) x = std::abs(x);
    g.set_signature(v, SymmetricSignature(s.domain(), s.arity(), std::move(e)));
  }
  return std::abs(brute_force_holant(g, kSerial));
}

double relative_error(Scalar a, Scalar b, double scale) {
  const double denom = std::max(std::abs(b), 1e-6 * scale);
  if (denom == 0.0) return std::abs(a - b) == 0.0 ? 0.0 : INFINITY;
  return std::abs(a - b) / denom;
}

std::string_view to_string(Lemma l) {
  switch (l) {
    case Lemma::eq3: return "eq3";
    case Lemma::eq3_2: return "eq3_2";
    case Lemma::eq3_3: return "eq3_3";
    case Lemma::eq3_4: return "eq3_4";
    case Lemma::star: return "star";
  }
  return "?";
}

Lemma parse_lemma(std::string_view name) {
  for (Lemma l : {Lemma::eq3, Lemma::eq3_2, Lemma::eq3_3, Lemma::eq3_4, Lemma::star})
    if (to_string(l) == name) return l;
  throw Error("unknown lemma '" + std::string(name) + "'");
}

TrialReport interpolation_trials(Lemma lemma, std::uint64_t seed, int trials, double tol) {
  Timer timer;
  TrialReport r;
  r.name = "interpolation " + std::string(to_string(lemma));
  Rng rng(seed);
  const bool star = lemma == Lemma::star;
  const int d = star ? 3 : 4;
  auto sig = [&](int arity) { return random_real_signature(rng, d, arity); };
  for (int trial = 0; trial < trials; ++trial) {
    const int m = trial % 4;
    const int marked_arity = star ? 1 : 2;
    const int min_edges = std::max(1, (m * marked_arity + 1) / 2);
    const int edges = rng.integer(min_edges, 6);
    try {
      Scalar got, want;
      double scale = 0.0;
      if (star) {
        Vector u(3);
        if (trial % 5 == 0) {
          u = {Scalar(1.0, 1.0), 2.0, 1.0};
        } else {
          for (Scalar& x : u) x = Scalar(rng.normal(), rng.normal());
        }
        const RandomGrid g = random_grid(rng, d, edges, m, 1, SymmetricSignature::unary(u), sig);
        got = realify_unaries(g.grid, g.marked, kSerial).value;
        want = brute_force_holant(g.grid, kSerial);
        scale = magnitude_scale(g.grid);
      } else if (lemma == Lemma::eq3 || lemma == Lemma::eq3_2) {
        const int zeros = lemma == Lemma::eq3 ? 1 : 2;
        static const double kPool[] = {1.0, 2.0, 3.0, 5.0, -1.0, -2.0, -3.0, -5.0};
        RealVector diag(4, 0.0), ideal(4, 0.0);
        for (int c = zeros; c < 4; ++c) {
          diag[c] = trial % 7 == 0 ? 1.0 : kPool[rng.integer(0, 7)];
          ideal[c] = 1.0;
        }
        const RandomGrid g = random_grid(rng, d, edges, m, 2, SymmetricSignature::equality(4, 2), sig);
        const Variant v = lemma == Lemma::eq3 ? Variant::eq3 : Variant::eq3_2;
        got = interpolate_restricted_equality(g.grid, g.marked, RealMatrix::diagonal(diag), v, kSerial)
                  .value;
        const SignatureGrid direct =
            with_signature(g.grid, g.marked, SymmetricSignature::from_matrix(RealMatrix::diagonal(ideal)));
        want = brute_force_holant(direct, kSerial);
        scale = magnitude_scale(direct);
      } else {
        const bool three = lemma == Lemma::eq3_3;
        RealMatrix h;
        RealVector dist_values;
        if (three && trial % 5 == 0) {
          h = RealMatrix{{1, 1, 0, 1}, {1, 0, 1, 1}, {0, 1, 1, 1}, {1, 1, 1, 0}};
          dist_values = {3.0};
        } else {
          const RealVector l = prime_eigenvalues(rng);
          const RealMatrix q = rng.orthogonal(4);
          h = q.transpose() * RealMatrix::diagonal(l) * q;
          h = 0.5 * (h + h.transpose());
          dist_values = three ? RealVector{l[0]} : RealVector{l[0], l[1]};
        }
        const RealVector lambdas = eig_sym(h).lambdas;
        std::vector<int> dist;
        for (double x : dist_values) dist.push_back(index_of(lambdas, x));
        const RandomGrid g = random_grid(rng, d, edges, m, 2, SymmetricSignature::equality(4, 2), sig);
        const Variant v = three ? Variant::eq3_3 : Variant::eq3_4;
        const InterpolationResult res = interpolate_from_rank4(g.grid, g.marked, h, v, dist, kSerial);
        got = res.value;
        const RealVector ideal = three ? RealVector{0, 1, 1, 1} : RealVector{0, 0, 1, 1};
        const SignatureGrid direct =
            with_signature(transform_grid(g.grid, res.q), g.marked,
                           SymmetricSignature::from_matrix(RealMatrix::diagonal(ideal)));
        want = brute_force_holant(direct, kSerial);
        scale = magnitude_scale(direct);
      }
      record(r, trial, relative_error(got, want, scale), tol,
             "m=" + std::to_string(m) + " edges=" + std::to_string(edges));
    } catch (const std::exception& e) {
      record_exception(r, trial, e);
    }
  }
  r.seconds = timer.seconds();
  return r;
}

TrialReport tractable_trials(Form form, int domain, std::uint64_t seed, int trials, double tol) {
  Timer timer;
  TrialReport r;
  r.name = "eval_tractable " + std::string(to_string(form)) + " d=" + std::to_string(domain);
  Rng rng(seed);
  auto sig = [&](int arity) { return random_real_signature(rng, domain, arity); };
  for (int trial = 0; trial < trials; ++trial) {
    try {
      const Witness w = random_witness(rng, form, domain);
      const SymmetricSignature f = reconstruct(w);
      int ternary, unary;
      if (trial % 3 == 0) {
        ternary = 2 * rng.integer(1, 2);  // closed cubic graph
        unary = 0;
      } else {
        ternary = rng.integer(1, 4);
        const int room = 16 - 3 * ternary;
        unary = ternary % 2 + 2 * rng.integer(0, (room - ternary % 2) / 2);
      }
      const SignatureGrid g = random_tractable_grid(rng, f, ternary, unary, sig);
      const Scalar got = eval_tractable(w, g);
      const Scalar want = brute_force_holant(g, kSerial);
      record(r, trial, relative_error(got, want, magnitude_scale(g)), tol,
             "ternary=" + std::to_string(ternary) + " unary=" + std::to_string(unary));
    } catch (const std::exception& e) {
      record_exception(r, trial, e);
    }
  }
  r.seconds = timer.seconds();
  return r;
}

TrialReport roundtrip_trials(std::uint64_t seed, int trials, double tol) {
  Timer timer;
  TrialReport r;
  r.name = "planted round trip";
  Rng rng(seed);
  static const std::pair<Form, int> kCases[] = {
      {Form::orthogonal_cubes, 3}, {Form::conjugate_pair, 3}, {Form::d4_form1, 4},
      {Form::d4_form2, 4},         {Form::d4_form3, 4}};
  for (int trial = 0; trial < trials; ++trial) {
    const auto [form, d] = kCases[trial % 5];
    try {
      const Witness w = random_witness(rng, form, d);
      const SymmetricSignature f = reconstruct(w);
      const Classification c = classify(f);
      const std::string label = std::string(to_string(form)) + " classified " +
                                std::string(to_string(c.verdict));
      if (c.verdict != Verdict::tractable || !c.witness) {
        record(r, trial, INFINITY, tol, label);
        continue;
      }
      record(r, trial, witness_residual(*c.witness, f), tol, label);
    } catch (const std::exception& e) {
      record_exception(r, trial, e);
    }
  }
  r.seconds = timer.seconds();
  return r;
}

}  // namespace holant
