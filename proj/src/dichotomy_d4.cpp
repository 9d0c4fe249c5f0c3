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

#include "holant/dichotomy_d4.hpp"

#include <array>
#include <cmath>
#include <memory>

#include "holant/detection.hpp"
#include "holant/dichotomy_d3.hpp"
#include "holant/interpolation.hpp"
#include "holant/linalg.hpp"

namespace holant {

namespace {

constexpr std::array<Form, 3> kD4Forms{Form::d4_form1, Form::d4_form2, Form::d4_form3};
constexpr int kConditionBound = 12;

void require_d4(const SymmetricSignature& f) {
  if (f.domain() != 4 || f.arity() != 3)
    throw Error("expected a ternary signature on domain 4");
  if (!f.is_real(tolerances().im)) throw Error("classification needs a real signature");
}

double scale_of(const SymmetricSignature& f) { return std::max(f.max_abs(), 1e-300); }

/// Keeps the first hard chain, or else the first chain seen.
class Collector {
 public:
  /// Returns true once a hard chain is held.
  bool offer(Certificate chain, Verdict verdict) {
    if (!best_ || (verdict == Verdict::hard && best_->verdict != Verdict::hard))
      best_ = StrategyOutcome{std::move(chain), verdict};
    return best_->verdict == Verdict::hard;
  }
  std::optional<StrategyOutcome> result() { return std::move(best_); }

 private:
  std::optional<StrategyOutcome> best_;
};

CertificateStep classify_restriction(const SymmetricSignature& restricted) {
  CertificateStep s;
  s.kind = StepKind::subdomain_classification;
  s.restricted = restricted;
  s.sub = std::make_shared<const Classification>(classify(restricted));
  return s;
}

CertificateStep gadget_step(const RealVector& u, const RealMatrix& m) {
  CertificateStep s;
  s.kind = StepKind::gadget_binary;
  s.unary = u;
  s.binary = m;
  return s;
}

/// Largest |Qf| entry on an index that contains color 0 and is not pure.
double separation_defect(const SymmetricSignature& g) {
  double worst = 0.0;
  const IndexTable& tab = g.table();
  for (std::size_t i = 0; i < tab.size(); ++i) {
    const int n0 = tab.counts(i)[0];
    if (n0 > 0 && n0 < g.arity()) worst = std::max(worst, std::abs(g[i]));
  }
  return worst;
}

const std::vector<int> kLastThree{1, 2, 3};

/// Restriction after moving u to the first row; nullopt if Qf does not
/// separate.
std::optional<std::pair<RealMatrix, SymmetricSignature>> split_off(const SymmetricSignature& f,
                                                                   const RealVector& u) {
  const RealMatrix q = orthogonal_from_first_row(u);
  const SymmetricSignature g = apply_transform(q, f);
  if (separation_defect(g) > tolerances().eq * scale_of(f)) return std::nullopt;
  return std::make_pair(q, restrict_to_subdomain(g, kLastThree));
}

bool parallel(const RealVector& a, const RealVector& b) {
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
  return std::abs(std::abs(dot) - 1.0) <= 1e-9;
}

std::optional<StrategyOutcome> rank_strategy(const SymmetricSignature& f, int want,
                                             std::span<const RealVector> probes) {
  require_d4(f);
  Collector found;
  for (const RealVector& u : probes) {
    const RealMatrix m = contract_unary(f, u).as_real_matrix();
    if (rank_with_tolerance(m) != want) continue;
    const EigenResult e = eig_sym(m);
    double top = 0.0;
    for (double l : e.lambdas) top = std::max(top, std::abs(l));
    std::vector<int> colors;
    for (int i = 0; i < 4; ++i)
      if (std::abs(e.lambdas[i]) > tolerances().rank * top) colors.push_back(i);
    if (static_cast<int>(colors.size()) != want) continue;

    CertificateStep red;
    red.kind = StepKind::rank_reduction;
    red.rank = want;
    red.eigenvalues = e.lambdas;
    red.transform = e.q;
    red.colors = colors;
    red.variant = want == 3 ? Variant::eq3 : Variant::eq3_2;
    CertificateStep sub = classify_restriction(restrict_to_subdomain(apply_transform(e.q, f), colors));
    const Verdict v = sub.sub->verdict;
    if (found.offer({gadget_step(u, m), std::move(red), std::move(sub)}, v)) break;
  }
  return found.result();
}

}  // namespace

std::optional<Witness> detect_tractable_d4(const SymmetricSignature& f) {
  require_d4(f);
  return detect_canonical(f, kD4Forms, default_probes(4), false).witness;
}

std::optional<StrategyOutcome> strategy_vanishing_unary(const SymmetricSignature& f) {
  require_d4(f);
  const double scale = f.max_abs();
  if (scale == 0.0) return std::nullopt;
  // <f, u> is linear in u: columns of A are <f, e_j>.
  const std::size_t rows = multiset_count(4, 2);
  RealMatrix a(rows, 4);
  for (int j = 0; j < 4; ++j) {
    const SymmetricSignature col = contract_unary(f, basis_vector(4, j));
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = col[i].real();
  }
  const EigenResult e = eig_sym(a.transpose() * a);
  Collector found;
  for (int k = 3; k >= 0; --k) {
    if (e.lambdas[k] > 1e-12 * e.lambdas[0]) break;
    const RealVector u = e.q.row(k);
    if (contract_unary(f, u).max_abs() > tolerances().eq * scale) continue;
    const auto split = split_off(f, u);
    if (!split) continue;
    CertificateStep van;
    van.kind = StepKind::vanishing_unary;
    van.unary = u;
    van.transform = split->first;
    van.colors = kLastThree;
    CertificateStep sub = classify_restriction(split->second);
    const Verdict v = sub.sub->verdict;
    if (found.offer({std::move(van), std::move(sub)}, v)) break;
  }
  return found.result();
}

std::optional<StrategyOutcome> strategy_domain_separation(const SymmetricSignature& f,
                                                          std::span<const RealVector> probes) {
  require_d4(f);
  const double scale = f.max_abs();
  if (scale == 0.0) return std::nullopt;
  const double tol = tolerances().eq * scale;
  std::vector<RealVector> tried;
  Collector found;
  for (const RealVector& v : probes) {
    const EigenResult e = eig_sym(contract_unary(f, v).as_real_matrix());
    for (int r = 0; r < 4; ++r) {
      const RealVector u = e.q.row(r);
      bool seen = false;
      for (const RealVector& t : tried) seen = seen || parallel(t, u);
      if (seen) continue;
      tried.push_back(u);

      const RealMatrix m = contract_unary(f, u).as_real_matrix();
      double c = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) c += u[i] * m(i, j) * u[j];
      if (std::abs(c) <= tol) continue;
      double defect = 0.0;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) defect = std::max(defect, std::abs(m(i, j) - c * u[i] * u[j]));
      if (defect > tol) continue;
      const auto split = split_off(f, u);
      if (!split) continue;

      CertificateStep sep;
      sep.kind = StepKind::domain_separation;
      sep.unary = u;
      sep.constant = c;
      sep.transform = split->first;
      sep.colors = kLastThree;
      CertificateStep sub = classify_restriction(split->second);
      const Verdict verdict = sub.sub->verdict;
      if (found.offer({std::move(sep), std::move(sub)}, verdict)) return found.result();
    }
  }
  return found.result();
}

std::optional<StrategyOutcome> strategy_rank2(const SymmetricSignature& f,
                                              std::span<const RealVector> probes) {
  return rank_strategy(f, 2, probes);
}

std::optional<StrategyOutcome> strategy_rank3(const SymmetricSignature& f,
                                              std::span<const RealVector> probes) {
  return rank_strategy(f, 3, probes);
}

std::optional<StrategyOutcome> strategy_rank4(const SymmetricSignature& f,
                                              std::span<const RealVector> probes) {
  require_d4(f);
  Collector found;
  for (const RealVector& u : probes) {
    const RealMatrix m = contract_unary(f, u).as_real_matrix();
    if (rank_with_tolerance(m) != 4) continue;
    const EigenResult e = eig_sym(m);
    const SymmetricSignature g = apply_transform(e.q, f);

    // Distinguished eigenvalues first, then the kept colors in order.
    std::vector<std::vector<int>> choices;
    for (int i = 0; i < 4; ++i) choices.push_back({i});
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) choices.push_back({i, j});
    for (const auto& dist : choices) {
      const Variant variant = dist.size() == 1 ? Variant::eq3_3 : Variant::eq3_4;
      std::vector<int> colors;
      for (int c = 0; c < 4; ++c)
        if (std::find(dist.begin(), dist.end(), c) == dist.end()) colors.push_back(c);
      RealVector ordered;
      for (int c : dist) ordered.push_back(e.lambdas[c]);
      for (int c : colors) ordered.push_back(e.lambdas[c]);
      const ConditionResult cond = check_condition(variant, ordered, kConditionBound);
      if (!cond.holds) continue;

      CertificateStep interp;
      interp.kind = StepKind::rank4_interpolation;
      interp.rank = 4;
      interp.eigenvalues = e.lambdas;
      interp.transform = e.q;
      interp.variant = variant;
      interp.distinguished = dist;
      interp.colors = colors;
      interp.bound = cond.exact ? 0 : kConditionBound;
      CertificateStep sub = classify_restriction(restrict_to_subdomain(g, colors));
      const Verdict v = sub.sub->verdict;
      if (found.offer({gadget_step(u, m), std::move(interp), std::move(sub)}, v))
        return found.result();
    }
  }
  return found.result();
}

Classification classify_d4(const SymmetricSignature& f) {
  require_d4(f);
  Classification out;
  Detection det = detect_canonical(f, kD4Forms, default_probes(4), false);
  if (det.witness) {
    out.verdict = Verdict::tractable;
    out.witness = std::move(det.witness);
    out.residual = det.residual;
    return out;
  }
  out.residual = det.residual;
  using Strategy = std::optional<StrategyOutcome> (*)(const SymmetricSignature&);
  const Strategy strategies[] = {
      strategy_vanishing_unary,
      [](const SymmetricSignature& g) { return strategy_domain_separation(g); },
      [](const SymmetricSignature& g) { return strategy_rank2(g); },
      [](const SymmetricSignature& g) { return strategy_rank3(g); },
      [](const SymmetricSignature& g) { return strategy_rank4(g); },
  };
  for (Strategy s : strategies) {
    std::optional<StrategyOutcome> o = s(f);
    if (!o) continue;
    if (o->verdict == Verdict::hard) {
      out.verdict = Verdict::hard;
      out.certificate = std::move(o->chain);
      return out;
    }
    out.evidence.push_back(std::move(o->chain));
  }
  out.verdict = Verdict::unknown;
  out.note = "no canonical form and no strategy proved hardness";
  return out;
}

}  // namespace holant
