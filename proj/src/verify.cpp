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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "holant/classification.hpp"
#include "holant/detection.hpp"
#include "holant/dichotomy_d3.hpp"
#include "holant/interpolation.hpp"
#include "holant/linalg.hpp"

namespace holant {

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

double scale_of(const SymmetricSignature& f) { return std::max(f.max_abs(), 1e-300); }

bool same_vector(const RealVector& a, const RealVector& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

/// Q is orthogonal and its first row is u / |u|.
bool first_row_is(const RealMatrix& q, const RealVector& u) {
  if (orthogonality_residual(q) > tolerances().orth) return false;
  double n = 0.0;
  for (double x : u) n += x * x;
  n = std::sqrt(n);
  if (n == 0.0) return false;
  RealVector unit = u;
  for (double& x : unit) x /= n;
  return same_vector(q.row(0), unit, 1e-12);
}

bool separated(const SymmetricSignature& g, double tol) {
  const IndexTable& tab = g.table();
  for (std::size_t i = 0; i < tab.size(); ++i) {
    const int n0 = tab.counts(i)[0];
    if (n0 > 0 && n0 < g.arity() && std::abs(g[i]) > tol) return false;
  }
  return true;
}

/// Q M Q^T = diag(lambdas) and the lambdas are nonzero exactly on `colors`.
bool diagonalizes(const RealMatrix& q, const RealMatrix& m, const RealVector& lambdas,
                  const std::vector<int>& colors, std::string* why) {
  if (orthogonality_residual(q) > tolerances().orth) return fail(why, "transform is not orthogonal");
  const RealMatrix dm = q * m * q.transpose();
  const double scale = std::max(1.0, m.max_abs());
  if (max_abs_diff(dm, RealMatrix::diagonal(lambdas)) > tolerances().eig * scale)
    return fail(why, "transform does not diagonalize the gadget");
  double top = 0.0;
  for (double l : lambdas) top = std::max(top, std::abs(l));
  for (int c = 0; c < static_cast<int>(lambdas.size()); ++c) {
    const bool kept = std::find(colors.begin(), colors.end(), c) != colors.end();
    const bool nonzero = std::abs(lambdas[c]) > tolerances().rank * top;
    if (kept != nonzero) return fail(why, "kept colors do not match the nonzero eigenvalues");
  }
  return true;
}

}  // namespace

bool verify_certificate(const SymmetricSignature& f, const Certificate& cert, std::string* why) {
  if (cert.empty()) return fail(why, "empty certificate");
  const Tolerances& tol = tolerances();
  SymmetricSignature cur = f;
  const RealMatrix* gadget = nullptr;
  for (std::size_t k = 0; k < cert.size(); ++k) {
    const CertificateStep& s = cert[k];
    const bool last = k + 1 == cert.size();
    std::string step_why;
    auto bad = [&](const std::string& msg) {
      return fail(why, "step " + std::to_string(k) + " (" + std::string(to_string(s.kind)) +
                           "): " + msg);
    };
    switch (s.kind) {
      case StepKind::gadget_binary: {
        const SymmetricSignature m = contract_unary(cur, s.unary);
        if (max_abs_diff(m, SymmetricSignature::from_matrix(s.binary)) > tol.eq * scale_of(cur))
          return bad("recorded binary differs from <f, u>");
        gadget = &s.binary;
        break;
      }
      case StepKind::rank_reduction: {
        if (!gadget) return bad("no gadget binary precedes the reduction");
        if (rank_with_tolerance(*gadget) != s.rank || (s.rank != 2 && s.rank != 3))
          return bad("gadget rank is not " + std::to_string(s.rank));
        if (static_cast<int>(s.colors.size()) != s.rank) return bad("wrong number of kept colors");
        if (!diagonalizes(s.transform, *gadget, s.eigenvalues, s.colors, &step_why))
          return bad(step_why);
        cur = restrict_to_subdomain(apply_transform(s.transform, cur), s.colors);
        break;
      }
      case StepKind::vanishing_unary: {
        if (contract_unary(cur, s.unary).max_abs() > tol.eq * scale_of(cur))
          return bad("<f, u> does not vanish");
        if (!first_row_is(s.transform, s.unary)) return bad("transform does not start with u");
        const SymmetricSignature g = apply_transform(s.transform, cur);
        if (!separated(g, tol.eq * scale_of(cur)) || std::abs(g[0]) > tol.eq * scale_of(cur))
          return bad("transformed signature is not confined to the last colors");
        cur = restrict_to_subdomain(g, s.colors);
        break;
      }
      case StepKind::domain_separation: {
        const RealMatrix m = contract_unary(cur, s.unary).as_real_matrix();
        double defect = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i)
          for (std::size_t j = 0; j < m.cols(); ++j)
            defect = std::max(defect, std::abs(m(i, j) - s.constant * s.unary[i] * s.unary[j]));
        if (defect > tol.eq * scale_of(cur)) return bad("<f, u> is not c u u^T");
        if (std::abs(s.constant) <= tol.eq * scale_of(cur)) return bad("separation constant is zero");
        if (!first_row_is(s.transform, s.unary)) return bad("transform does not start with u");
        const SymmetricSignature g = apply_transform(s.transform, cur);
        if (!separated(g, tol.eq * scale_of(cur))) return bad("transformed signature is not separated");
        cur = restrict_to_subdomain(g, s.colors);
        break;
      }
      case StepKind::rank4_interpolation: {
        if (!gadget) return bad("no gadget binary precedes the interpolation");
        if (rank_with_tolerance(*gadget) != 4) return bad("gadget rank is not 4");
        std::vector<int> all{0, 1, 2, 3};
        if (!diagonalizes(s.transform, *gadget, s.eigenvalues, all, &step_why)) return bad(step_why);
        const std::size_t want = s.variant == Variant::eq3_3 ? 1 : 2;
        if (s.distinguished.size() != want || s.colors.size() != 4 - want)
          return bad("distinguished eigenvalues do not match the variant");
        RealVector ordered;
        for (int c : s.distinguished) ordered.push_back(s.eigenvalues.at(c));
        for (int c : s.colors) {
          if (std::find(s.distinguished.begin(), s.distinguished.end(), c) != s.distinguished.end())
            return bad("kept color is also distinguished");
          ordered.push_back(s.eigenvalues.at(c));
        }
        const ConditionResult cond = check_condition(s.variant, ordered, s.bound > 0 ? s.bound : 12);
        if (!cond.holds) return bad("eigenvalue condition fails");
        if (s.bound == 0 && !cond.exact) return bad("exact condition claimed for non-integer eigenvalues");
        cur = restrict_to_subdomain(apply_transform(s.transform, cur), s.colors);
        break;
      }
      case StepKind::subdomain_classification: {
        if (!s.sub) return bad("missing sub-classification");
        if (s.restricted.size() != cur.size() ||
            max_abs_diff(s.restricted, cur) > tol.eq * scale_of(cur))
          return bad("recorded restriction differs from the replayed one");
        if (s.sub->verdict != Verdict::hard) return bad("restriction is not hard");
        if (!verify_classification(cur, *s.sub, &step_why)) return bad(step_why);
        if (!last) return bad("sub-classification must end the chain");
        return true;
      }
      case StepKind::form_exclusion: {
        if (!last) return bad("form exclusion must end the chain");
        if (cur.domain() != 2 && cur.domain() != 3) return bad("form exclusion needs domain 2 or 3");
        for (const auto& [name, stored] : s.residuals) {
          Form form;
          if (name == to_string(Form::orthogonal_cubes)) form = Form::orthogonal_cubes;
          else if (name == to_string(Form::conjugate_pair)) form = Form::conjugate_pair;
          else return bad("unknown form " + name);
          const Form forms[] = {form};
          const Detection det = detect_canonical(cur, forms, default_probes(cur.domain()), true);
          if (det.witness) return bad(name + " detector now succeeds");
          if (!(det.residual > tol.gray * tol.eq)) return bad(name + " residual is in the gray zone");
          if (std::abs(det.residual - stored) > 1e-9 + 1e-6 * std::abs(stored))
            return bad(name + " residual does not replay");
        }
        if (s.residuals.size() != 2) return bad("both forms must be excluded");
        return true;
      }
    }
  }
  return fail(why, "certificate ends without a hardness conclusion");
}

bool verify_classification(const SymmetricSignature& f, const Classification& c, std::string* why) {
  switch (c.verdict) {
    case Verdict::tractable: {
      if (!c.witness) return fail(why, "tractable verdict without witness");
      if (orthogonality_residual(c.witness->t) > tolerances().orth)
        return fail(why, "witness transform is not orthogonal");
      const double r = witness_residual(*c.witness, f);
      if (!(r <= tolerances().eq)) {
        std::ostringstream os;
        os << "witness reconstructs f only to " << r;
        return fail(why, os.str());
      }
      return true;
    }
    case Verdict::hard:
      return verify_certificate(f, c.certificate, why);
    case Verdict::unknown:
      return true;
  }
  return false;
}

}  // namespace holant
