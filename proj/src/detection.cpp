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

#include "holant/detection.hpp"

#include <array>
#include <cmath>

#include "holant/linalg.hpp"

namespace holant {

namespace {

struct Layout {
  std::vector<std::array<int, 2>> planes;
  std::vector<int> axes;
};

std::vector<Layout> layouts_for(Form form, int d) {
  std::vector<Layout> out;
  auto all_axes = [&] {
    Layout l;
    for (int c = 0; c < d; ++c) l.axes.push_back(c);
    return l;
  };
  switch (form) {
    case Form::orthogonal_cubes:
    case Form::d4_form1:
      out.push_back(all_axes());
      break;
    case Form::conjugate_pair:
      if (d == 2) {
        out.push_back({{{0, 1}}, {}});
      } else {
        for (int k = 2; k >= 0; --k) {
          Layout l;
          std::array<int, 2> p{};
          int n = 0;
          for (int c = 0; c < 3; ++c)
            if (c != k) p[n++] = c;
          l.planes.push_back(p);
          l.axes.push_back(k);
          out.push_back(l);
        }
      }
      break;
    case Form::d4_form2:
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
          Layout l;
          l.planes.push_back({i, j});
          for (int c = 0; c < 4; ++c)
            if (c != i && c != j) l.axes.push_back(c);
          out.push_back(l);
        }
      break;
    case Form::d4_form3:
      out.push_back({{{0, 1}, {2, 3}}, {}});
      out.push_back({{{0, 2}, {1, 3}}, {}});
      out.push_back({{{0, 3}, {1, 2}}, {}});
      break;
  }
  return out;
}

bool form_fits(Form form, int d) {
  switch (form) {
    case Form::orthogonal_cubes: return d == 2 || d == 3;
    case Form::conjugate_pair: return d == 2 || d == 3;
    default: return d == 4;
  }
}

/// Values of g on the four indices of the (a, b) coordinate-plane edge:
/// counts (3,0), (2,1), (1,2), (0,3).
std::array<double, 4> plane_edge(const SymmetricSignature& g, int a, int b) {
  std::array<double, 4> p{};
  MultiIndex m(g.domain(), 0);
  for (int k = 0; k < 4; ++k) {
    std::fill(m.begin(), m.end(), 0);
    m[a] = 3 - k;
    m[b] = k;
    p[k] = g.at(m).real();
  }
  return p;
}

/// Conjugate-pair coefficient z with plane part 2 Re(z b^3), b = (1, i).
std::complex<double> plane_coefficient(const std::array<double, 4>& p) {
  return {(p[0] - p[2]) / 4.0, (p[3] - p[1]) / 4.0};
}

/// Largest violation of the block structure, relative to max |g|.
double layout_residual(const SymmetricSignature& g, const Layout& layout) {
  const int d = g.domain();
  const double scale = g.max_abs();
  if (scale == 0.0) return 0.0;
  std::array<int, 4> block{};
  int nb = 0;
  for (const auto& p : layout.planes) {
    block[p[0]] = nb;
    block[p[1]] = nb;
    ++nb;
  }
  for (int a : layout.axes) block[a] = nb++;

  double worst = 0.0;
  const IndexTable& tab = g.table();
  for (std::size_t i = 0; i < tab.size(); ++i) {
    int b = -1;
    bool mixed = false;
    for (int c = 0; c < d; ++c) {
      if (tab.counts(i)[c] == 0) continue;
      if (b < 0) b = block[c];
      else if (block[c] != b) mixed = true;
    }
    if (mixed) worst = std::max(worst, std::abs(g[i]));
  }
  for (const auto& pl : layout.planes) {
    const auto p = plane_edge(g, pl[0], pl[1]);
    worst = std::max({worst, std::abs(p[0] + p[2]) / 2.0, std::abs(p[1] + p[3]) / 2.0});
  }
  return worst / scale;
}

/// Builds the witness for a passing layout on basis q (rows = basis vectors).
/// Plane rows come first, each rotated so that its pair coefficient is real
/// and nonnegative, then axis rows.
std::optional<Witness> finalize(const SymmetricSignature& f, const RealMatrix& q,
                                const SymmetricSignature& g, const Layout& layout, Form form) {
  const int d = f.domain();
  RealMatrix t(d, d);
  int row = 0;
  for (const auto& pl : layout.planes) {
    const std::complex<double> z = plane_coefficient(plane_edge(g, pl[0], pl[1]));
    const double theta = std::abs(z) > 0.0 ? std::arg(z) / 3.0 : 0.0;
    const double c = std::cos(theta), s = std::sin(theta);
    for (int j = 0; j < d; ++j) {
      t(row, j) = c * q(pl[0], j) - s * q(pl[1], j);
      t(row + 1, j) = s * q(pl[0], j) + c * q(pl[1], j);
    }
    row += 2;
  }
  for (int a : layout.axes) {
    for (int j = 0; j < d; ++j) t(row, j) = q(a, j);
    ++row;
  }

  const SymmetricSignature h = apply_transform(t, f);
  const double scale = std::max(h.max_abs(), 1e-300);
  auto pure = [&](int c) {
    MultiIndex m(d, 0);
    m[c] = 3;
    return h.at(m).real();
  };
  auto pair_coeff = [&](int r) { return plane_coefficient(plane_edge(h, r, r + 1)).real(); };

  Witness w{form, t, {}};
  switch (form) {
    case Form::orthogonal_cubes:
    case Form::d4_form1:
      for (int c = 0; c < d; ++c) w.coefficients.push_back(pure(c));
      break;
    case Form::conjugate_pair:
      if (d == 2) {
        w.coefficients = {pair_coeff(0)};
      } else {
        const double z = pair_coeff(0);
        if (z > tolerances().eq * scale)
          w.coefficients = {1.0, pure(2) / z, 1.0 / z};
        else
          w.coefficients = {0.0, pure(2), 1.0};
      }
      break;
    case Form::d4_form2: {
      const double z = pair_coeff(0);
      if (z <= tolerances().eq * scale) return std::nullopt;
      w.coefficients = {1.0 / z, pure(2) / z, pure(3) / z};
      break;
    }
    case Form::d4_form3:
      w.coefficients = {pair_coeff(0), pair_coeff(2)};
      break;
  }
  return w;
}

struct ProbeBasis {
  RealMatrix q;
  RealVector lambdas;
  SymmetricSignature g;
};

ProbeBasis probe_basis(const SymmetricSignature& f, const RealVector& u) {
  const RealMatrix m = contract_unary(f, u).as_real_matrix();
  EigenResult e = eig_sym(m);
  SymmetricSignature g = apply_transform(e.q, f);
  return {std::move(e.q), std::move(e.lambdas), std::move(g)};
}

RealMatrix rotate_rows(const RealMatrix& q, int i, int j, double theta) {
  RealMatrix r = q;
  const double c = std::cos(theta), s = std::sin(theta);
  for (std::size_t k = 0; k < q.cols(); ++k) {
    r(i, k) = c * q(i, k) - s * q(j, k);
    r(j, k) = s * q(i, k) + c * q(j, k);
  }
  return r;
}

/// Rotation search in a repeated eigenspace {i, j} of the probe basis.
/// Returns the best angle and its residual.
std::pair<double, double> angle_search(const SymmetricSignature& g, int i, int j,
                                       const Layout& layout) {
  const int d = g.domain();
  auto residual_at = [&](double theta) {
    RealMatrix r = RealMatrix::identity(d);
    r = rotate_rows(r, i, j, theta);
    return layout_residual(apply_transform(r, g), layout);
  };
  constexpr int kSteps = 180;
  double best_theta = 0.0, best = residual_at(0.0);
  for (int k = 1; k < kSteps; ++k) {
    const double theta = M_PI * k / kSteps;
    const double r = residual_at(theta);
    if (r < best) {
      best = r;
      best_theta = theta;
    }
  }
  // Golden-section polish over the neighbouring grid cells.
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = best_theta - M_PI / kSteps, hi = best_theta + M_PI / kSteps;
  double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
  double f1 = residual_at(x1), f2 = residual_at(x2);
  for (int it = 0; it < 60; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = residual_at(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = residual_at(x2);
    }
  }
  const double theta = f1 < f2 ? x1 : x2;
  const double r = std::min(f1, f2);
  return r < best ? std::make_pair(theta, r) : std::make_pair(best_theta, best);
}

}  // namespace

Detection detect_canonical(const SymmetricSignature& f, std::span<const Form> forms,
                           std::span<const RealVector> probes, bool angle_scan) {
  if (f.arity() != 3) throw Error("canonical forms are defined for ternary signatures");
  const Tolerances& tol = tolerances();
  if (!f.is_real(tol.im)) throw Error("canonical-form detection needs a real signature");
  const int d = f.domain();
  Detection out;

  std::vector<std::optional<ProbeBasis>> bases(probes.size());
  auto basis = [&](std::size_t k) -> const ProbeBasis& {
    if (!bases[k]) bases[k] = probe_basis(f, probes[k]);
    return *bases[k];
  };
  auto attempt = [&](const RealMatrix& q, const SymmetricSignature& g, const Layout& l,
                     Form form, double layout_res) -> bool {
    out.residual = std::min(out.residual, layout_res);
    if (layout_res > tol.eq) return false;
    std::optional<Witness> w = finalize(f, q, g, l, form);
    if (!w) return false;
    const double r = witness_residual(*w, f);
    if (r <= tol.eq) {
      out.witness = std::move(w);
      out.residual = r;
      return true;
    }
    return false;
  };

  for (Form form : forms) {
    if (!form_fits(form, d)) continue;
    const std::vector<Layout> layouts = layouts_for(form, d);
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const ProbeBasis& b = basis(k);
      for (const Layout& l : layouts)
        if (attempt(b.q, b.g, l, form, layout_residual(b.g, l))) return out;
    }
    if (!angle_scan || (form != Form::orthogonal_cubes && form != Form::d4_form1)) continue;
    for (std::size_t k = 0; k < probes.size(); ++k) {
      const ProbeBasis& b = basis(k);
      const double spread = std::max(1.0, std::abs(b.lambdas.front()));
      for (int i = 0; i + 1 < d; ++i) {
        if (std::abs(b.lambdas[i] - b.lambdas[i + 1]) > 1e-7 * spread) continue;
        const bool triple = (i + 2 < d && std::abs(b.lambdas[i + 1] - b.lambdas[i + 2]) <= 1e-7 * spread) ||
                            (i > 0 && std::abs(b.lambdas[i - 1] - b.lambdas[i]) <= 1e-7 * spread);
        if (triple) continue;
        const Layout& l = layouts.front();
        const auto [theta, res] = angle_search(b.g, i, i + 1, l);
        const RealMatrix q = rotate_rows(b.q, i, i + 1, theta);
        const SymmetricSignature g = apply_transform(q, f);
        if (attempt(q, g, l, form, layout_residual(g, l))) return out;
        out.residual = std::min(out.residual, res);
      }
    }
  }
  return out;
}

}  // namespace holant
