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

#include "holant/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <thread>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include "holant/linalg.hpp"

namespace holant {

namespace {

// ---------------------------------------------------------------------------
// Eigenvalue conditions.

/// 0, 1, -1, 2, -2, ... up to +-bound.
std::vector<int> small_first(int bound) {
  std::vector<int> out{0};
  for (int k = 1; k <= bound; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

struct LogValue {
  double log_abs;
  int negative;
};

bool products_equal(const std::vector<LogValue>& l, const std::vector<int>& lhs_exp,
                    const std::vector<int>& rhs_exp) {
  double lhs = 0.0, rhs = 0.0;
  int sign = 0;
  for (std::size_t i = 0; i < l.size(); ++i) {
    lhs += lhs_exp[i] * l[i].log_abs;
    rhs += rhs_exp[i] * l[i].log_abs;
    sign += (std::abs(lhs_exp[i]) + std::abs(rhs_exp[i])) * l[i].negative;
  }
  // Relative difference 1e-12 between the products.
  return sign % 2 == 0 && std::abs(lhs - rhs) <= 1e-12;
}

std::vector<int> bounded_search(Variant variant, const std::vector<LogValue>& l, int bound) {
  const std::vector<int> order = small_first(bound);
  if (variant == Variant::eq3_3) {
    for (int s = 1; s <= bound; ++s)
      for (int a : order)
        for (int b : order) {
          const int c = s - a - b;
          if (std::abs(c) > bound) continue;
          if (products_equal(l, {s, 0, 0, 0}, {0, a, b, c})) return {s, a, b, c};
        }
  } else {
    for (int n = 1; n <= 2 * bound; ++n)
      for (int s = std::max(0, n - bound); s <= std::min(n, bound); ++s) {
        const int t = n - s;
        for (int a : order) {
          const int b = n - a;
          if (std::abs(b) > bound) continue;
          if (products_equal(l, {s, t, 0, 0}, {0, 0, a, b})) return {s, t, a, b};
        }
      }
  }
  return {};
}

/// Exact rational arithmetic for the tiny integer systems below.
struct Fraction {
  long long num = 0;
  long long den = 1;

  static Fraction make(long long n, long long d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return g > 1 ? Fraction{n / g, d / g} : Fraction{n, d};
  }
  Fraction operator-(const Fraction& o) const { return make(num * o.den - o.num * den, den * o.den); }
  Fraction operator*(const Fraction& o) const { return make(num * o.num, den * o.den); }
  Fraction operator/(const Fraction& o) const { return make(num * o.den, den * o.num); }
  bool zero() const { return num == 0; }
};

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

/// Basis of the rational kernel of an integer matrix.
std::vector<std::vector<Fraction>> kernel(std::vector<std::vector<Fraction>> a, int cols) {
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < a.size(); ++c) {
    std::size_t p = row;
    while (p < a.size() && a[p][c].zero()) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[row]);
    const Fraction lead = a[row][c];
    for (auto& x : a[row]) x = x / lead;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][c].zero()) continue;
      const Fraction f = a[r][c];
      for (int k = 0; k < cols; ++k) a[r][k] = a[r][k] - f * a[row][k];
    }
    pivot_col.push_back(c);
    ++row;
  }
  std::vector<std::vector<Fraction>> basis;
  for (int free = 0; free < cols; ++free) {
    if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
    std::vector<Fraction> v(cols);
    v[free] = Fraction{1, 1};
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      v[pivot_col[r]] = Fraction{0, 1} - a[r][free];
    basis.push_back(v);
  }
  return basis;
}

/// Decides the condition over all integer exponents when every eigenvalue is
/// an integer. Sign constraints are irrelevant: doubling a solution makes
/// every exponent even.
std::optional<bool> exact_condition(Variant variant, const RealVector& lambdas) {
  std::vector<long long> ints;
  for (double x : lambdas) {
    const double r = std::round(x);
    if (r == 0.0 || std::abs(r) > 1e9 || std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x)))
      return std::nullopt;
    ints.push_back(static_cast<long long>(std::abs(r)));
  }
  // Unknown order: eq3_3 (s, a, b, c), eq3_4 (s, t, a, b); the left-hand
  // side carries + signs.
  const int lhs_count = variant == Variant::eq3_3 ? 1 : 2;
  std::vector<long long> primes;
  std::vector<std::vector<std::pair<long long, int>>> fac;
  for (long long v : ints) {
    fac.push_back(factorize(v));
    for (auto [p, e] : fac.back())
      if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
  }
  std::vector<std::vector<Fraction>> a;
  std::vector<Fraction> sum_row(4);
  for (int i = 0; i < 4; ++i) sum_row[i] = Fraction{i < lhs_count ? 1 : -1, 1};
  a.push_back(sum_row);
  for (long long p : primes) {
    std::vector<Fraction> r(4);
    for (int i = 0; i < 4; ++i) {
      long long e = 0;
      for (auto [q, k] : fac[i])
        if (q == p) e = k;
      r[i] = Fraction{i < lhs_count ? e : -e, 1};
    }
    a.push_back(r);
  }
  const auto basis = kernel(a, 4);
  if (variant == Variant::eq3_3) {
    for (const auto& v : basis)
      if (!v[0].zero()) return false;
    return true;
  }
  // Project the kernel onto (s, t) and look for a nonzero point of the
  // closed first quadrant.
  std::vector<std::pair<double, double>> proj;
  for (const auto& v : basis) {
    const double s = static_cast<double>(v[0].num) / v[0].den;
    const double t = static_cast<double>(v[1].num) / v[1].den;
    if (s != 0.0 || t != 0.0) proj.emplace_back(s, t);
  }
  if (proj.empty()) return true;
  const auto [p, q] = proj.front();
  for (const auto& [s, t] : proj)
    if (std::abs(p * t - q * s) > 1e-12) return false;  // spans the plane
  return !(p * q >= 0.0);
}

}  // namespace

ConditionResult check_condition(Variant variant, const RealVector& lambdas, int bound) {
  if (variant != Variant::eq3_3 && variant != Variant::eq3_4)
    throw Error("eigenvalue conditions exist for eq3_3 and eq3_4 only");
  if (lambdas.size() != 4) throw Error("the condition needs four eigenvalues");
  if (bound < 1) throw Error("exponent bound must be positive");
  std::vector<LogValue> l;
  for (double x : lambdas) {
    if (x == 0.0 || !std::isfinite(x)) throw Error("eigenvalues must be finite and nonzero");
    l.push_back({std::log(std::abs(x)), x < 0 ? 1 : 0});
  }
  ConditionResult out;
  if (const auto exact = exact_condition(variant, lambdas)) {
    out.exact = true;
    out.holds = *exact;
    if (!out.holds) out.exponents = bounded_search(variant, l, std::max(bound, 24));
    return out;
  }
  out.exponents = bounded_search(variant, l, bound);
  out.holds = out.exponents.empty();
  return out;
}

RealMatrix chain_power(const RealMatrix& h, int k) {
  if (k < 1) throw Error("a chain needs at least one copy");
  RealMatrix p = matrix_power(h, k);
  // Keep symmetric inputs exactly symmetric despite rounding.
  if (max_abs_diff(h, h.transpose()) == 0.0) p = 0.5 * (p + p.transpose());
  return p;
}

namespace {

// ---------------------------------------------------------------------------
// Diagonal interpolation engine shared by all lemma variants.
//
// Instance values span (max |mu|)^{mk} down to (min |mu|)^{mk}; the strata
// behind the small end sit far below double rounding of the large end once
// m k reaches a few dozen. Instances are therefore evaluated, and the
// Vandermonde system solved, in 50-digit arithmetic.

using WideReal = boost::multiprecision::cpp_bin_float_50;
using Wide = boost::multiprecision::cpp_complex_50;

Wide widen(const Scalar& x) { return Wide(WideReal(x.real()), WideReal(x.imag())); }

Scalar narrow(const Wide& x) {
  return Scalar(static_cast<double>(x.real()), static_cast<double>(x.imag()));
}

double modulus(const Wide& x) { return static_cast<double>(abs(x)); }

Wide wide_power(const Wide& x, int n) {
  Wide p = 1;
  for (int i = 0; i < n; ++i) p *= x;
  return p;
}

/// Dense value table of a vertex: d^arity entries, first port most
/// significant.
using Table = std::vector<Wide>;

Table table_of(const SymmetricSignature& s) {
  const int d = s.domain(), r = s.arity();
  std::size_t n = 1;
  for (int i = 0; i < r; ++i) n *= d;
  Table t(n);
  std::vector<int> colors(r);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t x = idx;
    for (int p = r - 1; p >= 0; --p) {
      colors[p] = static_cast<int>(x % d);
      x /= d;
    }
    t[idx] = widen(s.value(colors));
  }
  return t;
}

/// Brute-force Holant in wide arithmetic; `marked` vertices take `marked_table`.
Wide wide_holant(const SignatureGrid& grid, const std::vector<int>& marked,
                 const Table& marked_table, const OracleOptions& opts) {
  grid.validate();
  if (!grid.dangling().empty()) throw Error("interpolation needs a closed grid");
  const int d = grid.domain();
  const std::size_t nv = grid.vertex_count(), ne = grid.edges().size();
  std::uint64_t total = 1;
  for (std::size_t e = 0; e < ne; ++e) {
    if (total > opts.max_assignments / static_cast<std::uint64_t>(d))
      throw Error("instance too large for the oracle");
    total *= static_cast<std::uint64_t>(d);
  }
  std::vector<Table> tables(nv);
  std::vector<bool> is_marked(nv, false);
  for (int v : marked) is_marked[v] = true;
  std::vector<std::vector<int>> port_edge(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    const SymmetricSignature& s = grid.signature(static_cast<int>(v));
    port_edge[v].assign(s.arity(), -1);
    tables[v] = is_marked[v] ? marked_table : table_of(s);
  }
  for (std::size_t e = 0; e < ne; ++e) {
    const Edge& ed = grid.edges()[e];
    port_edge[ed.a.vertex][ed.a.port] = static_cast<int>(e);
    port_edge[ed.b.vertex][ed.b.port] = static_cast<int>(e);
  }
  std::vector<int> colors(ne, 0);
  Wide sum = 0;
  for (std::uint64_t a = 0; a < total; ++a) {
    std::uint64_t x = a;
    for (std::size_t e = ne; e-- > 0;) {
      colors[e] = static_cast<int>(x % d);
      x /= d;
    }
    Wide term = 1;
    for (std::size_t v = 0; v < nv && term != Wide(0); ++v) {
      std::size_t idx = 0;
      for (int e : port_edge[v]) idx = idx * d + colors[e];
      term *= tables[v][idx];
    }
    sum += term;
  }
  return sum;
}

void compositions(int m, const std::vector<int>& support, std::size_t pos, std::vector<int>& cur,
                  std::vector<std::vector<int>>& out) {
  if (pos + 1 == support.size()) {
    cur[support[pos]] = m;
    out.push_back(cur);
    cur[support[pos]] = 0;
    return;
  }
  for (int n = 0; n <= m; ++n) {
    cur[support[pos]] = n;
    compositions(m - n, support, pos + 1, cur, out);
  }
  cur[support[pos]] = 0;
}

/// Node of composition t: prod_c (mu_c / mu_ref)^{t_c}.
Wide node_of(const std::vector<int>& t, const std::vector<Wide>& mu, int ref) {
  Wide x = 1;
  for (std::size_t c = 0; c < mu.size(); ++c)
    if (t[c] > 0) x *= wide_power(mu[c] / mu[ref], t[c]);
  return x;
}

InterpolationPlan make_plan(int m, const std::vector<Wide>& mu, int ref) {
  InterpolationPlan plan;
  plan.m = m;
  plan.reference_color = ref;
  const int d = static_cast<int>(mu.size());
  std::vector<int> support;
  for (int c = 0; c < d; ++c)
    if (mu[c] != Wide(0)) support.push_back(c);
  std::vector<int> cur(d, 0);
  compositions(m, support, 0, cur, plan.compositions);
  for (const auto& t : plan.compositions) {
    const Scalar x = narrow(node_of(t, mu, ref));
    plan.nodes.push_back(x);
    bool merged = false;
    for (std::size_t g = 0; g < plan.distinct_nodes.size(); ++g) {
      const Scalar y = plan.distinct_nodes[g];
      if (std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y))) {
        plan.merged_columns[g].push_back(static_cast<int>(plan.nodes.size()) - 1);
        merged = true;
        break;
      }
    }
    if (!merged) {
      plan.distinct_nodes.push_back(x);
      plan.merged_columns.push_back({static_cast<int>(plan.nodes.size()) - 1});
    }
  }
  return plan;
}

/// max_i prod_{j != i} (1 + |y_j|) / |y_i - y_j| times the max row sum of
/// the power matrix [y_g^k], k = 1..n.
double condition_estimate(const std::vector<Scalar>& y) {
  const std::size_t n = y.size();
  double inv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) p *= (1.0 + std::abs(y[j])) / std::abs(y[i] - y[j]);
    inv = std::max(inv, p);
  }
  double norm = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double row = 0.0;
    for (const Scalar& v : y) row += std::pow(std::abs(v), static_cast<double>(k));
    norm = std::max(norm, row);
  }
  return inv * norm;
}

/// Solves sum_g R_g y_g^k = w_k (k = 1..n) and returns sum_g h_g R_g. With
/// b_g = R_g y_g this is the primal Vandermonde system sum_g b_g y_g^j =
/// w_{j+1}, solved by Newton-style Bjorck-Pereyra recurrences on nodes
/// sorted by modulus.
Wide solve_weighted_sum(const std::vector<Wide>& y, const std::vector<Wide>& h,
                        const std::vector<Wide>& w) {
  const std::size_t n = y.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return modulus(y[a]) < modulus(y[b]);
  });
  std::vector<Wide> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = y[order[i]];
  std::vector<Wide> f = w;
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t i = n - 1; i > k; --i) f[i] -= x[k] * f[i - 1];
  for (std::size_t k = n - 1; k-- > 0;) {
    for (std::size_t i = k + 1; i < n; ++i) f[i] /= x[i] - x[i - k - 1];
    for (std::size_t i = k; i + 1 < n; ++i) f[i] -= f[i + 1];
  }
  Wide total = 0;
  for (std::size_t i = 0; i < n; ++i) total += h[order[i]] * f[i] / x[i];
  return total;
}

using Weight = std::function<Wide(const std::vector<int>&)>;
/// Instance k: the grid as recorded in the plan and the wide value table of
/// the marked signature.
using Instance = std::function<std::pair<SignatureGrid, Table>(int)>;

InterpolationResult interpolate(const SignatureGrid& grid, const std::vector<int>& marked,
                                const std::vector<Wide>& mu, int ref, const Weight& weight,
                                const Instance& instance, const OracleOptions& opts) {
  const int m = static_cast<int>(marked.size());
  InterpolationResult out;
  out.plan = make_plan(m, mu, ref);
  const InterpolationPlan& plan = out.plan;
  const std::size_t n = plan.distinct_nodes.size();

  std::vector<Wide> h(n), y(n);
  for (std::size_t g = 0; g < n; ++g) {
    const auto& cols = plan.merged_columns[g];
    h[g] = weight(plan.compositions[cols.front()]);
    y[g] = node_of(plan.compositions[cols.front()], mu, ref);
    for (int col : cols) {
      const Wide hc = weight(plan.compositions[col]);
      if (modulus(hc - h[g]) > 1e-9 * std::max(1.0, modulus(h[g])))
        throw Error("interpolation nodes merge strata with different target weights; the "
                    "eigenvalue condition does not hold for this instance");
    }
  }
  out.condition = condition_estimate(plan.distinct_nodes);
  if (!(out.condition <= kMaxCondition))
    throw Error("Vandermonde system too ill-conditioned (estimate " +
                std::to_string(out.condition) + ", " + std::to_string(n) + " nodes)");

  // Instances are independent; each worker takes every threads-th k.
  std::vector<Table> tables(n);
  for (std::size_t k = 1; k <= n; ++k) {
    auto [g, t] = instance(static_cast<int>(k));
    out.plan.instances.push_back(std::move(g));
    tables[k - 1] = std::move(t);
  }
  std::vector<Wide> z(n);
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  OracleOptions inner = opts;
  inner.threads = 1;
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned id) {
    try {
      for (std::size_t k = id; k < n; k += threads) z[k] = wide_holant(grid, marked, tables[k], inner);
    } catch (...) {
      errors[id] = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) pool.emplace_back(work, id);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<Wide> w(n);
  for (std::size_t k = 1; k <= n; ++k) {
    out.instance_values.push_back(narrow(z[k - 1]));
    w[k - 1] = z[k - 1] / wide_power(mu[ref], m * static_cast<int>(k));
  }
  out.value = narrow(solve_weighted_sum(y, h, w));
  return out;
}

void check_marked(const SignatureGrid& grid, const std::vector<int>& marked, int arity) {
  std::vector<bool> seen(grid.vertex_count(), false);
  for (int v : marked) {
    if (v < 0 || v >= static_cast<int>(grid.vertex_count()))
      throw Error("marked vertex out of range");
    if (seen[v]) throw Error("vertex marked twice");
    seen[v] = true;
    if (grid.signature(v).arity() != arity)
      throw Error("marked vertex " + std::to_string(v) + " must have arity " +
                  std::to_string(arity));
  }
}

SignatureGrid with_marked(const SignatureGrid& grid, const std::vector<int>& marked,
                          const SymmetricSignature& sig) {
  SignatureGrid g = grid;
  auto shared = std::make_shared<const SymmetricSignature>(sig);
  for (int v : marked) g.set_signature(v, shared);
  return g;
}

/// Instance k of a chain gadget: H^k in double for the record, and in wide
/// arithmetic for the evaluation.
Instance chain_instances(const SignatureGrid& grid, const std::vector<int>& marked,
                         const RealMatrix& h) {
  const std::size_t d = h.rows();
  return [&grid, &marked, &h, d](int k) {
    std::vector<WideReal> base(d * d), p(d * d), next(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) base[i * d + j] = p[i * d + j] = WideReal(h(i, j));
    for (int step = 1; step < k; ++step) {
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          WideReal s = 0;
          for (std::size_t l = 0; l < d; ++l) s += p[i * d + l] * base[l * d + j];
          next[i * d + j] = s;
        }
      std::swap(p, next);
    }
    Table t(d * d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) t[i * d + j] = Wide((p[i * d + j] + p[j * d + i]) / 2);
    return std::make_pair(
        with_marked(grid, marked, SymmetricSignature::from_matrix(chain_power(h, k))), t);
  };
}

/// Eigenvalues of a symmetric matrix in wide arithmetic (cyclic Jacobi),
/// matched to the double eigenvalues `approx` by proximity.
std::vector<Wide> wide_eigenvalues(const RealMatrix& h, const RealVector& approx) {
  const std::size_t n = h.rows();
  std::vector<std::vector<WideReal>> a(n, std::vector<WideReal>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (WideReal(h(i, j)) + WideReal(h(j, i))) / 2;
  const WideReal eps("1e-45");
  for (int sweep = 0; sweep < 100; ++sweep) {
    WideReal off = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        total += a[i][j] * a[i][j];
        if (i != j) off += a[i][j] * a[i][j];
      }
    if (off <= eps * eps * total) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a[p][q] == 0) continue;
        const WideReal theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const WideReal t = (theta >= 0 ? 1 : -1) / (abs(theta) + sqrt(theta * theta + 1));
        const WideReal c = 1 / sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const WideReal akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const WideReal apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<WideReal> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a[i][i];
  std::vector<Wide> out;
  std::vector<bool> used(n, false);
  for (double x : approx) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && (best == n || abs(diag[i] - WideReal(x)) < abs(diag[best] - WideReal(x))))
        best = i;
    used[best] = true;
    out.push_back(Wide(diag[best]));
  }
  return out;
}

/// Color of largest |mu|: every node then lies in the closed unit disk.
int largest_modulus(const std::vector<Wide>& mu) {
  int best = 0;
  for (int c = 1; c < static_cast<int>(mu.size()); ++c)
    if (modulus(mu[c]) > modulus(mu[best])) best = c;
  return best;
}

}  // namespace

InterpolationResult interpolate_restricted_equality(const SignatureGrid& grid,
                                                    const std::vector<int>& marked,
                                                    const RealMatrix& h, Variant variant,
                                                    const OracleOptions& opts) {
  if (variant != Variant::eq3 && variant != Variant::eq3_2)
    throw Error("restricted-equality interpolation takes eq3 or eq3_2");
  const int d = grid.domain();
  if (static_cast<int>(h.rows()) != d || !h.square()) throw Error("H must be d x d");
  check_marked(grid, marked, 2);
  const int zeros = variant == Variant::eq3 ? 1 : 2;
  if (d <= zeros) throw Error("domain too small for this restricted equality");
  std::vector<Wide> mu(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (i != j && h(i, j) != 0.0) throw Error("H must be diagonal");
      if (i == j) {
        if ((i < zeros) != (h(i, i) == 0.0))
          throw Error(std::string("H must have the form diag(") +
                      (zeros == 1 ? "0, l1, ..." : "0, 0, l, ...") + ") with nonzero l's");
        mu[i] = WideReal(h(i, i));
      }
    }
  if (marked.empty()) {
    InterpolationResult out;
    out.value = brute_force_holant(grid, opts);
    return out;
  }
  return interpolate(
      grid, marked, mu, largest_modulus(mu), [](const std::vector<int>&) { return Wide(1); },
      chain_instances(grid, marked, h), opts);
}

InterpolationResult interpolate_from_rank4(const SignatureGrid& grid,
                                           const std::vector<int>& marked,
                                           const RealMatrix& h, Variant variant,
                                           const std::vector<int>& distinguished,
                                           const OracleOptions& opts) {
  if (variant != Variant::eq3_3 && variant != Variant::eq3_4)
    throw Error("rank-4 interpolation takes eq3_3 or eq3_4");
  const int d = grid.domain();
  if (d != 4 || h.rows() != 4 || !h.square()) throw Error("rank-4 interpolation needs domain 4");
  check_marked(grid, marked, 2);
  const std::size_t want = variant == Variant::eq3_3 ? 1 : 2;
  if (distinguished.size() != want)
    throw Error("eq3_3 distinguishes one eigenvalue, eq3_4 two");
  for (int i : distinguished)
    if (i < 0 || i > 3) throw Error("distinguished index out of range");

  const EigenResult e = eig_sym(h);
  if (rank_with_tolerance(h) != 4) throw Error("H must have rank 4");
  std::vector<int> order = distinguished;
  for (int i = 0; i < 4; ++i)
    if (std::find(distinguished.begin(), distinguished.end(), i) == distinguished.end())
      order.push_back(i);
  if (order.size() != 4) throw Error("repeated distinguished index");
  RealMatrix q(4, 4);
  RealVector lambdas(4);
  for (int r = 0; r < 4; ++r) {
    q.set_row(r, e.q.row(order[r]));
    lambdas[r] = e.lambdas[order[r]];
  }

  const int m = static_cast<int>(marked.size());
  const ConditionResult cond = check_condition(variant, lambdas, std::max(m, 1));
  if (!cond.holds) {
    std::string w;
    for (int x : cond.exponents) w += (w.empty() ? "" : ",") + std::to_string(x);
    throw Error("eigenvalue condition " + std::string(to_string(variant)) +
                " fails (exponents " + (w.empty() ? "unbounded" : w) + ")");
  }
  InterpolationResult out;
  if (m == 0) {
    out.value = brute_force_holant(transform_grid(grid, q), opts);
    out.q = q;
    return out;
  }
  const std::vector<Wide> mu = wide_eigenvalues(h, lambdas);
  out = interpolate(
      grid, marked, mu, largest_modulus(mu),
      [&](const std::vector<int>& t) {
        for (std::size_t c = 0; c < want; ++c)
          if (t[c] != 0) return Wide(0);
        return Wide(1);
      },
      chain_instances(grid, marked, h), opts);
  out.q = q;
  return out;
}

InterpolationResult realify_unaries(const SignatureGrid& grid, const std::vector<int>& marked,
                                    const OracleOptions& opts) {
  check_marked(grid, marked, 1);
  const int d = grid.domain();
  const int m = static_cast<int>(marked.size());
  if (m == 0) {
    InterpolationResult out;
    out.value = brute_force_holant(grid, opts);
    return out;
  }
  const Vector u = grid.signature(marked.front()).as_vector();
  for (int v : marked)
    if (max_abs_diff(grid.signature(v), grid.signature(marked.front())) != 0.0)
      throw Error("all marked unaries must be identical");
  int ref = -1;
  for (int c = d - 1; c >= 0; --c)
    if (u[c] != Scalar(0.0)) {
      ref = c;
      break;
    }
  if (ref < 0) {
    InterpolationResult out;
    out.value = 0.0;  // u = 0 kills every term
    return out;
  }
  if (d > 5) throw Error("unary realification supports domains up to 5");
  // Distinct prime bases on the other colors, largest first: for d = 3 and
  // reference color 2 this is the unary [3^k, 2^k, 1].
  static const int kPrimes[] = {2, 3, 5, 7};
  std::vector<Wide> mu(d, Wide(1));
  std::vector<int> base(d, 1);
  int next = d - 2;
  for (int c = 0; c < d; ++c)
    if (c != ref) {
      base[c] = kPrimes[next--];
      mu[c] = base[c];
    }
  std::vector<Wide> ratio(d);
  for (int c = 0; c < d; ++c) ratio[c] = widen(u[c]) / widen(u[ref]);
  InterpolationResult out = interpolate(
      grid, marked, mu, ref,
      [&](const std::vector<int>& t) {
        Wide w = 1;
        for (int c = 0; c < d; ++c) w *= wide_power(ratio[c], t[c]);
        return w;
      },
      [&](int k) {
        Vector probe(d);
        Table t(d);
        for (int c = 0; c < d; ++c) {
          t[c] = wide_power(Wide(base[c]), k);
          probe[c] = static_cast<double>(t[c].real());
        }
        return std::make_pair(with_marked(grid, marked, SymmetricSignature::unary(probe)), t);
      },
      opts);
  out.value = narrow(widen(out.value) * wide_power(widen(u[ref]), m));
  return out;
}

// ---------------------------------------------------------------------------
// Tractable evaluators.

namespace {

struct Axis {
  Vector v;
  double weight;
};

struct Plane {
  Vector beta;  // T^T (e_p + i e_{p+1}); the term is w (beta^3 + conj(beta)^3)
  double weight;
};

void blocks_of(const Witness& w, std::vector<Axis>& axes, std::vector<Plane>& planes) {
  const int d = w.domain();
  const RealVector& c = w.coefficients;
  auto axis = [&](int row, double weight) {
    axes.push_back({to_complex(w.t.row(row)), weight});
  };
  auto plane = [&](int row, double weight) {
    Vector b(d);
    for (int j = 0; j < d; ++j) b[j] = Scalar(w.t(row, j), w.t(row + 1, j));
    planes.push_back({b, weight});
  };
  // Validates the coefficient count.
  (void)canonical_signature(w.form, d, c);
  switch (w.form) {
    case Form::orthogonal_cubes:
    case Form::d4_form1:
      for (int k = 0; k < d; ++k) axis(k, c[k]);
      break;
    case Form::conjugate_pair:
      if (d == 2) {
        plane(0, c[0]);
      } else {
        plane(0, c[0] / c[2]);
        axis(2, c[1] / c[2]);
      }
      break;
    case Form::d4_form2:
      plane(0, 1.0 / c[0]);
      axis(2, c[1] / c[0]);
      axis(3, c[2] / c[0]);
      break;
    case Form::d4_form3:
      plane(0, c[0]);
      plane(2, c[1]);
      break;
  }
}

}  // namespace

Scalar eval_tractable(const Witness& w, const SignatureGrid& grid) {
  grid.validate();
  if (!grid.dangling().empty()) throw Error("eval_tractable needs a closed grid");
  if (grid.domain() != w.domain()) throw Error("witness and grid domains differ");
  if (orthogonality_residual(w.t) > tolerances().orth) throw Error("witness T is not orthogonal");

  const std::size_t nv = grid.vertex_count();
  const SymmetricSignature f = reconstruct(w);
  std::vector<bool> ternary(nv, false);
  Scalar constant = 1.0;
  for (std::size_t v = 0; v < nv; ++v) {
    const SymmetricSignature& s = grid.signature(static_cast<int>(v));
    if (s.arity() == 3) {
      const double scale = std::max(1.0, f.max_abs());
      if (max_abs_diff(s, f) > tolerances().eq * scale)
        throw Error("ternary vertex " + std::to_string(v) + " does not carry the witness signature");
      ternary[v] = true;
    } else if (s.arity() == 0) {
      constant *= s[0];
    } else if (s.arity() != 1) {
      throw Error("eval_tractable accepts only ternary and unary vertices");
    }
  }

  std::vector<Axis> axes;
  std::vector<Plane> planes;
  blocks_of(w, axes, planes);

  // Union-find over ternary-ternary edges; unary-unary edges are constants.
  std::vector<int> parent(nv);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const Edge& e : grid.edges()) {
    const int a = e.a.vertex, b = e.b.vertex;
    if (ternary[a] && ternary[b]) parent[find(a)] = find(b);
    if (!ternary[a] && !ternary[b])
      constant *= bilinear_dot(grid.signature(a).as_vector(), grid.signature(b).as_vector());
  }

  struct Component {
    std::vector<int> vertices;
    std::vector<std::pair<int, int>> inner;           // ternary-ternary edges
    std::vector<std::pair<int, Vector>> unary_edges;  // (ternary vertex, unary)
  };
  std::vector<int> comp_of(nv, -1);
  std::vector<Component> comps;
  for (std::size_t v = 0; v < nv; ++v) {
    if (!ternary[v]) continue;
    const int r = find(static_cast<int>(v));
    if (comp_of[r] < 0) {
      comp_of[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comp_of[v] = comp_of[r];
    comps[comp_of[v]].vertices.push_back(static_cast<int>(v));
  }
  for (const Edge& e : grid.edges()) {
    const int a = e.a.vertex, b = e.b.vertex;
    if (ternary[a] && ternary[b]) {
      comps[comp_of[a]].inner.emplace_back(a, b);
    } else if (ternary[a] != ternary[b]) {
      const int t = ternary[a] ? a : b, u = ternary[a] ? b : a;
      comps[comp_of[t]].unary_edges.emplace_back(t, grid.signature(u).as_vector());
    }
  }

  Scalar total = constant;
  for (const Component& comp : comps) {
    Scalar value = 0.0;
    const double n = static_cast<double>(comp.vertices.size());
    for (const Axis& ax : axes) {
      Scalar term = std::pow(ax.weight, n);
      for (const auto& [t, u] : comp.unary_edges) term *= bilinear_dot(ax.v, u);
      value += term;
    }
    // 2-coloring of the component: side[v] picks beta or conj(beta).
    std::vector<int> side(nv, -1);
    bool bipartite = true;
    {
      std::vector<std::vector<int>> adj(nv);
      for (const auto& [a, b] : comp.inner) {
        if (a == b) bipartite = false;
        adj[a].push_back(b);
        adj[b].push_back(a);
      }
      std::vector<int> stack{comp.vertices.front()};
      side[comp.vertices.front()] = 0;
      while (!stack.empty() && bipartite) {
        const int v = stack.back();
        stack.pop_back();
        for (int x : adj[v]) {
          if (side[x] < 0) {
            side[x] = 1 - side[v];
            stack.push_back(x);
          } else if (side[x] == side[v]) {
            bipartite = false;
          }
        }
      }
    }
    if (bipartite) {
      const Scalar pair_dot = 2.0;  // <beta, conj(beta)> for unit-row planes
      for (const Plane& pl : planes) {
        const Vector beta_bar = conj(pl.beta);
        for (int flip = 0; flip < 2; ++flip) {
          Scalar term = std::pow(pl.weight, n) * std::pow(pair_dot, static_cast<double>(comp.inner.size()));
          for (const auto& [t, u] : comp.unary_edges)
            term *= bilinear_dot((side[t] ^ flip) == 0 ? pl.beta : beta_bar, u);
          value += term;
        }
      }
    }
    total *= value;
  }
  return total;
}

}  // namespace holant
