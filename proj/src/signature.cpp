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

#include "holant/signature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace holant {

namespace {

constexpr std::size_t kMaxSequenceTable = std::size_t{1} << 22;

std::uint64_t ipow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

void check_same_shape(const SymmetricSignature& f, const SymmetricSignature& g) {
  if (f.domain() != g.domain() || f.arity() != g.arity())
    throw Error("signature shape mismatch: (" + std::to_string(f.domain()) +
                "," + std::to_string(f.arity()) + ") vs (" +
                std::to_string(g.domain()) + "," + std::to_string(g.arity()) +
                ")");
}

template <typename T>
SymmetricSignature transform_impl(const Matrix<T>& t,
                                  const SymmetricSignature& f) {
  const int d = f.domain();
  const int r = f.arity();
  if (t.rows() != static_cast<std::size_t>(d) ||
      t.cols() != static_cast<std::size_t>(d))
    throw Error("transform is " + std::to_string(t.rows()) + "x" +
                std::to_string(t.cols()) + " but signature domain is " +
                std::to_string(d));
  const IndexTable& tab = f.table();
  std::vector<Scalar> out(tab.size());
  if (r == 0) {
    out[0] = f[0];
    return SymmetricSignature(d, r, std::move(out));
  }
  std::vector<int> x(r);
  // Depth-first over input sequences y, carrying the partial product of
  // transform entries and the partial multiset code of y.
  auto accumulate = [&](auto&& self, int pos, Scalar partial,
                        std::uint32_t code) -> Scalar {
    if (pos == r) return partial * f[tab.rank_of_code(code)];
    Scalar acc = 0.0;
    for (int y = 0; y < d; ++y) {
      const T coeff = t(x[pos], y);
      if (coeff == T{}) continue;
      acc += self(self, pos + 1, partial * coeff, code + tab.color_weight(y));
    }
    return acc;
  };
  for (std::size_t i = 0; i < tab.size(); ++i) {
    const MultiIndex& c = tab.counts(i);
    int pos = 0;
    for (int color = 0; color < d; ++color)
      for (int k = 0; k < c[color]; ++k) x[pos++] = color;
    out[i] = accumulate(accumulate, 0, Scalar(1.0), 0);
  }
  return SymmetricSignature(d, r, std::move(out));
}

template <typename V>
SymmetricSignature contract_impl(const SymmetricSignature& f, const V& u) {
  if (f.arity() < 1) throw Error("cannot contract a unary into arity 0");
  if (u.size() != static_cast<std::size_t>(f.domain()))
    throw Error("unary length " + std::to_string(u.size()) +
                " does not match domain " + std::to_string(f.domain()));
  const IndexTable& big = f.table();
  const IndexTable& small = index_table(f.domain(), f.arity() - 1);
  std::vector<Scalar> out(small.size());
  for (std::size_t i = 0; i < small.size(); ++i) {
    const std::uint32_t base = big.code(small.counts(i));
    Scalar acc = 0.0;
    for (int j = 0; j < f.domain(); ++j) {
      if (u[j] == typename V::value_type{}) continue;
      acc += Scalar(u[j]) * f[big.rank_of_code(base + big.color_weight(j))];
    }
    out[i] = acc;
  }
  return SymmetricSignature(f.domain(), f.arity() - 1, std::move(out));
}

}  // namespace

IndexTable::IndexTable(int domain, int arity) : domain_(domain), arity_(arity) {
  if (domain < 1) throw Error("domain size must be positive");
  if (arity < 0) throw Error("arity must be non-negative");
  const std::uint64_t codes = ipow(static_cast<std::uint64_t>(arity) + 1, domain);
  if (codes > (std::uint64_t{1} << 26))
    throw Error("domain/arity too large for symmetric storage");
  weights_.resize(domain);
  for (int j = 0; j < domain; ++j) weights_[j] = static_cast<std::uint32_t>(ipow(arity + 1, j));
  by_code_.assign(codes, static_cast<std::size_t>(-1));

  // Nondecreasing sequences in lexicographic order.
  std::vector<int> seq(arity, 0);
  while (true) {
    MultiIndex c(domain, 0);
    for (int s : seq) ++c[s];
    by_code_[code(c)] = counts_.size();
    counts_.push_back(std::move(c));
    int pos = arity - 1;
    while (pos >= 0 && seq[pos] == domain - 1) --pos;
    if (pos < 0) break;
    ++seq[pos];
    for (int k = pos + 1; k < arity; ++k) seq[k] = seq[pos];
  }

  const std::uint64_t nseq = ipow(domain, arity);
  if (nseq <= kMaxSequenceTable) {
    seq_.resize(nseq);
    std::vector<int> digits(arity, 0);
    for (std::uint64_t s = 0; s < nseq; ++s) {
      std::uint32_t cd = 0;
      for (int p = 0; p < arity; ++p) cd += weights_[digits[p]];
      seq_[s] = static_cast<std::uint32_t>(by_code_[cd]);
      for (int p = arity - 1; p >= 0; --p) {
        if (++digits[p] < domain) break;
        digits[p] = 0;
      }
    }
  }
}

std::uint32_t IndexTable::code(const MultiIndex& counts) const {
  std::uint32_t c = 0;
  for (int j = 0; j < domain_; ++j) c += static_cast<std::uint32_t>(counts[j]) * weights_[j];
  return c;
}

std::size_t IndexTable::rank(const MultiIndex& counts) const {
  if (counts.size() != static_cast<std::size_t>(domain_))
    throw Error("multi-index length does not match domain");
  int total = 0;
  for (int c : counts) {
    if (c < 0) throw Error("negative color count");
    total += c;
  }
  if (total != arity_) throw Error("multi-index does not sum to arity");
  return by_code_[code(counts)];
}

const IndexTable& index_table(int domain, int arity) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<IndexTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{domain, arity}];
  if (!slot) slot = std::make_unique<IndexTable>(domain, arity);
  return *slot;
}

std::size_t multiset_count(int domain, int arity) {
  // C(d + r - 1, r)
  std::uint64_t num = 1;
  for (int i = 1; i <= arity; ++i) num = num * (domain + i - 1) / i;
  return static_cast<std::size_t>(num);
}

SymmetricSignature::SymmetricSignature(int domain, int arity)
    : domain_(domain), arity_(arity),
      entries_(index_table(domain, arity).size(), Scalar(0.0)) {}

SymmetricSignature::SymmetricSignature(int domain, int arity,
                                       std::vector<Scalar> entries)
    : domain_(domain), arity_(arity), entries_(std::move(entries)) {
  const std::size_t expected = index_table(domain, arity).size();
  if (entries_.size() != expected)
    throw Error("signature with domain " + std::to_string(domain) +
                " and arity " + std::to_string(arity) + " needs " +
                std::to_string(expected) + " entries, got " +
                std::to_string(entries_.size()));
  for (const auto& e : entries_)
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw Error("signature entries must be finite");
}

SymmetricSignature SymmetricSignature::equality(int domain, int arity) {
  const IndexTable& tab = index_table(domain, arity);
  std::vector<Scalar> e(tab.size());
  for (std::size_t i = 0; i < tab.size(); ++i)
    e[i] = std::count(tab.counts(i).begin(), tab.counts(i).end(), arity) == 1 ||
                   arity == 0
               ? 1.0
               : 0.0;
  return SymmetricSignature(domain, arity, std::move(e));
}

SymmetricSignature SymmetricSignature::exact_one(int arity) {
  const IndexTable& tab = index_table(2, arity);
  std::vector<Scalar> e(tab.size());
  for (std::size_t i = 0; i < tab.size(); ++i) e[i] = tab.counts(i)[1] == 1 ? 1.0 : 0.0;
  return SymmetricSignature(2, arity, std::move(e));
}

SymmetricSignature SymmetricSignature::all_distinct(int domain, int arity) {
  const IndexTable& tab = index_table(domain, arity);
  std::vector<Scalar> e(tab.size());
  for (std::size_t i = 0; i < tab.size(); ++i) {
    const auto& c = tab.counts(i);
    e[i] = std::all_of(c.begin(), c.end(), [](int k) { return k <= 1; }) ? 1.0 : 0.0;
  }
  return SymmetricSignature(domain, arity, std::move(e));
}

SymmetricSignature SymmetricSignature::from_matrix(const ComplexMatrix& m) {
  if (!m.square()) throw Error("binary signature needs a square matrix");
  const int d = static_cast<int>(m.rows());
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double scale = std::max({1.0, std::abs(m(i, j)), std::abs(m(j, i))});
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale)
        throw Error("binary signature matrix is not symmetric");
    }
  const IndexTable& tab = index_table(d, 2);
  std::vector<Scalar> e(tab.size());
  for (std::size_t k = 0; k < tab.size(); ++k) {
    int a = -1, b = -1;
    for (int c = 0; c < d; ++c)
      for (int n = 0; n < tab.counts(k)[c]; ++n) (a < 0 ? a : b) = c;
    e[k] = m(a, b);
  }
  return SymmetricSignature(d, 2, std::move(e));
}

SymmetricSignature SymmetricSignature::from_matrix(const RealMatrix& m) {
  return from_matrix(holant::to_complex(m));
}

SymmetricSignature SymmetricSignature::unary(const Vector& u) {
  return SymmetricSignature(static_cast<int>(u.size()), 1, u);
}

Scalar SymmetricSignature::at(const MultiIndex& counts) const {
  return entries_[table().rank(counts)];
}

Scalar SymmetricSignature::value(std::span<const int> colors) const {
  if (colors.size() != static_cast<std::size_t>(arity_))
    throw Error("input sequence length does not match arity");
  MultiIndex c(domain_, 0);
  for (int x : colors) {
    if (x < 0 || x >= domain_) throw Error("color out of range");
    ++c[x];
  }
  return at(c);
}

bool SymmetricSignature::is_real(double tol_im) const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [&](const Scalar& s) { return std::abs(s.imag()) <= tol_im; });
}

double SymmetricSignature::max_abs() const { return holant::max_abs(entries_); }

SymmetricSignature SymmetricSignature::conj() const {
  std::vector<Scalar> e(entries_.size());
  std::transform(entries_.begin(), entries_.end(), e.begin(),
                 [](const Scalar& s) { return std::conj(s); });
  return SymmetricSignature(domain_, arity_, std::move(e));
}

ComplexMatrix SymmetricSignature::as_matrix() const {
  if (arity_ != 2) throw Error("only binary signatures are matrices");
  ComplexMatrix m(domain_, domain_);
  for (int a = 0; a < domain_; ++a)
    for (int b = 0; b < domain_; ++b) {
      const int colors[2] = {a, b};
      m(a, b) = value(colors);
    }
  return m;
}

RealMatrix SymmetricSignature::as_real_matrix() const {
  return real_part(as_matrix());
}

Vector SymmetricSignature::as_vector() const {
  if (arity_ != 1) throw Error("only unary signatures are vectors");
  return entries_;
}

SymmetricSignature SymmetricSignature::chop(double threshold) const {
  std::vector<Scalar> e(entries_);
  for (auto& x : e) {
    double re = std::abs(x.real()) <= threshold ? 0.0 : x.real();
    double im = std::abs(x.imag()) <= threshold ? 0.0 : x.imag();
    x = Scalar(re, im);
  }
  return SymmetricSignature(domain_, arity_, std::move(e));
}

double max_abs_diff(const SymmetricSignature& f, const SymmetricSignature& g) {
  check_same_shape(f, g);
  double m = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i] - g[i]));
  return m;
}

double relative_diff(const SymmetricSignature& f, const SymmetricSignature& g,
                     double floor) {
  const double scale = std::max({f.max_abs(), g.max_abs(), floor});
  return max_abs_diff(f, g) / scale;
}

SymmetricSignature tensor_power(const Vector& v, int arity) {
  if (arity < 1) throw Error("tensor power needs arity >= 1");
  const int d = static_cast<int>(v.size());
  const IndexTable& tab = index_table(d, arity);
  std::vector<Scalar> e(tab.size());
  for (std::size_t i = 0; i < tab.size(); ++i) {
    Scalar p = 1.0;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < tab.counts(i)[j]; ++k) p *= v[j];
    e[i] = p;
  }
  return SymmetricSignature(d, arity, std::move(e));
}

SymmetricSignature tensor_power(const RealVector& v, int arity) {
  return tensor_power(to_complex(v), arity);
}

SymmetricSignature add_scaled(const SymmetricSignature& f,
                              const SymmetricSignature& g, Scalar c) {
  check_same_shape(f, g);
  std::vector<Scalar> e(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) e[i] = f[i] + c * g[i];
  return SymmetricSignature(f.domain(), f.arity(), std::move(e));
}

SymmetricSignature scale(const SymmetricSignature& f, Scalar c) {
  std::vector<Scalar> e(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) e[i] = c * f[i];
  return SymmetricSignature(f.domain(), f.arity(), std::move(e));
}

SymmetricSignature contract_unary(const SymmetricSignature& f, const Vector& u) {
  return contract_impl(f, u);
}

SymmetricSignature contract_unary(const SymmetricSignature& f,
                                  const RealVector& u) {
  return contract_impl(f, u);
}

Scalar bilinear_dot(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) throw Error("vector length mismatch");
  Scalar s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

bool is_isotropic(const Vector& u, double tol_iso) {
  return std::abs(bilinear_dot(u, u)) <= tol_iso;
}

bool is_isotropic(const Vector& u) { return is_isotropic(u, tolerances().iso); }

SymmetricSignature apply_transform(const ComplexMatrix& t,
                                   const SymmetricSignature& f) {
  return transform_impl(t, f);
}

SymmetricSignature apply_transform(const RealMatrix& t,
                                   const SymmetricSignature& f) {
  return transform_impl(t, f);
}

Vector to_complex(const RealVector& v) { return Vector(v.begin(), v.end()); }

RealVector real_part(const Vector& v) {
  RealVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i].real();
  return r;
}

Vector conj(const Vector& v) {
  Vector c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = std::conj(v[i]);
  return c;
}

Vector basis_vector(int domain, int i) {
  Vector e(domain, 0.0);
  e.at(i) = 1.0;
  return e;
}

}  // namespace holant
