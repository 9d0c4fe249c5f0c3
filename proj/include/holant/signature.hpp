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

#include <cstdint>
#include <span>
#include <vector>

#include "holant/matrix.hpp"
#include "holant/types.hpp"

namespace holant {

/// Color counts of a symmetric input: counts[j] inputs take color j.
using MultiIndex = std::vector<int>;

/// Enumeration of all multisets of size `arity` over `domain` colors in the
/// canonical order: nondecreasing color sequences sorted lexicographically.
/// For domain 3 and arity 3 this is the triangle reading order
/// (3,0,0), (2,1,0), (2,0,1), (1,2,0), (1,1,1), (1,0,2), (0,3,0), ...
class IndexTable {
 public:
  IndexTable(int domain, int arity);

  int domain() const { return domain_; }
  int arity() const { return arity_; }
  std::size_t size() const { return counts_.size(); }

  const MultiIndex& counts(std::size_t i) const { return counts_[i]; }

  /// Position of a count vector (any arity <= this table's arity is
  /// encodable, but only matching arity is found).
  std::size_t rank(const MultiIndex& counts) const;

  /// Base-(arity+1) code of a count vector; codes of sub-arity vectors are
  /// compatible, which keeps contraction index arithmetic cheap.
  std::uint32_t code(const MultiIndex& counts) const;
  std::size_t rank_of_code(std::uint32_t code) const { return by_code_[code]; }
  std::uint32_t color_weight(int color) const { return weights_[color]; }

  /// Multiset index of every length-arity color sequence, in mixed-radix
  /// order with the first position most significant. Empty when d^r is too
  /// large to tabulate.
  const std::vector<std::uint32_t>& sequence_ranks() const { return seq_; }

 private:
  int domain_;
  int arity_;
  std::vector<MultiIndex> counts_;
  std::vector<std::uint32_t> weights_;
  std::vector<std::size_t> by_code_;
  std::vector<std::uint32_t> seq_;
};

/// Shared, lazily built table; thread-safe.
const IndexTable& index_table(int domain, int arity);

/// Number of multisets: C(domain + arity - 1, arity).
std::size_t multiset_count(int domain, int arity);

/// Symmetric tensor stored by multiset (the value on any input sequence with
/// the given color counts). Immutable once built.
class SymmetricSignature {
 public:
  SymmetricSignature() = default;
  SymmetricSignature(int domain, int arity);  // all zero
  SymmetricSignature(int domain, int arity, std::vector<Scalar> entries);

  static SymmetricSignature equality(int domain, int arity);
  static SymmetricSignature exact_one(int arity);  // Boolean domain
  static SymmetricSignature all_distinct(int domain, int arity);
  /// Symmetric binary from a symmetric d x d matrix.
  static SymmetricSignature from_matrix(const ComplexMatrix& m);
  static SymmetricSignature from_matrix(const RealMatrix& m);
  static SymmetricSignature unary(const Vector& u);

  int domain() const { return domain_; }
  int arity() const { return arity_; }
  std::size_t size() const { return entries_.size(); }
  const Scalar& operator[](std::size_t i) const { return entries_[i]; }
  Scalar at(const MultiIndex& counts) const;
  /// Value on an explicit input color sequence.
  Scalar value(std::span<const int> colors) const;
  std::span<const Scalar> entries() const { return entries_; }
  const IndexTable& table() const { return index_table(domain_, arity_); }

  bool is_real(double tol_im) const;
  double max_abs() const;
  SymmetricSignature conj() const;
  /// Binary signatures viewed as d x d matrices.
  ComplexMatrix as_matrix() const;
  RealMatrix as_real_matrix() const;
  Vector as_vector() const;  // unary only

  /// Entries with |x| <= threshold (and imaginary parts likewise) set to 0.
  SymmetricSignature chop(double threshold) const;

 private:
  int domain_ = 0;
  int arity_ = 0;
  std::vector<Scalar> entries_;
};

/// max |f - g| over entries; throws on shape mismatch.
double max_abs_diff(const SymmetricSignature& f, const SymmetricSignature& g);

/// max |f - g| / max(|f|, |g|, floor).
double relative_diff(const SymmetricSignature& f, const SymmetricSignature& g,
                     double floor = 1e-300);

SymmetricSignature tensor_power(const Vector& v, int arity);
SymmetricSignature tensor_power(const RealVector& v, int arity);

/// Entrywise f + c g.
SymmetricSignature add_scaled(const SymmetricSignature& f,
                              const SymmetricSignature& g, Scalar c);
SymmetricSignature scale(const SymmetricSignature& f, Scalar c);

/// <f, u>: connect unary u to one input of f. Bilinear, no conjugation.
SymmetricSignature contract_unary(const SymmetricSignature& f, const Vector& u);
SymmetricSignature contract_unary(const SymmetricSignature& f,
                                  const RealVector& u);

Scalar bilinear_dot(const Vector& u, const Vector& v);
bool is_isotropic(const Vector& u, double tol_iso);
bool is_isotropic(const Vector& u);

/// T^{(x) r} f computed on the symmetric representation.
SymmetricSignature apply_transform(const ComplexMatrix& t,
                                   const SymmetricSignature& f);
SymmetricSignature apply_transform(const RealMatrix& t,
                                   const SymmetricSignature& f);

Vector to_complex(const RealVector& v);
RealVector real_part(const Vector& v);
Vector conj(const Vector& v);
Vector basis_vector(int domain, int i);

}  // namespace holant
