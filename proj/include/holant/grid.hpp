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

#include <memory>
#include <span>
#include <vector>

#include "holant/signature.hpp"

namespace holant {

struct PortRef {
  int vertex = 0;
  int port = 0;
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

struct Edge {
  PortRef a;
  PortRef b;
};

/// Multigraph whose vertices carry symmetric signatures and whose edges are
/// domain-valued variables. Self-loops and parallel edges are allowed;
/// dangling ports are listed in a fixed order and become the inputs of the
/// gadget's effective signature.
class SignatureGrid {
 public:
  explicit SignatureGrid(int domain) : domain_(domain) {}

  int add_vertex(SymmetricSignature sig);
  int add_vertex(std::shared_ptr<const SymmetricSignature> sig);
  void connect(int v1, int p1, int v2, int p2);
  void add_dangling(int v, int p);
  /// Replaces the signature of an existing vertex; the arity must match.
  void set_signature(int v, std::shared_ptr<const SymmetricSignature> sig);
  void set_signature(int v, SymmetricSignature sig);

  int domain() const { return domain_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const SymmetricSignature& signature(int v) const { return *vertices_.at(v); }
  const std::shared_ptr<const SymmetricSignature>& signature_ptr(int v) const {
    return vertices_.at(v);
  }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<PortRef>& dangling() const { return dangling_; }

  /// Throws Error unless every port is used exactly once and every
  /// signature's domain matches the grid.
  void validate() const;

 private:
  int domain_;
  std::vector<std::shared_ptr<const SymmetricSignature>> vertices_;
  std::vector<Edge> edges_;
  std::vector<PortRef> dangling_;
};

/// Vertices of b are renumbered after those of a.
SignatureGrid disjoint_union(const SignatureGrid& a, const SignatureGrid& b);

/// Every vertex signature replaced by apply_transform(t, .).
SignatureGrid transform_grid(const SignatureGrid& g, const RealMatrix& t);

/// Dense tensor over the dangling ports, first port most significant.
struct Tensor {
  int domain = 0;
  int order = 0;
  std::vector<Scalar> values;

  Scalar at(std::span<const int> colors) const;
  bool is_symmetric(double tol) const;
  /// Requires is_symmetric within tol_eq.
  SymmetricSignature to_symmetric() const;
  /// Order-2 tensors as d x d matrices (row = first dangling port).
  ComplexMatrix as_matrix() const;
};

}  // namespace holant
