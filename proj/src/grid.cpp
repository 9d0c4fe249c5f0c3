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

#include "holant/grid.hpp"

#include <algorithm>
#include <string>

namespace holant {

namespace {

void check_port(const SignatureGrid& g, int v, int p) {
  if (v < 0 || v >= static_cast<int>(g.vertex_count()))
    throw Error("vertex " + std::to_string(v) + " out of range");
  if (p < 0 || p >= g.signature(v).arity())
    throw Error("port " + std::to_string(p) + " out of range for vertex " +
                std::to_string(v) + " of arity " +
                std::to_string(g.signature(v).arity()));
}

}  // namespace

int SignatureGrid::add_vertex(SymmetricSignature sig) {
  return add_vertex(std::make_shared<const SymmetricSignature>(std::move(sig)));
}

int SignatureGrid::add_vertex(std::shared_ptr<const SymmetricSignature> sig) {
  if (!sig) throw Error("null signature");
  if (sig->domain() != domain_)
    throw Error("signature domain " + std::to_string(sig->domain()) +
                " does not match grid domain " + std::to_string(domain_));
  vertices_.push_back(std::move(sig));
  return static_cast<int>(vertices_.size()) - 1;
}

void SignatureGrid::connect(int v1, int p1, int v2, int p2) {
  check_port(*this, v1, p1);
  check_port(*this, v2, p2);
  if (v1 == v2 && p1 == p2) throw Error("an edge cannot join a port to itself");
  edges_.push_back({{v1, p1}, {v2, p2}});
}

void SignatureGrid::add_dangling(int v, int p) {
  check_port(*this, v, p);
  dangling_.push_back({v, p});
}

void SignatureGrid::set_signature(int v, std::shared_ptr<const SymmetricSignature> sig) {
  if (!sig) throw Error("null signature");
  const auto& old = vertices_.at(v);
  if (sig->arity() != old->arity() || sig->domain() != old->domain())
    throw Error("replacement signature has a different shape");
  vertices_[v] = std::move(sig);
}

void SignatureGrid::set_signature(int v, SymmetricSignature sig) {
  set_signature(v, std::make_shared<const SymmetricSignature>(std::move(sig)));
}

void SignatureGrid::validate() const {
  std::vector<std::vector<int>> used(vertices_.size());
  for (std::size_t v = 0; v < vertices_.size(); ++v) {
    if (vertices_[v]->domain() != domain_)
      throw Error("vertex " + std::to_string(v) + " has the wrong domain");
    used[v].assign(vertices_[v]->arity(), 0);
  }
  auto mark = [&](const PortRef& p) {
    check_port(*this, p.vertex, p.port);
    ++used[p.vertex][p.port];
  };
  for (const Edge& e : edges_) {
    mark(e.a);
    mark(e.b);
  }
  for (const PortRef& p : dangling_) mark(p);
  for (std::size_t v = 0; v < used.size(); ++v)
    for (std::size_t p = 0; p < used[v].size(); ++p)
      if (used[v][p] != 1)
        throw Error("port " + std::to_string(p) + " of vertex " + std::to_string(v) +
                    " is used " + std::to_string(used[v][p]) + " times");
}

SignatureGrid disjoint_union(const SignatureGrid& a, const SignatureGrid& b) {
  if (a.domain() != b.domain()) throw Error("disjoint union of different domains");
  SignatureGrid g = a;
  const int offset = static_cast<int>(a.vertex_count());
  for (std::size_t v = 0; v < b.vertex_count(); ++v) g.add_vertex(b.signature_ptr(v));
  for (const Edge& e : b.edges())
    g.connect(e.a.vertex + offset, e.a.port, e.b.vertex + offset, e.b.port);
  for (const PortRef& p : b.dangling()) g.add_dangling(p.vertex + offset, p.port);
  return g;
}

SignatureGrid transform_grid(const SignatureGrid& g, const RealMatrix& t) {
  SignatureGrid out = g;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out.set_signature(static_cast<int>(v), apply_transform(t, g.signature(v)));
  return out;
}

Scalar Tensor::at(std::span<const int> colors) const {
  if (colors.size() != static_cast<std::size_t>(order)) throw Error("tensor index length");
  std::size_t idx = 0;
  for (int c : colors) idx = idx * domain + c;
  return values.at(idx);
}

bool Tensor::is_symmetric(double tol) const {
  const double scale = std::max(1.0, max_abs(values));
  std::vector<int> digits(order, 0);
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    std::vector<int> sorted = digits;
    std::sort(sorted.begin(), sorted.end());
    if (std::abs(values[idx] - at(sorted)) > tol * scale) return false;
    for (int p = order - 1; p >= 0; --p) {
      if (++digits[p] < domain) break;
      digits[p] = 0;
    }
  }
  return true;
}

SymmetricSignature Tensor::to_symmetric() const {
  if (!is_symmetric(tolerances().eq)) throw Error("gadget tensor is not symmetric");
  const IndexTable& tab = index_table(domain, order);
  std::vector<Scalar> e(tab.size());
  for (std::size_t i = 0; i < tab.size(); ++i) {
    std::vector<int> colors;
    for (int c = 0; c < domain; ++c)
      for (int k = 0; k < tab.counts(i)[c]; ++k) colors.push_back(c);
    e[i] = at(colors);
  }
  return SymmetricSignature(domain, order, std::move(e));
}

ComplexMatrix Tensor::as_matrix() const {
  if (order != 2) throw Error("only order-2 tensors are matrices");
  ComplexMatrix m(domain, domain);
  for (int a = 0; a < domain; ++a)
    for (int b = 0; b < domain; ++b) m(a, b) = values[a * domain + b];
  return m;
}

}  // namespace holant
