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

#include "holant/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

namespace holant {

namespace {

constexpr std::size_t kTargetBlocks = 256;

/// One enumeration variable: an edge (two ports) or a dangling port.
struct Slot {
  PortRef a;
  PortRef b;
  bool dangling = false;
};

class Enumerator {
 public:
  Enumerator(const SignatureGrid& grid, std::vector<int> marked)
      : grid_(grid), d_(grid.domain()) {
    grid.validate();
    for (const PortRef& p : grid.dangling()) slots_.push_back({p, p, true});
    for (const Edge& e : grid.edges()) slots_.push_back({e.a, e.b, false});
    dangling_count_ = grid.dangling().size();

    const std::size_t nv = grid.vertex_count();
    tables_.resize(nv);
    marked_index_.assign(nv, -1);
    for (std::size_t i = 0; i < marked.size(); ++i) {
      const int v = marked[i];
      if (v < 0 || v >= static_cast<int>(nv)) throw Error("marked vertex out of range");
      if (marked_index_[v] >= 0) throw Error("vertex marked twice");
      marked_index_[v] = static_cast<int>(i);
    }
    marked_count_ = marked.size();

    std::vector<int> last_slot(nv, -1);
    for (std::size_t s = 0; s < slots_.size(); ++s) {
      last_slot[slots_[s].a.vertex] = static_cast<int>(s);
      last_slot[slots_[s].b.vertex] = static_cast<int>(s);
    }
    closing_.resize(slots_.size());
    for (std::size_t v = 0; v < nv; ++v) {
      tables_[v] = &grid.signature(static_cast<int>(v)).table();
      if (last_slot[v] < 0) {
        // No ports: a constant factor.
        if (marked_index_[v] >= 0) throw Error("marked vertices need ports");
        constant_ *= grid.signature(static_cast<int>(v))[0];
      } else {
        closing_[last_slot[v]].push_back(static_cast<int>(v));
      }
    }

    const double log_size = static_cast<double>(slots_.size()) * std::log10(static_cast<double>(d_));
    if (log_size > 18.0) throw Error("instance too large for brute force");
  }

  std::uint64_t assignment_count() const {
    std::uint64_t n = 1;
    for (std::size_t s = 0; s < slots_.size(); ++s) n *= d_;
    return n;
  }

  std::size_t dangling_count() const { return dangling_count_; }
  std::size_t edge_count() const { return slots_.size() - dangling_count_; }
  int domain() const { return d_; }

  /// Number of leading edge slots fixed per block.
  std::size_t block_depth() const {
    std::size_t depth = 0, blocks = 1;
    while (depth < edge_count() && blocks < kTargetBlocks) {
      ++depth;
      blocks *= d_;
    }
    return depth;
  }

  /// Fixes the first prefix.size() slots, then sums over the rest.
  /// visit(partial_product, profile) is called for every surviving leaf.
  template <typename Visit>
  void run(const std::vector<int>& prefix, Visit&& visit) const {
    State st;
    st.codes.assign(grid_.vertex_count(), 0);
    st.profile.assign(marked_count_, 0);
    descend(0, constant_, prefix, st, visit);
  }

 private:
  struct State {
    std::vector<std::uint32_t> codes;
    std::vector<std::size_t> profile;  // multiset rank seen by each marked vertex
  };

  template <typename Visit>
  void descend(std::size_t s, Scalar partial, const std::vector<int>& prefix,
               State& st, Visit& visit) const {
    if (s == slots_.size()) {
      visit(partial, st.profile);
      return;
    }
    const Slot& slot = slots_[s];
    const int lo = s < prefix.size() ? prefix[s] : 0;
    const int hi = s < prefix.size() ? prefix[s] + 1 : d_;
    for (int c = lo; c < hi; ++c) {
      const int va = slot.a.vertex, vb = slot.b.vertex;
      st.codes[va] += tables_[va]->color_weight(c);
      if (!slot.dangling) st.codes[vb] += tables_[vb]->color_weight(c);
      Scalar p = partial;
      for (int v : closing_[s]) {
        const std::size_t rank = tables_[v]->rank_of_code(st.codes[v]);
        if (marked_index_[v] >= 0) {
          st.profile[marked_index_[v]] = rank;
          if (grid_.signature(v)[rank] == Scalar(0.0)) p = 0.0;
        } else {
          p *= grid_.signature(v)[rank];
        }
      }
      if (p != Scalar(0.0)) descend(s + 1, p, prefix, st, visit);
      st.codes[va] -= tables_[va]->color_weight(c);
      if (!slot.dangling) st.codes[vb] -= tables_[vb]->color_weight(c);
    }
  }

  const SignatureGrid& grid_;
  int d_;
  std::vector<Slot> slots_;
  std::size_t dangling_count_ = 0;
  std::vector<const IndexTable*> tables_;
  std::vector<int> marked_index_;
  std::size_t marked_count_ = 0;
  std::vector<std::vector<int>> closing_;
  Scalar constant_ = 1.0;
};

unsigned resolve_threads(const OracleOptions& opts) {
  unsigned t = opts.threads;
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return t;
}

void check_size(const Enumerator& en, const OracleOptions& opts) {
  if (en.assignment_count() > opts.max_assignments)
    throw Error("instance too large for brute force: " +
                std::to_string(en.assignment_count()) + " assignments exceed " +
                std::to_string(opts.max_assignments));
}

/// Runs work(block) for every block index, spread over threads.
template <typename Work>
void for_each_block(std::size_t blocks, unsigned threads, std::uint64_t per_block,
                    Work&& work) {
  if (threads <= 1 || blocks <= 1 || per_block * blocks < 20000) {
    for (std::size_t b = 0; b < blocks; ++b) work(b);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(blocks));
  for (unsigned t = 0; t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t b = next++; b < blocks; b = next++) work(b);
    });
  for (auto& th : pool) th.join();
}

std::vector<int> block_prefix(std::size_t block, std::size_t depth, int d,
                              const std::vector<int>& fixed) {
  std::vector<int> prefix = fixed;
  std::vector<int> digits(depth);
  for (std::size_t i = depth; i-- > 0;) {
    digits[i] = static_cast<int>(block % d);
    block /= d;
  }
  prefix.insert(prefix.end(), digits.begin(), digits.end());
  return prefix;
}

Scalar sum_blocks(const Enumerator& en, const std::vector<int>& fixed, unsigned threads) {
  const std::size_t depth = en.block_depth();
  std::size_t blocks = 1;
  for (std::size_t i = 0; i < depth; ++i) blocks *= en.domain();
  std::uint64_t per_block = 1;
  for (std::size_t i = depth; i < en.edge_count(); ++i) per_block *= en.domain();
  std::vector<Scalar> partial(blocks, 0.0);
  for_each_block(blocks, threads, per_block, [&](std::size_t b) {
    Scalar acc = 0.0;
    en.run(block_prefix(b, depth, en.domain(), fixed),
           [&](Scalar p, const std::vector<std::size_t>&) { acc += p; });
    partial[b] = acc;
  });
  Scalar total = 0.0;
  for (const Scalar& p : partial) total += p;
  return total;
}

}  // namespace

Scalar brute_force_holant(const SignatureGrid& grid, const OracleOptions& opts) {
  if (!grid.dangling().empty())
    throw Error("brute_force_holant needs a closed grid (dangling ports present)");
  Enumerator en(grid, {});
  check_size(en, opts);
  return sum_blocks(en, {}, resolve_threads(opts));
}

Tensor evaluate_dangling(const SignatureGrid& grid, const OracleOptions& opts) {
  Enumerator en(grid, {});
  check_size(en, opts);
  const int d = grid.domain();
  const int k = static_cast<int>(en.dangling_count());
  Tensor out{d, k, {}};
  std::size_t n = 1;
  for (int i = 0; i < k; ++i) n *= d;
  out.values.resize(n);
  std::vector<int> fixed(k, 0);
  for (std::size_t idx = 0; idx < n; ++idx) {
    out.values[idx] = sum_blocks(en, fixed, resolve_threads(opts));
    for (int p = k - 1; p >= 0; --p) {
      if (++fixed[p] < d) break;
      fixed[p] = 0;
    }
  }
  return out;
}

Scalar StratifiedTable::reconstruct() const {
  Scalar total = 0.0;
  for (const auto& [profile, value] : rho) {
    Scalar w = 1.0;
    for (std::size_t k = 0; k < profile.size(); ++k)
      for (int n = 0; n < profile[k]; ++n) w *= marked_signature[k];
    total += value * w;
  }
  return total;
}

StratifiedTable stratified_holant(const SignatureGrid& grid,
                                  const std::vector<int>& marked,
                                  const OracleOptions& opts) {
  if (!grid.dangling().empty())
    throw Error("stratified_holant needs a closed grid (dangling ports present)");
  if (marked.empty()) throw Error("stratification needs at least one marked vertex");
  const SymmetricSignature& sig = grid.signature(marked.front());
  for (int v : marked) {
    const SymmetricSignature& other = grid.signature(v);
    if (other.arity() != sig.arity() || max_abs_diff(other, sig) != 0.0)
      throw Error("marked vertices must carry identical signatures");
  }
  Enumerator en(grid, marked);
  check_size(en, opts);

  const std::size_t depth = en.block_depth();
  std::size_t blocks = 1;
  for (std::size_t i = 0; i < depth; ++i) blocks *= en.domain();
  std::uint64_t per_block = 1;
  for (std::size_t i = depth; i < en.edge_count(); ++i) per_block *= en.domain();

  std::vector<std::map<std::vector<int>, Scalar>> partial(blocks);
  for_each_block(blocks, resolve_threads(opts), per_block, [&](std::size_t b) {
    auto& acc = partial[b];
    std::vector<int> profile(sig.size());
    en.run(block_prefix(b, depth, en.domain(), {}),
           [&](Scalar p, const std::vector<std::size_t>& seen) {
             std::fill(profile.begin(), profile.end(), 0);
             for (std::size_t r : seen) ++profile[r];
             acc[profile] += p;
           });
  });
  StratifiedTable table{sig, {}};
  for (const auto& block : partial)
    for (const auto& [profile, value] : block) table.rho[profile] += value;
  return table;
}

}  // namespace holant
