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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holant/classification.hpp"
#include "holant/io.hpp"

namespace holant {

/// {0,1}-valued ternary signatures on domain 4 as 20-bit strings: entry i
/// of the canonical multiset order is bit 19 - i, so entry 0 is the most
/// significant bit and lexicographic order on strings is numeric order.
inline constexpr int kEntries = 20;
inline constexpr std::uint32_t kSignatureCount = 1u << kEntries;

SymmetricSignature signature_from_bits(std::uint32_t bits);
/// Entries must be exactly 0 or 1.
std::uint32_t bits_from_signature(const SymmetricSignature& f);

/// The 24 permutations of the 20 multiset indices induced by relabeling the
/// four colors: perm[i] is the index of the image of multiset i.
const std::vector<std::array<int, kEntries>>& s4_index_permutations();

/// Image of a bit string under an index permutation.
std::uint32_t permute_bits(std::uint32_t bits, const std::array<int, kEntries>& perm);

/// Smallest bit string in the orbit.
std::uint32_t canonical_representative(std::uint32_t bits);

/// Number of distinct images of `bits` (divides 24).
int orbit_size(std::uint32_t bits);

/// Burnside: (1/24) sum over the permutations of 2^{cycles}.
std::uint64_t burnside_orbit_count();

/// Canonical representatives in increasing order.
std::vector<std::uint32_t> orbit_representatives();

struct EnumerationConfig {
  /// Worker threads; 0 means hardware concurrency.
  unsigned parallel = 0;
  bool symmetry = true;
  /// Replay every certificate and witness.
  bool verify = true;
  /// Checkpoint file; empty disables checkpointing and resuming.
  std::string checkpoint;
  std::size_t checkpoint_every = 10000;
  /// Classify only the first `limit` orbits (0 means all); the report is
  /// then marked incomplete.
  std::size_t limit = 0;
  /// Called with the full classification of each representative, in orbit
  /// order, e.g. to stream certificates to a sidecar file.
  std::function<void(std::uint32_t representative, const Classification&)> sink;
  std::function<void(std::size_t done, std::size_t total)> progress;
  /// Called once with the number of orbits restored from the checkpoint,
  /// before any sink call.
  std::function<void(std::size_t resumed)> on_resume;
};

struct OrbitRecord {
  std::uint32_t representative = 0;
  int orbit_size = 1;
  Verdict verdict = Verdict::unknown;
  std::optional<Form> form;
  /// First certificate step ("detection" for tractable verdicts).
  std::string route;
  std::string digest;
  bool verified = false;
};

struct EnumerationReport {
  std::uint64_t total = 0;
  std::uint64_t orbit_count = 0;
  std::uint64_t burnside_count = 0;
  std::uint64_t tractable_form1 = 0;
  std::uint64_t tractable_form2 = 0;
  std::uint64_t tractable_form3 = 0;
  std::uint64_t hard = 0;
  std::uint64_t unknown = 0;
  /// Orbits whose certificate or witness failed to replay.
  std::uint64_t verification_failures = 0;
  bool symmetry = true;
  bool complete = false;
  unsigned threads = 1;
  double seconds = 0.0;
  /// Orbits taken from a checkpoint instead of being classified.
  std::size_t resumed = 0;
  std::vector<OrbitRecord> records;

  /// Representatives with verdict unknown.
  std::vector<std::uint32_t> unresolved() const;
};

/// Classifies every {0,1} signature (or one per S4 orbit) with classify_d4.
/// Counts are weighted by orbit size, so they always refer to the 2^20
/// signatures. Results do not depend on the thread count.
EnumerationReport enumerate_01_d4(const EnumerationConfig& config);

/// Report JSON without runtime fields, so identical invocations give
/// byte-identical reports.
Json to_json(const EnumerationReport& r);
/// Seconds, threads and resumed orbits.
Json runtime_json(const EnumerationReport& r);
/// Summary CSV: signatures and orbits per verdict category.
std::string to_csv(const EnumerationReport& r);

/// Step kinds of the certificate joined by '>', "detection" for tractable
/// verdicts and "none" when there is no certificate.
std::string classification_route(const Classification& c);

/// 5-hex-digit text of a 20-bit string.
std::string bits_hex(std::uint32_t bits);

}  // namespace holant
