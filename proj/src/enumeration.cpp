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

#include "holant/enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

#include "holant/dichotomy_d4.hpp"

namespace holant {

SymmetricSignature signature_from_bits(std::uint32_t bits) {
  std::vector<Scalar> e(kEntries);
  for (int i = 0; i < kEntries; ++i) e[i] = (bits >> (kEntries - 1 - i)) & 1u;
  return SymmetricSignature(4, 3, std::move(e));
}

std::uint32_t bits_from_signature(const SymmetricSignature& f) {
  if (f.domain() != 4 || f.arity() != 3) throw Error("expected a ternary signature on domain 4");
  std::uint32_t bits = 0;
  for (int i = 0; i < kEntries; ++i) {
    if (f[i] == Scalar(1.0))
      bits |= 1u << (kEntries - 1 - i);
    else if (f[i] != Scalar(0.0))
      throw Error("entry " + std::to_string(i) + " is not 0 or 1");
  }
  return bits;
}

const std::vector<std::array<int, kEntries>>& s4_index_permutations() {
  static const std::vector<std::array<int, kEntries>> perms = [] {
    const IndexTable& tab = index_table(4, 3);
    std::vector<std::array<int, kEntries>> out;
    std::array<int, 4> sigma{0, 1, 2, 3};
    do {
      std::array<int, kEntries> p{};
      for (int i = 0; i < kEntries; ++i) {
        MultiIndex image(4, 0);
        for (int c = 0; c < 4; ++c) image[sigma[c]] = tab.counts(i)[c];
        p[i] = static_cast<int>(tab.rank(image));
      }
      out.push_back(p);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return out;
  }();
  return perms;
}

std::uint32_t permute_bits(std::uint32_t bits, const std::array<int, kEntries>& perm) {
  std::uint32_t out = 0;
  for (int i = 0; i < kEntries; ++i)
    if ((bits >> (kEntries - 1 - i)) & 1u) out |= 1u << (kEntries - 1 - perm[i]);
  return out;
}

std::uint32_t canonical_representative(std::uint32_t bits) {
  std::uint32_t best = bits;
  for (const auto& p : s4_index_permutations()) best = std::min(best, permute_bits(bits, p));
  return best;
}

int orbit_size(std::uint32_t bits) {
  std::vector<std::uint32_t> images;
  for (const auto& p : s4_index_permutations()) images.push_back(permute_bits(bits, p));
  std::sort(images.begin(), images.end());
  return static_cast<int>(std::unique(images.begin(), images.end()) - images.begin());
}

std::uint64_t burnside_orbit_count() {
  std::uint64_t fixed = 0;
  for (const auto& p : s4_index_permutations()) {
    std::array<bool, kEntries> seen{};
    int cycles = 0;
    for (int i = 0; i < kEntries; ++i) {
      if (seen[i]) continue;
      ++cycles;
      for (int j = i; !seen[j]; j = p[j]) seen[j] = true;
    }
    fixed += std::uint64_t{1} << cycles;
  }
  return fixed / s4_index_permutations().size();
}

std::vector<std::uint32_t> orbit_representatives() {
  std::vector<std::uint32_t> reps;
  const auto& perms = s4_index_permutations();
  for (std::uint32_t b = 0; b < kSignatureCount; ++b) {
    bool minimal = true;
    for (const auto& p : perms)
      if (permute_bits(b, p) < b) {
        minimal = false;
        break;
      }
    if (minimal) reps.push_back(b);
  }
  return reps;
}

std::string bits_hex(std::uint32_t bits) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%05x", bits);
  return buf;
}

std::vector<std::uint32_t> EnumerationReport::unresolved() const {
  std::vector<std::uint32_t> out;
  for (const OrbitRecord& r : records)
    if (r.verdict == Verdict::unknown) out.push_back(r.representative);
  return out;
}

std::string classification_route(const Classification& c) {
  if (c.verdict == Verdict::tractable) return "detection";
  if (c.certificate.empty()) return "none";
  std::string s;
  for (const CertificateStep& step : c.certificate) {
    if (!s.empty()) s += '>';
    s += to_string(step.kind);
  }
  return s;
}

namespace {

Json record_json(const OrbitRecord& r) {
  return {r.representative,
          r.orbit_size,
          to_string(r.verdict),
          r.form ? std::string(to_string(*r.form)) : std::string(),
          r.route,
          r.digest,
          r.verified};
}

OrbitRecord record_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 7) throw InputError("malformed checkpoint record");
  OrbitRecord r;
  r.representative = j[0].get<std::uint32_t>();
  r.orbit_size = j[1].get<int>();
  const std::string v = j[2].get<std::string>();
  for (Verdict x : {Verdict::tractable, Verdict::hard, Verdict::unknown})
    if (to_string(x) == v) r.verdict = x;
  const std::string f = j[3].get<std::string>();
  for (Form x : {Form::d4_form1, Form::d4_form2, Form::d4_form3})
    if (to_string(x) == f) r.form = x;
  r.route = j[4].get<std::string>();
  r.digest = j[5].get<std::string>();
  r.verified = j[6].get<bool>();
  return r;
}

void write_atomically(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << text;
    if (!out) throw Error("write failed: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void save_checkpoint(const EnumerationConfig& cfg, const std::vector<OrbitRecord>& records) {
  Json recs = Json::array();
  for (const OrbitRecord& r : records) recs.push_back(record_json(r));
  const Json j = {{"format", "holant-enumeration-checkpoint"},
                  {"version", 1},
                  {"symmetry", cfg.symmetry},
                  {"verify", cfg.verify},
                  {"records", recs}};
  write_atomically(cfg.checkpoint, j.dump());
}

std::vector<OrbitRecord> load_checkpoint(const EnumerationConfig& cfg,
                                         const std::vector<std::uint32_t>& reps) {
  std::vector<OrbitRecord> out;
  if (cfg.checkpoint.empty() || !std::filesystem::exists(cfg.checkpoint)) return out;
  std::ifstream in(cfg.checkpoint, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  const Json j = parse_json(ss.str());
  if (!j.is_object() || j.value("format", "") != "holant-enumeration-checkpoint")
    throw InputError(cfg.checkpoint + ": not an enumeration checkpoint");
  if (j.value("symmetry", !cfg.symmetry) != cfg.symmetry || j.value("verify", !cfg.verify) != cfg.verify)
    throw InputError(cfg.checkpoint + ": checkpoint was written with different options");
  for (const Json& r : j.at("records")) {
    OrbitRecord rec = record_from_json(r);
    if (out.size() >= reps.size() || rec.representative != reps[out.size()])
      throw InputError(cfg.checkpoint + ": checkpoint does not match the orbit order");
    out.push_back(std::move(rec));
  }
  return out;
}

struct Outcome {
  Classification c;
  OrbitRecord record;
};

Outcome classify_orbit(std::uint32_t rep, bool symmetry, bool verify) {
  Outcome o;
  OrbitRecord& r = o.record;
  r.representative = rep;
  r.orbit_size = symmetry ? orbit_size(rep) : 1;
  const SymmetricSignature f = signature_from_bits(rep);
  try {
    o.c = classify_d4(f);
  } catch (const std::exception& e) {
    o.c = Classification{};
    o.c.verdict = Verdict::unknown;
    o.c.note = std::string("classification failed: ") + e.what();
  }
  r.verdict = o.c.verdict;
  r.form = o.c.form();
  r.route = classification_route(o.c);
  r.digest = classification_digest(o.c);
  r.verified = o.c.verdict == Verdict::unknown || !verify || verify_classification(f, o.c);
  return o;
}

}  // namespace

EnumerationReport enumerate_01_d4(const EnumerationConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  EnumerationReport rep;
  rep.symmetry = cfg.symmetry;
  rep.burnside_count = burnside_orbit_count();

  std::vector<std::uint32_t> reps;
  if (cfg.symmetry) {
    reps = orbit_representatives();
  } else {
    reps.resize(kSignatureCount);
    for (std::uint32_t b = 0; b < kSignatureCount; ++b) reps[b] = b;
  }
  const std::size_t planned = cfg.limit ? std::min(cfg.limit, reps.size()) : reps.size();
  rep.complete = planned == reps.size();

  rep.records = load_checkpoint(cfg, reps);
  if (rep.records.size() > planned) rep.records.resize(planned);
  rep.resumed = rep.records.size();
  if (cfg.on_resume) cfg.on_resume(rep.resumed);

  unsigned threads = cfg.parallel ? cfg.parallel : std::max(1u, std::thread::hardware_concurrency());
  rep.threads = threads;
  const std::size_t batch = cfg.checkpoint_every ? cfg.checkpoint_every : planned;
  std::vector<Outcome> outcomes;
  for (std::size_t lo = rep.records.size(); lo < planned;) {
    const std::size_t hi = std::min(planned, lo + std::max<std::size_t>(batch, 1));
    outcomes.assign(hi - lo, Outcome{});
    std::atomic<std::size_t> next{lo};
    auto work = [&] {
      constexpr std::size_t kChunk = 16;
      for (;;) {
        const std::size_t begin = next.fetch_add(kChunk);
        if (begin >= hi) return;
        for (std::size_t k = begin; k < std::min(hi, begin + kChunk); ++k)
          outcomes[k - lo] = classify_orbit(reps[k], cfg.symmetry, cfg.verify);
      }
    };
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>((hi - lo + 15) / 16));
    if (n <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < n; ++t) pool.emplace_back(work);
      for (auto& t : pool) t.join();
    }
    for (Outcome& o : outcomes) {
      if (cfg.sink) cfg.sink(o.record.representative, o.c);
      rep.records.push_back(std::move(o.record));
    }
    lo = hi;
    if (!cfg.checkpoint.empty()) save_checkpoint(cfg, rep.records);
    if (cfg.progress) cfg.progress(lo, planned);
  }

  for (const OrbitRecord& r : rep.records) {
    const std::uint64_t w = static_cast<std::uint64_t>(r.orbit_size);
    rep.total += w;
    ++rep.orbit_count;
    if (!r.verified) ++rep.verification_failures;
    switch (r.verdict) {
      case Verdict::hard: rep.hard += w; break;
      case Verdict::unknown: rep.unknown += w; break;
      case Verdict::tractable:
        if (r.form == Form::d4_form1) rep.tractable_form1 += w;
        else if (r.form == Form::d4_form2) rep.tractable_form2 += w;
        else if (r.form == Form::d4_form3) rep.tractable_form3 += w;
        break;
    }
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

Json to_json(const EnumerationReport& r) {
  Json recs = Json::array();
  for (const OrbitRecord& o : r.records) {
    Json j = {{"representative", bits_hex(o.representative)},
              {"orbit_size", o.orbit_size},
              {"verdict", to_string(o.verdict)}};
    if (o.form) j["form"] = to_string(*o.form);
    j["route"] = o.route;
    j["digest"] = o.digest;
    j["verified"] = o.verified;
    recs.push_back(std::move(j));
  }
  Json unresolved = Json::array();
  for (std::uint32_t b : r.unresolved()) unresolved.push_back(bits_hex(b));
  return {{"format", "holant-enumeration"},
          {"version", 1},
          {"domain", 4},
          {"arity", 3},
          {"symmetry", r.symmetry},
          {"complete", r.complete},
          {"total", r.total},
          {"orbit_count", r.orbit_count},
          {"burnside_count", r.burnside_count},
          {"counts",
           {{"tractable_form1", r.tractable_form1},
            {"tractable_form2", r.tractable_form2},
            {"tractable_form3", r.tractable_form3},
            {"hard", r.hard},
            {"unknown", r.unknown}}},
          {"verification_failures", r.verification_failures},
          {"unresolved", unresolved},
          {"records", recs}};
}

Json runtime_json(const EnumerationReport& r) {
  return {{"seconds", r.seconds}, {"threads", r.threads}, {"resumed", r.resumed}};
}

std::string to_csv(const EnumerationReport& r) {
  std::map<std::string, std::pair<std::uint64_t, std::uint64_t>> rows;
  const char* order[] = {"tractable_form1", "tractable_form2", "tractable_form3", "hard", "unknown"};
  for (const char* k : order) rows[k] = {0, 0};
  for (const OrbitRecord& o : r.records) {
    std::string key = std::string(to_string(o.verdict));
    if (o.verdict == Verdict::tractable)
      key = o.form == Form::d4_form1 ? "tractable_form1"
            : o.form == Form::d4_form2 ? "tractable_form2"
                                       : "tractable_form3";
    rows[key].first += static_cast<std::uint64_t>(o.orbit_size);
    rows[key].second += 1;
  }
  std::ostringstream os;
  os << "category,signatures,orbits\n";
  for (const char* k : order) os << k << ',' << rows[k].first << ',' << rows[k].second << '\n';
  os << "total," << r.total << ',' << r.orbit_count << '\n';
  return os.str();
}

}  // namespace holant
