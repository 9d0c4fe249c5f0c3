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

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "holant/dichotomy_d3.hpp"
#include "holant/enumeration.hpp"
#include "holant/io.hpp"
#include "holant/oracle.hpp"
#include "holant/selftest.hpp"
#include "holant/trials.hpp"

namespace holant {

namespace {

/// Thrown for I/O problems detected by the command handlers.
struct UsageError : Error {
  using Error::Error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError(path + ": cannot open for writing");
  f << text;
  if (!f.flush()) throw UsageError(path + ": write failed");
}

std::string csv_path(const std::string& out) {
  std::filesystem::path p(out);
  return p.replace_extension(".csv").string();
}

int cmd_eval(const std::string& path, std::ostream& out) {
  const SignatureGrid g = read_grid_file(path);
  out << format_scalar(brute_force_holant(g)) << "\n";
  return kExitOk;
}

int cmd_classify(const std::string& path, int domain, bool as_json, std::ostream& out,
                 std::ostream& err) {
  const SymmetricSignature f = read_signature_file(path);
  if (f.domain() != domain) {
    err << path << ": signature has domain " << f.domain() << ", expected " << domain << "\n";
    return kExitUsage;
  }
  if (f.arity() != 3) {
    err << path << ": signature has arity " << f.arity() << ", expected 3\n";
    return kExitUsage;
  }
  const Classification c = classify(f);
  std::string why;
  const bool verified = c.verdict == Verdict::unknown || verify_classification(f, c, &why);
  if (as_json) {
    Json j = to_json(c);
    j["route"] = classification_route(c);
    j["verified"] = verified;
    j["digest"] = classification_digest(c);
    out << j.dump(2) << "\n";
  } else {
    out << "verdict: " << to_string(c.verdict) << "\n";
    if (const auto form = c.form()) out << "form: " << to_string(*form) << "\n";
    out << "route: " << classification_route(c) << "\n";
    if (c.verdict != Verdict::unknown) out << "verified: " << (verified ? "yes" : "no") << "\n";
    out << "digest: " << classification_digest(c) << "\n";
    if (!c.note.empty()) out << "note: " << c.note << "\n";
  }
  if (!verified) {
    err << "verification failed: " << why << "\n";
    return kExitVerificationFailure;
  }
  return kExitOk;
}

struct EnumerateOptions {
  unsigned parallel = 0;
  bool no_symmetry = false;
  bool no_verify = false;
  bool no_checkpoint = false;
  std::string out;
  std::string checkpoint;
  std::size_t limit = 0;
  bool quiet = false;
};

/// Keeps the first `lines` lines of a file and returns an append stream.
std::unique_ptr<std::ofstream> reopen_sidecar(const std::string& path, std::size_t lines) {
  std::string kept;
  if (lines > 0) {
    std::ifstream in(path, std::ios::binary);
    std::string line;
    for (std::size_t i = 0; i < lines && std::getline(in, line); ++i) kept += line + "\n";
  }
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
  if (!*f) throw UsageError(path + ": cannot open for writing");
  *f << kept;
  return f;
}

int cmd_enumerate(const EnumerateOptions& o, std::ostream& out, std::ostream& err) {
  EnumerationConfig cfg;
  cfg.parallel = o.parallel;
  cfg.symmetry = !o.no_symmetry;
  cfg.verify = !o.no_verify;
  cfg.limit = o.limit;
  if (!o.no_checkpoint) {
    if (!o.checkpoint.empty())
      cfg.checkpoint = o.checkpoint;
    else if (!o.out.empty())
      cfg.checkpoint = o.out + ".checkpoint.json";
  }

  std::unique_ptr<std::ofstream> sidecar;
  const std::string sidecar_path = o.out.empty() ? std::string() : o.out + ".certs.jsonl";
  if (!sidecar_path.empty()) {
    cfg.on_resume = [&](std::size_t resumed) {
      sidecar = reopen_sidecar(sidecar_path, resumed);
      if (resumed > 0 && !o.quiet) err << "resumed " << resumed << " orbits from " << cfg.checkpoint << "\n";
    };
    cfg.sink = [&](std::uint32_t rep, const Classification& c) {
      *sidecar << Json{{"representative", bits_hex(rep)}, {"classification", to_json(c)}}.dump() << "\n";
    };
  }
  cfg.progress = [&](std::size_t done, std::size_t total) {
    if (sidecar) sidecar->flush();
    if (!o.quiet) err << "\rclassified " << done << " / " << total << std::flush;
  };

  const EnumerationReport r = enumerate_01_d4(cfg);
  if (!o.quiet) err << "\n";
  if (sidecar && !sidecar->flush()) throw UsageError(sidecar_path + ": write failed");

  if (!o.out.empty()) {
    write_file(o.out, to_json(r).dump(1) + "\n");
    write_file(csv_path(o.out), to_csv(r));
    if (r.complete && !cfg.checkpoint.empty()) std::filesystem::remove(cfg.checkpoint);
  }

  out << "signatures: " << r.total << "\n"
      << "orbits: " << r.orbit_count << " (Burnside " << r.burnside_count << ")\n"
      << "tractable_form1: " << r.tractable_form1 << "\n"
      << "tractable_form2: " << r.tractable_form2 << "\n"
      << "tractable_form3: " << r.tractable_form3 << "\n"
      << "hard: " << r.hard << "\n"
      << "unknown: " << r.unknown << "\n"
      << "verification_failures: " << r.verification_failures << "\n"
      << "complete: " << (r.complete ? "yes" : "no") << "\n";
  char runtime[96];
  std::snprintf(runtime, sizeof runtime, "runtime: %.2f s on %u threads\n", r.seconds, r.threads);
  out << runtime;
  for (std::uint32_t bits : r.unresolved()) out << "unresolved: " << bits_hex(bits) << "\n";

  const bool ok = r.unknown == 0 && r.tractable_form3 == 0 && r.verification_failures == 0;
  return ok ? kExitOk : kExitVerificationFailure;
}

void print_trial(const TrialReport& r, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof line, "%s: %d/%d passed, max relative error %.3g, %.2f s\n",
                r.name.c_str(), r.passed, r.trials, r.max_error, r.seconds);
  out << line;
  for (const std::string& f : r.failures) out << "  " << f << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Holant partition functions, dichotomy classifiers and enumeration", "holant"};
  app.require_subcommand(1);

  std::string eval_path;
  auto* eval = app.add_subcommand("eval", "Brute-force Holant value of a grid file");
  eval->add_option("grid", eval_path, "Grid JSON file")->required();

  std::string sig_path;
  int domain = 0;
  bool as_json = false;
  auto* cls = app.add_subcommand("classify", "Classify a symmetric ternary signature");
  cls->add_option("signature", sig_path, "Signature JSON file")->required();
  cls->add_option("--domain", domain, "Domain size")->required()->check(CLI::IsMember({2, 3, 4}));
  cls->add_flag("--json", as_json, "Print the classification and certificate as JSON");

  EnumerateOptions eo;
  auto* en = app.add_subcommand("enumerate", "Classify every {0,1} ternary signature on domain 4");
  en->add_option("--parallel", eo.parallel, "Worker threads (0: hardware concurrency)");
  en->add_flag("--no-symmetry", eo.no_symmetry, "Classify all 2^20 signatures instead of S4 orbits");
  en->add_option("--out", eo.out, "Report JSON; a .csv summary and .certs.jsonl sidecar go next to it");
  en->add_option("--checkpoint", eo.checkpoint, "Checkpoint file (default: <out>.checkpoint.json)");
  en->add_flag("--no-checkpoint", eo.no_checkpoint, "Disable checkpointing and resuming");
  en->add_option("--limit", eo.limit, "Classify only the first N orbits");
  en->add_flag("--no-verify", eo.no_verify, "Skip replaying certificates and witnesses");
  en->add_flag("--quiet", eo.quiet, "No progress output");

  std::string lemma_name;
  std::uint64_t seed = 1;
  int trials = 50;
  auto* vi = app.add_subcommand("verify-interp", "Interpolated versus direct Holant values");
  vi->add_option("--lemma", lemma_name, "Lemma variant")
      ->required()
      ->check(CLI::IsMember({"eq3", "eq3_2", "eq3_3", "eq3_4", "star"}));
  vi->add_option("--seed", seed, "Random seed");
  vi->add_option("--trials", trials, "Number of random grids")->check(CLI::PositiveNumber);

  std::uint64_t selftest_seed = 1;
  auto* st = app.add_subcommand("selftest", "Run the property suite");
  st->add_option("--seed", selftest_seed, "Random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(eval_path, out);
    if (*cls) return cmd_classify(sig_path, domain, as_json, out, err);
    if (*en) return cmd_enumerate(eo, out, err);
    if (*vi) {
      const TrialReport r = interpolation_trials(parse_lemma(lemma_name), seed, trials);
      print_trial(r, out);
      return r.ok() ? kExitOk : kExitVerificationFailure;
    }
    if (*st) {
      bool ok = true;
      run_selftest(selftest_seed, [&](const CheckResult& c) {
        char line[64];
        std::snprintf(line, sizeof line, " (%.2f s)\n", c.seconds);
        out << (c.ok ? "PASS " : "FAIL ") << c.name << ": " << c.detail << line << std::flush;
        ok = ok && c.ok;
      });
      return ok ? kExitOk : kExitVerificationFailure;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace holant
