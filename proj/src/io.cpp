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

#include "holant/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace holant {

using Pointer = Json::json_pointer;

InputError::InputError(const std::string& message, std::string pointer, int line, int column,
                       std::string file)
    : Error([&] {
        std::string s = file.empty() ? "" : file + ":";
        if (line > 0) s += std::to_string(line) + ":" + std::to_string(column) + ":";
        if (!s.empty()) s += " ";
        s += message;
        if (!pointer.empty()) s += " (at " + pointer + ")";
        return s;
      }()),
      message_(message),
      pointer_(std::move(pointer)),
      line_(line),
      column_(column),
      file_(std::move(file)) {}

namespace {

[[noreturn]] void fail(const Pointer& at, const std::string& msg) {
  throw InputError(msg, at.to_string());
}

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// ---------------------------------------------------------------------------
// Locator: walks already-valid JSON text along a pointer.

class Walker {
 public:
  explicit Walker(std::string_view s) : s_(s) {}

  std::size_t pos() const { return i_; }

  void ws() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r'))
      ++i_;
  }

  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

  std::string string() {
    std::string out;
    ++i_;  // opening quote
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) {
        ++i_;
        switch (s_[i_]) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'u': out += '?'; i_ += 4; break;
          default: out += s_[i_];
        }
      } else {
        out += s_[i_];
      }
      ++i_;
    }
    ++i_;  // closing quote
    return out;
  }

  void skip() {
    ws();
    const char c = peek();
    if (c == '"') {
      string();
    } else if (c == '{' || c == '[') {
      const char close = c == '{' ? '}' : ']';
      ++i_;
      ws();
      if (peek() == close) {
        ++i_;
        return;
      }
      while (i_ < s_.size()) {
        if (c == '{') {
          ws();
          string();
          ws();
          ++i_;  // ':'
        }
        skip();
        ws();
        if (peek() == ',') {
          ++i_;
          continue;
        }
        ++i_;  // close
        return;
      }
    } else {
      while (i_ < s_.size() && std::string_view(",]} \t\r\n").find(s_[i_]) == std::string_view::npos)
        ++i_;
    }
  }

  /// Moves to the value under `token`; false if absent.
  bool enter(const std::string& token) {
    ws();
    const char c = peek();
    if (c != '{' && c != '[') return false;
    ++i_;
    ws();
    if (c == '{') {
      while (peek() == '"') {
        const std::string key = string();
        ws();
        ++i_;  // ':'
        ws();
        if (key == token) return true;
        skip();
        ws();
        if (peek() != ',') return false;
        ++i_;
        ws();
      }
      return false;
    }
    std::size_t index = 0;
    const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
    if (ec != std::errc() || p != token.data() + token.size()) return false;
    for (std::size_t k = 0; k < index; ++k) {
      if (peek() == ']') return false;
      skip();
      ws();
      if (peek() != ',') return false;
      ++i_;
    }
    ws();
    return peek() != ']';
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

std::vector<std::string> pointer_tokens(const std::string& pointer) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < pointer.size()) {
    const std::size_t j = pointer.find('/', i + 1);
    std::string tok = pointer.substr(i + 1, j == std::string::npos ? std::string::npos : j - i - 1);
    std::string un;
    for (std::size_t k = 0; k < tok.size(); ++k) {
      if (tok[k] == '~' && k + 1 < tok.size()) {
        un += tok[k + 1] == '1' ? '/' : '~';
        ++k;
      } else {
        un += tok[k];
      }
    }
    out.push_back(un);
    if (j == std::string::npos) break;
    i = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field access.

const Json& field(const Json& j, const char* key, const Pointer& at) {
  if (!j.is_object()) fail(at, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(at, std::string("missing field \"") + key + "\"");
  return *it;
}

int as_int(const Json& j, const Pointer& at) {
  if (j.is_number_integer()) return j.get<int>();
  if (j.is_number_float()) {
    const double x = j.get<double>();
    if (std::floor(x) == x && std::abs(x) < 1e9) return static_cast<int>(x);
  }
  fail(at, "expected an integer");
}

double as_double(const Json& j, const Pointer& at) {
  if (!j.is_number()) fail(at, "expected a number");
  return j.get<double>();
}

Scalar as_scalar(const Json& j, const Pointer& at) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2) return {as_double(j[0], at / 0), as_double(j[1], at / 1)};
  fail(at, "expected a number or a [re, im] pair");
}

const Json& as_array(const Json& j, const Pointer& at) {
  if (!j.is_array()) fail(at, "expected an array");
  return j;
}

RealVector real_vector(const Json& j, const Pointer& at) {
  RealVector v;
  for (std::size_t i = 0; i < as_array(j, at).size(); ++i) v.push_back(as_double(j[i], at / i));
  return v;
}

std::vector<int> int_vector(const Json& j, const Pointer& at) {
  std::vector<int> v;
  for (std::size_t i = 0; i < as_array(j, at).size(); ++i) v.push_back(as_int(j[i], at / i));
  return v;
}

RealMatrix real_matrix(const Json& j, const Pointer& at) {
  as_array(j, at);
  if (j.empty()) return RealMatrix();
  const std::size_t cols = as_array(j[0], at / 0).size();
  RealMatrix m(j.size(), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const RealVector row = real_vector(j[r], at / r);
    if (row.size() != cols) fail(at / r, "ragged matrix");
    m.set_row(r, row);
  }
  return m;
}

Json scalar_json(Scalar x) { return Json::array({x.real(), x.imag()}); }

template <typename Enum, std::size_t N>
Enum parse_enum(const Json& j, const Enum (&values)[N], const Pointer& at) {
  if (!j.is_string()) fail(at, "expected a string");
  const std::string s = j.get<std::string>();
  for (Enum v : values)
    if (to_string(v) == s) return v;
  fail(at, "unknown value \"" + s + "\"");
}

constexpr Verdict kVerdicts[] = {Verdict::tractable, Verdict::hard, Verdict::unknown};
constexpr Form kForms[] = {Form::orthogonal_cubes, Form::conjugate_pair, Form::d4_form1,
                           Form::d4_form2, Form::d4_form3};
constexpr Variant kVariants[] = {Variant::eq3, Variant::eq3_2, Variant::eq3_3, Variant::eq3_4};
constexpr StepKind kKinds[] = {StepKind::gadget_binary,      StepKind::rank_reduction,
                               StepKind::vanishing_unary,    StepKind::domain_separation,
                               StepKind::rank4_interpolation, StepKind::subdomain_classification,
                               StepKind::form_exclusion};

SymmetricSignature builtin(const std::string& name, std::optional<int> domain,
                           std::optional<int> arity, const Pointer& at) {
  if (!arity) fail(at, "builtin \"" + name + "\" needs an arity");
  if (*arity < 0) fail(at, "arity must be nonnegative");
  if (name == "exact_one") {
    if (domain && *domain != 2) fail(at, "exact_one is a Boolean-domain signature");
    return SymmetricSignature::exact_one(*arity);
  }
  if (!domain) fail(at, "builtin \"" + name + "\" needs a domain");
  if (name == "equality") return SymmetricSignature::equality(*domain, *arity);
  if (name == "all_distinct") return SymmetricSignature::all_distinct(*domain, *arity);
  fail(at, "unknown builtin \"" + name + "\"");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Runs decode on the parsed file and prefixes errors with path:line:col.
template <typename F>
auto decode_file(const std::string& path, F decode) {
  const std::string text = read_text(path);
  try {
    return decode(parse_json(text));
  } catch (const InputError& e) {
    int line = e.line(), col = e.column();
    if (line == 0 && !e.pointer().empty())
      if (const auto lc = locate(text, e.pointer())) std::tie(line, col) = *lc;
    throw InputError(e.message(), e.pointer(), line, col, path);
  } catch (const Error& e) {
    throw InputError(e.what(), {}, 0, 0, path);
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string what = e.what();
    // Drop the library prefix "[json.exception.parse_error.101] parse error at ...: ".
    if (const auto k = what.find("syntax error"); k != std::string::npos) what = what.substr(k);
    throw InputError(what, {}, line, col);
  }
}

std::optional<std::pair<int, int>> locate(std::string_view text, const std::string& pointer) {
  Walker w(text);
  for (const std::string& tok : pointer_tokens(pointer))
    if (!w.enter(tok)) return std::nullopt;
  w.ws();
  return line_column(text, w.pos());
}

SymmetricSignature signature_from_json(const Json& j, std::optional<int> domain,
                                       std::optional<int> arity, const Pointer& at) {
  if (j.is_string()) return builtin(j.get<std::string>(), domain, arity, at);
  if (!j.is_object()) fail(at, "expected a signature object or builtin name");
  if (j.contains("domain")) {
    const int d = as_int(j["domain"], at / "domain");
    if (d < 1) fail(at / "domain", "domain must be positive");
    if (domain && *domain != d) fail(at / "domain", "domain differs from the grid domain");
    domain = d;
  }
  if (j.contains("arity")) {
    const int r = as_int(j["arity"], at / "arity");
    if (r < 0) fail(at / "arity", "arity must be nonnegative");
    if (arity && *arity != r) fail(at / "arity", "arity differs from the ports in use");
    arity = r;
  }
  if (j.contains("builtin")) {
    const Json& b = j["builtin"];
    if (!b.is_string()) fail(at / "builtin", "expected a builtin name");
    return builtin(b.get<std::string>(), domain, arity, at);
  }
  if (!domain) fail(at, "missing field \"domain\"");
  if (!arity) fail(at, "missing field \"arity\"");
  const Json& e = as_array(field(j, "entries", at), at / "entries");
  const std::size_t want = multiset_count(*domain, *arity);
  if (e.size() != want)
    fail(at / "entries", "expected " + std::to_string(want) + " entries for domain " +
                             std::to_string(*domain) + " and arity " + std::to_string(*arity) +
                             ", got " + std::to_string(e.size()));
  std::vector<Scalar> entries;
  for (std::size_t i = 0; i < e.size(); ++i) entries.push_back(as_scalar(e[i], at / "entries" / i));
  return SymmetricSignature(*domain, *arity, std::move(entries));
}

Json to_json(const SymmetricSignature& f) {
  Json e = Json::array();
  for (const Scalar& x : f.entries()) e.push_back(scalar_json(x));
  return {{"domain", f.domain()}, {"arity", f.arity()}, {"entries", e}};
}

SignatureGrid grid_from_json(const Json& j) {
  const Pointer root;
  const int d = as_int(field(j, "domain", root), root / "domain");
  if (d < 1) fail(root / "domain", "domain must be positive");
  const Json& vs = as_array(field(j, "vertices", root), root / "vertices");
  const Json empty = Json::array();
  const Json& es = j.contains("edges") ? as_array(j["edges"], root / "edges") : empty;
  const Json& ds = j.contains("dangling") ? as_array(j["dangling"], root / "dangling") : empty;

  struct PortUse {
    int v, p;
    Pointer at;
  };
  std::vector<PortUse> uses;
  std::vector<std::pair<PortUse, PortUse>> edges;
  auto port = [&](const Json& x, std::size_t k, const Pointer& at) {
    PortUse u{as_int(x[k], at / k), as_int(x[k + 1], at / (k + 1)), at};
    if (u.v < 0 || u.v >= static_cast<int>(vs.size()))
      fail(at / k, "vertex " + std::to_string(u.v) + " out of range");
    if (u.p < 0) fail(at / (k + 1), "port must be nonnegative");
    uses.push_back(u);
    return u;
  };
  for (std::size_t i = 0; i < es.size(); ++i) {
    const Pointer at = root / "edges" / i;
    if (!es[i].is_array() || es[i].size() != 4) fail(at, "an edge is [v1, p1, v2, p2]");
    const PortUse a = port(es[i], 0, at);
    const PortUse b = port(es[i], 2, at);
    edges.emplace_back(a, b);
  }
  std::vector<PortUse> dangling;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const Pointer at = root / "dangling" / i;
    if (!ds[i].is_array() || ds[i].size() != 2) fail(at, "a dangling port is [v, p]");
    dangling.push_back(port(ds[i], 0, at));
  }

  std::vector<int> used(vs.size(), 0);
  for (const PortUse& u : uses) used[u.v] = std::max(used[u.v], u.p + 1);
  SignatureGrid g(d);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const Pointer at = root / "vertices" / v;
    const Json& s = field(vs[v], "sig", at);
    // Literals carry their own arity; builtins take the ports in use.
    const bool literal = s.is_object() && !s.contains("builtin");
    SymmetricSignature sig = signature_from_json(
        s, d, literal ? std::nullopt : std::optional<int>(used[v]), at / "sig");
    if (sig.domain() != d) fail(at / "sig", "signature domain differs from the grid domain");
    g.add_vertex(std::move(sig));
  }
  for (const auto& [a, b] : edges) {
    try {
      g.connect(a.v, a.p, b.v, b.p);
    } catch (const Error& e) {
      fail(a.at, e.what());
    }
  }
  for (const PortUse& u : dangling) {
    try {
      g.add_dangling(u.v, u.p);
    } catch (const Error& e) {
      fail(u.at, e.what());
    }
  }
  try {
    g.validate();
  } catch (const Error& e) {
    fail(root, e.what());
  }
  return g;
}

Json to_json(const SignatureGrid& g) {
  Json vs = Json::array(), es = Json::array(), ds = Json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    vs.push_back({{"sig", to_json(g.signature(static_cast<int>(v)))}});
  for (const Edge& e : g.edges()) es.push_back({e.a.vertex, e.a.port, e.b.vertex, e.b.port});
  for (const PortRef& p : g.dangling()) ds.push_back({p.vertex, p.port});
  return {{"domain", g.domain()}, {"vertices", vs}, {"edges", es}, {"dangling", ds}};
}

Json to_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rows;
}

Json to_json(const Witness& w) {
  return {{"form", to_string(w.form)}, {"transform", to_json(w.t)},
          {"coefficients", w.coefficients}};
}

Json to_json(const Certificate& cert) {
  Json steps = Json::array();
  for (const CertificateStep& s : cert) {
    Json j = {{"kind", to_string(s.kind)}};
    if (!s.unary.empty()) j["unary"] = s.unary;
    if (s.binary.rows() > 0) j["binary"] = to_json(s.binary);
    if (s.rank != 0) j["rank"] = s.rank;
    if (!s.eigenvalues.empty()) j["eigenvalues"] = s.eigenvalues;
    if (s.transform.rows() > 0) j["transform"] = to_json(s.transform);
    if (!s.colors.empty()) j["colors"] = s.colors;
    if (s.kind == StepKind::domain_separation) j["constant"] = s.constant;
    if (s.kind == StepKind::rank_reduction || s.kind == StepKind::rank4_interpolation)
      j["variant"] = to_string(s.variant);
    if (!s.distinguished.empty()) j["distinguished"] = s.distinguished;
    if (s.kind == StepKind::rank4_interpolation) j["bound"] = s.bound;
    if (!s.residuals.empty()) {
      Json r = Json::object();
      for (const auto& [name, value] : s.residuals) r[name] = value;
      j["residuals"] = r;
    }
    if (s.restricted.size() > 0) j["restricted"] = to_json(s.restricted);
    if (s.sub) j["sub"] = to_json(*s.sub);
    steps.push_back(std::move(j));
  }
  return steps;
}

Json to_json(const Classification& c) {
  Json j = {{"verdict", to_string(c.verdict)}};
  if (c.witness) {
    j["form"] = to_string(c.witness->form);
    j["witness"] = to_json(*c.witness);
  }
  if (!c.certificate.empty()) j["certificate"] = to_json(c.certificate);
  if (!c.evidence.empty()) {
    Json ev = Json::array();
    for (const Certificate& chain : c.evidence) ev.push_back(to_json(chain));
    j["evidence"] = ev;
  }
  j["residual"] = c.residual;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

Witness witness_from_json(const Json& j, const Pointer& at) {
  Witness w;
  w.form = parse_enum(field(j, "form", at), kForms, at / "form");
  w.t = real_matrix(field(j, "transform", at), at / "transform");
  w.coefficients = real_vector(field(j, "coefficients", at), at / "coefficients");
  if (w.t.rows() == 0 || !w.t.square()) fail(at / "transform", "transform must be square");
  return w;
}

Certificate certificate_from_json(const Json& j, const Pointer& at) {
  Certificate cert;
  for (std::size_t i = 0; i < as_array(j, at).size(); ++i) {
    const Pointer p = at / i;
    const Json& x = j[i];
    CertificateStep s;
    s.kind = parse_enum(field(x, "kind", p), kKinds, p / "kind");
    if (x.contains("unary")) s.unary = real_vector(x["unary"], p / "unary");
    if (x.contains("binary")) s.binary = real_matrix(x["binary"], p / "binary");
    if (x.contains("rank")) s.rank = as_int(x["rank"], p / "rank");
    if (x.contains("eigenvalues")) s.eigenvalues = real_vector(x["eigenvalues"], p / "eigenvalues");
    if (x.contains("transform")) s.transform = real_matrix(x["transform"], p / "transform");
    if (x.contains("colors")) s.colors = int_vector(x["colors"], p / "colors");
    if (x.contains("constant")) s.constant = as_double(x["constant"], p / "constant");
    if (x.contains("variant")) s.variant = parse_enum(x["variant"], kVariants, p / "variant");
    if (x.contains("distinguished"))
      s.distinguished = int_vector(x["distinguished"], p / "distinguished");
    if (x.contains("bound")) s.bound = as_int(x["bound"], p / "bound");
    if (x.contains("residuals")) {
      const Json& r = x["residuals"];
      if (!r.is_object()) fail(p / "residuals", "expected an object");
      for (auto it = r.begin(); it != r.end(); ++it)
        s.residuals.emplace_back(it.key(), as_double(it.value(), p / "residuals" / it.key()));
    }
    if (x.contains("restricted"))
      s.restricted = signature_from_json(x["restricted"], std::nullopt, std::nullopt, p / "restricted");
    if (x.contains("sub"))
      s.sub = std::make_shared<const Classification>(classification_from_json(x["sub"], p / "sub"));
    cert.push_back(std::move(s));
  }
  return cert;
}

Classification classification_from_json(const Json& j, const Pointer& at) {
  Classification c;
  c.verdict = parse_enum(field(j, "verdict", at), kVerdicts, at / "verdict");
  if (j.contains("witness")) c.witness = witness_from_json(j["witness"], at / "witness");
  if (j.contains("certificate")) c.certificate = certificate_from_json(j["certificate"], at / "certificate");
  if (j.contains("evidence")) {
    const Json& ev = as_array(j["evidence"], at / "evidence");
    for (std::size_t i = 0; i < ev.size(); ++i)
      c.evidence.push_back(certificate_from_json(ev[i], at / "evidence" / i));
  }
  if (j.contains("residual")) c.residual = as_double(j["residual"], at / "residual");
  if (j.contains("note")) {
    if (!j["note"].is_string()) fail(at / "note", "expected a string");
    c.note = j["note"].get<std::string>();
  }
  return c;
}

SymmetricSignature read_signature_file(const std::string& path, std::optional<int> domain) {
  return decode_file(path, [&](const Json& j) {
    return signature_from_json(j, domain, std::nullopt, Pointer());
  });
}

SignatureGrid read_grid_file(const std::string& path) {
  return decode_file(path, [](const Json& j) { return grid_from_json(j); });
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string classification_digest(const Classification& c) {
  Json j = {{"verdict", to_string(c.verdict)}};
  if (c.witness) j["witness"] = to_json(*c.witness);
  if (!c.certificate.empty()) j["certificate"] = to_json(c.certificate);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(j.dump())));
  return buf;
}

std::string format_scalar(Scalar x) {
  auto shortest = [](double v) {
    if (v == 0.0) v = 0.0;  // drops the sign of -0
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, p);
  };
  const double scale = std::max(1.0, std::abs(x.real()));
  if (std::abs(x.imag()) <= 1e-12 * scale) return shortest(x.real());
  std::string im = shortest(std::abs(x.imag()));
  return shortest(x.real()) + (x.imag() < 0 ? "-" : "+") + im + "i";
}

}  // namespace holant
