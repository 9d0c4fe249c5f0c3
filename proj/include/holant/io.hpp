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
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"

#include "holant/classification.hpp"
#include "holant/grid.hpp"

namespace holant {

using Json = nlohmann::json;

/// Malformed input. `pointer` is the JSON pointer of the offending value;
/// line and column (1-based, 0 when unknown) locate it in the source text.
class InputError : public Error {
 public:
  InputError(const std::string& message, std::string pointer = {}, int line = 0, int column = 0,
             std::string file = {});

  const std::string& message() const { return message_; }
  const std::string& pointer() const { return pointer_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& file() const { return file_; }

 private:
  std::string message_;
  std::string pointer_;
  int line_;
  int column_;
  std::string file_;
};

/// Parses JSON text; syntax errors become InputError with line and column.
Json parse_json(std::string_view text);

/// Line and column of the value at `pointer` in `text`, if it exists.
std::optional<std::pair<int, int>> locate(std::string_view text, const std::string& pointer);

/// Signature literal {"domain", "arity", "entries": [x | [re, im], ...]}
/// in canonical multiset order, or a builtin: the string "equality",
/// "exact_one" or "all_distinct", or {"builtin": name, "domain", "arity"}.
/// Missing domain or arity are taken from the context arguments.
SymmetricSignature signature_from_json(const Json& j, std::optional<int> domain = std::nullopt,
                                       std::optional<int> arity = std::nullopt,
                                       const Json::json_pointer& at = Json::json_pointer());
Json to_json(const SymmetricSignature& f);

/// Grid file {"domain", "vertices": [{"sig": ...}], "edges": [[v1, p1, v2,
/// p2], ...], "dangling": [[v, p], ...]}. A builtin's arity is the number of
/// ports the vertex uses.
SignatureGrid grid_from_json(const Json& j);
Json to_json(const SignatureGrid& g);

Json to_json(const RealMatrix& m);
Json to_json(const Witness& w);
Json to_json(const Certificate& c);
Json to_json(const Classification& c);
Witness witness_from_json(const Json& j, const Json::json_pointer& at = Json::json_pointer());
Certificate certificate_from_json(const Json& j, const Json::json_pointer& at = Json::json_pointer());
Classification classification_from_json(const Json& j, const Json::json_pointer& at = Json::json_pointer());

/// Reads and decodes a file; InputError messages carry "path:line:col".
SymmetricSignature read_signature_file(const std::string& path,
                                       std::optional<int> domain = std::nullopt);
SignatureGrid read_grid_file(const std::string& path);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view bytes);
/// FNV-1a of the compact JSON of the verdict, witness and certificate, as
/// 16 hex digits.
std::string classification_digest(const Classification& c);

/// Shortest round-trip text of a scalar: "3", "-0.5", "1+2i".
std::string format_scalar(Scalar x);

}  // namespace holant
