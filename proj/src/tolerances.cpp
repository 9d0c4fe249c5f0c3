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

#include <cstdlib>
#include <sstream>

#include "holant/types.hpp"

namespace holant {

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw Error("malformed tolerance value '" + s + "'");
  }
  if (used != s.size() || !(v > 0.0))
    throw Error("malformed tolerance value '" + s + "'");
  return v;
}

}  // namespace

Tolerances parse_tolerances(const std::string& text) {
  Tolerances t;
  if (text.empty()) return t;
  if (text.find('=') == std::string::npos) {
    const double v = parse_number(text);
    t.eq = t.iso = t.im = t.orth = t.eig = v;
    return t;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error("malformed tolerance item '" + item + "'");
    const std::string key = item.substr(0, eq);
    const double v = parse_number(item.substr(eq + 1));
    if (key == "eq") t.eq = v;
    else if (key == "iso") t.iso = v;
    else if (key == "im") t.im = v;
    else if (key == "orth") t.orth = v;
    else if (key == "eig") t.eig = v;
    else if (key == "rank") t.rank = v;
    else if (key == "interp") t.interp = v;
    else if (key == "gray") t.gray = v;
    else throw Error("unknown tolerance key '" + key + "'");
  }
  return t;
}

const Tolerances& tolerances() {
  static const Tolerances t = [] {
    const char* env = std::getenv("HOLANT_TOL");
    return env ? parse_tolerances(env) : Tolerances{};
  }();
  return t;
}

}  // namespace holant
