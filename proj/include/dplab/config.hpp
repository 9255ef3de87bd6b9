// Copyright 2026 The dplab Authors
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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dplab/common.hpp"

namespace dplab {
namespace config {

// Flat TOML-style key/value document: `key = value` lines, `#` comments,
// values are strings, numbers, booleans, or arrays of numbers. Keys are
// canonicalized by folding '-' to '_'. Parsing is strict: consumers
// reject unknown keys, and validation reports every violation, not just
// the first — a silent typo must never change privacy parameters.
struct ConfigValue {
  enum class Type { kString, kNumber, kBool, kNumberList };
  Type type = Type::kString;
  std::string str;
  double num = 0.0;
  bool boolean = false;
  std::vector<double> list;
  bool integral = false;  // numeric literal without '.', 'e', 'E'
  int line = 0;
};

class Config {
 public:
  // Throws ConfigError listing every syntax error with its line number.
  static Config parse(const std::string& text);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::map<std::string, ConfigValue>& values() const { return values_; }

  // Typed accessors; violations are appended to `errors` instead of
  // throwing so callers can report everything at once. Each returns a
  // fallback when the key is missing or mistyped.
  std::string get_string(const std::string& key, const std::string& fallback,
                         std::vector<std::string>& errors) const;
  double get_number(const std::string& key, double fallback,
                    std::vector<std::string>& errors) const;
  int64_t get_integer(const std::string& key, int64_t fallback,
                      std::vector<std::string>& errors) const;
  bool get_bool(const std::string& key, bool fallback,
                std::vector<std::string>& errors) const;
  std::vector<double> get_number_list(const std::string& key,
                                      std::vector<std::string>& errors) const;
  std::vector<int64_t> get_integer_list(
      const std::string& key, std::vector<std::string>& errors) const;

  // Appends one error per key not in `allowed`.
  void reject_unknown(const std::set<std::string>& allowed,
                      std::vector<std::string>& errors) const;

  // Sorted `key = value` echo; stable under reparse.
  std::string canonical_echo() const;

 private:
  std::map<std::string, ConfigValue> values_;
};

// Joins accumulated violations into a ConfigError; no-op when empty.
void raise_if_errors(const std::vector<std::string>& errors);

}  // namespace config
}  // namespace dplab
