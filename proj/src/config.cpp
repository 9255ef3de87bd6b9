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

#include "dplab/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace dplab {
namespace config {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string canonical_key(const std::string& raw) {
  std::string k = raw;
  for (char& c : k) {
    if (c == '-') c = '_';
  }
  return k;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

bool parse_number(const std::string& tok, double& out, bool& integral) {
  if (tok.empty()) return false;
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end != begin + tok.size() || !std::isfinite(out)) return false;
  integral = tok.find_first_of(".eE") == std::string::npos;
  return true;
}

// Splits a [ ... ] body at top-level commas.
std::vector<std::string> split_items(const std::string& body) {
  std::vector<std::string> items;
  std::string cur;
  bool in_str = false;
  for (char c : body) {
    if (c == '"') in_str = !in_str;
    if (c == ',' && !in_str) {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  std::string last = trim(cur);
  if (!last.empty()) items.push_back(last);
  return items;
}

std::string type_name(ConfigValue::Type t) {
  switch (t) {
    case ConfigValue::Type::kString:
      return "string";
    case ConfigValue::Type::kNumber:
      return "number";
    case ConfigValue::Type::kBool:
      return "boolean";
    case ConfigValue::Type::kNumberList:
      return "number list";
  }
  return "?";
}

}  // namespace

Config Config::parse(const std::string& text) {
  Config cfg;
  std::vector<std::string> errors;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = std::string::npos;
    bool in_str = false;
    for (size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_str = !in_str;
      if (line[i] == '#' && !in_str) {
        hash = i;
        break;
      }
    }
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(lineno) +
                       ": expected 'key = value'");
      continue;
    }
    std::string key = canonical_key(trim(line.substr(0, eq)));
    std::string val = trim(line.substr(eq + 1));
    if (!valid_key(key)) {
      errors.push_back("line " + std::to_string(lineno) + ": bad key '" +
                       key + "'");
      continue;
    }
    if (cfg.values_.count(key)) {
      errors.push_back("line " + std::to_string(lineno) + ": duplicate key '" +
                       key + "'");
      continue;
    }

    ConfigValue v;
    v.line = lineno;
    if (val.empty()) {
      errors.push_back("line " + std::to_string(lineno) + ": missing value");
      continue;
    }
    if (val.front() == '"') {
      if (val.size() < 2 || val.back() != '"') {
        errors.push_back("line " + std::to_string(lineno) +
                         ": unterminated string");
        continue;
      }
      v.type = ConfigValue::Type::kString;
      v.str = val.substr(1, val.size() - 2);
    } else if (val == "true" || val == "false") {
      v.type = ConfigValue::Type::kBool;
      v.boolean = val == "true";
    } else if (val.front() == '[') {
      if (val.back() != ']') {
        errors.push_back("line " + std::to_string(lineno) +
                         ": unterminated array");
        continue;
      }
      v.type = ConfigValue::Type::kNumberList;
      v.integral = true;
      bool ok = true;
      for (const std::string& item :
           split_items(val.substr(1, val.size() - 2))) {
        double num = 0.0;
        bool integral = false;
        if (!parse_number(item, num, integral)) {
          errors.push_back("line " + std::to_string(lineno) +
                           ": array item '" + item + "' is not a number");
          ok = false;
          break;
        }
        v.integral = v.integral && integral;
        v.list.push_back(num);
      }
      if (!ok) continue;
    } else {
      double num = 0.0;
      bool integral = false;
      if (!parse_number(val, num, integral)) {
        errors.push_back("line " + std::to_string(lineno) + ": value '" +
                         val + "' is not a string, number, boolean or array");
        continue;
      }
      v.type = ConfigValue::Type::kNumber;
      v.num = num;
      v.integral = integral;
    }
    cfg.values_[key] = v;
  }
  raise_if_errors(errors);
  return cfg;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback,
                               std::vector<std::string>& errors) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second.type != ConfigValue::Type::kString) {
    errors.push_back("key '" + key + "': expected string, got " +
                     type_name(it->second.type));
    return fallback;
  }
  return it->second.str;
}

double Config::get_number(const std::string& key, double fallback,
                          std::vector<std::string>& errors) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second.type != ConfigValue::Type::kNumber) {
    errors.push_back("key '" + key + "': expected number, got " +
                     type_name(it->second.type));
    return fallback;
  }
  return it->second.num;
}

int64_t Config::get_integer(const std::string& key, int64_t fallback,
                            std::vector<std::string>& errors) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second.type != ConfigValue::Type::kNumber || !it->second.integral) {
    errors.push_back("key '" + key + "': expected integer");
    return fallback;
  }
  return static_cast<int64_t>(it->second.num);
}

bool Config::get_bool(const std::string& key, bool fallback,
                      std::vector<std::string>& errors) const {
  auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second.type != ConfigValue::Type::kBool) {
    errors.push_back("key '" + key + "': expected boolean, got " +
                     type_name(it->second.type));
    return fallback;
  }
  return it->second.boolean;
}

std::vector<double> Config::get_number_list(
    const std::string& key, std::vector<std::string>& errors) const {
  auto it = values_.find(key);
  if (it == values_.end()) return {};
  if (it->second.type != ConfigValue::Type::kNumberList) {
    errors.push_back("key '" + key + "': expected array of numbers");
    return {};
  }
  return it->second.list;
}

std::vector<int64_t> Config::get_integer_list(
    const std::string& key, std::vector<std::string>& errors) const {
  auto it = values_.find(key);
  if (it == values_.end()) return {};
  if (it->second.type != ConfigValue::Type::kNumberList ||
      !it->second.integral) {
    errors.push_back("key '" + key + "': expected array of integers");
    return {};
  }
  std::vector<int64_t> out;
  out.reserve(it->second.list.size());
  for (double v : it->second.list) out.push_back(static_cast<int64_t>(v));
  return out;
}

void Config::reject_unknown(const std::set<std::string>& allowed,
                            std::vector<std::string>& errors) const {
  for (const auto& [key, value] : values_) {
    if (!allowed.count(key)) {
      errors.push_back("line " + std::to_string(value.line) +
                       ": unknown key '" + key + "'");
    }
  }
}

std::string Config::canonical_echo() const {
  std::string out;
  for (const auto& [key, v] : values_) {
    out += key + " = ";
    switch (v.type) {
      case ConfigValue::Type::kString:
        out += "\"" + v.str + "\"";
        break;
      case ConfigValue::Type::kBool:
        out += v.boolean ? "true" : "false";
        break;
      case ConfigValue::Type::kNumber:
        out += v.integral ? std::to_string(static_cast<int64_t>(v.num))
                          : format_double(v.num);
        break;
      case ConfigValue::Type::kNumberList: {
        out += "[";
        for (size_t i = 0; i < v.list.size(); ++i) {
          if (i) out += ", ";
          out += v.integral ? std::to_string(static_cast<int64_t>(v.list[i]))
                            : format_double(v.list[i]);
        }
        out += "]";
        break;
      }
    }
    out += "\n";
  }
  return out;
}

void raise_if_errors(const std::vector<std::string>& errors) {
  if (errors.empty()) return;
  std::string msg = "configuration invalid:";
  for (const std::string& e : errors) msg += "\n  - " + e;
  throw ConfigError(msg);
}

}  // namespace config
}  // namespace dplab
