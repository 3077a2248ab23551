// Copyright 2026 The rhactl Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rha/kv_config.hpp"

#include <charconv>
#include <cstdlib>

#include <fmt/format.h>

#include "rha/error.hpp"
#include "rha/text.hpp"

namespace rha {

std::vector<KvSection> parse_kv(std::string_view body,
                                const std::set<std::string>& raw_sections) {
  std::vector<KvSection> sections;
  sections.push_back(KvSection{});
  bool raw = false;
  std::size_t line_no = 0;
  for (auto line : text::lines(body)) {
    ++line_no;
    const auto trimmed = text::trim(line);
    if (!trimmed.empty() && trimmed.front() == '[') {
      if (trimmed.back() != ']') {
        throw ParseError(line_no, fmt::format("unterminated header '{}'", trimmed));
      }
      const auto words = text::split_ws(trimmed.substr(1, trimmed.size() - 2));
      if (words.empty() || words.size() > 2) {
        throw ParseError(line_no, "header wants '[name]' or '[name arg]'");
      }
      KvSection s;
      s.name = std::string(words[0]);
      if (words.size() == 2) s.arg = std::string(words[1]);
      s.line = line_no;
      raw = raw_sections.count(s.name) != 0;
      sections.push_back(std::move(s));
      continue;
    }
    auto& current = sections.back();
    if (raw) {
      current.raw += std::string(line);
      current.raw += '\n';
      continue;
    }
    auto content = line.substr(0, line.find('#'));
    content = text::trim(content);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(line_no, fmt::format("want key=value, got '{}'", content));
    }
    const auto key = text::trim(content.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    for (const auto& e : current.entries) {
      if (e.key == key) {
        throw ParseError(line_no, fmt::format("duplicate key '{}'", key));
      }
    }
    current.entries.push_back({std::string(key),
                               std::string(text::trim(content.substr(eq + 1))),
                               line_no});
  }
  if (sections.front().entries.empty() && sections.size() > 1) {
    sections.erase(sections.begin());
  }
  return sections;
}

KvReader::KvReader(const KvSection& section) : section_(section) {}

const KvEntry* KvReader::entry(std::string_view key) const {
  for (const auto& e : section_.entries) {
    if (e.key == key) return &e;
  }
  return nullptr;
}

bool KvReader::has(std::string_view key) const { return entry(key) != nullptr; }

std::size_t KvReader::line_of(std::string_view key) const {
  const auto* e = entry(key);
  return e != nullptr ? e->line : section_.line;
}

void KvReader::fail(std::string_view key, const std::string& msg) const {
  throw ParseError(line_of(key), fmt::format("{}: {}", key, msg));
}

std::optional<std::string> KvReader::string(std::string_view key) {
  const auto* e = entry(key);
  if (e == nullptr) return std::nullopt;
  used_.emplace(key);
  return e->value;
}

std::string KvReader::required(std::string_view key) {
  auto value = string(key);
  if (!value) {
    throw ParseError(section_.line,
                     fmt::format("[{}] is missing required key '{}'",
                                 section_.name, key));
  }
  return *value;
}

std::optional<std::int64_t> KvReader::integer(std::string_view key) {
  auto value = string(key);
  if (!value) return std::nullopt;
  long long out = 0;
  if (!text::parse_int(*value, out)) fail(key, "not an integer: " + *value);
  return out;
}

std::optional<double> KvReader::number(std::string_view key) {
  auto value = string(key);
  if (!value) return std::nullopt;
  char* end = nullptr;
  const double out = std::strtod(value->c_str(), &end);
  if (value->empty() || end != value->c_str() + value->size()) {
    fail(key, "not a number: " + *value);
  }
  return out;
}

std::optional<bool> KvReader::boolean(std::string_view key) {
  auto value = string(key);
  if (!value) return std::nullopt;
  if (*value == "1" || *value == "true" || *value == "yes") return true;
  if (*value == "0" || *value == "false" || *value == "no") return false;
  fail(key, "not a boolean: " + *value);
}

void KvReader::finish() const {
  for (const auto& e : section_.entries) {
    if (used_.count(e.key) == 0) {
      throw ParseError(e.line, fmt::format("unknown key '{}'", e.key));
    }
  }
}

}  // namespace rha
