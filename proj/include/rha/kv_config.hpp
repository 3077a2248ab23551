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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace rha {

struct KvEntry {
  std::string key;
  std::string value;
  std::size_t line = 0;
};

/// One `[name arg]` block of a key=value file. Entries that precede the
/// first header land in a section with an empty name.
struct KvSection {
  std::string name;
  std::string arg;
  std::size_t line = 0;
  std::vector<KvEntry> entries;
  std::string raw;  // verbatim body, only filled for raw sections
};

/// Parses `key=value` lines grouped under optional `[name arg]` headers.
/// `#` starts a comment outside raw sections. Sections named in
/// `raw_sections` keep their body text untouched (used to embed hosts.def).
std::vector<KvSection> parse_kv(std::string_view text,
                                const std::set<std::string>& raw_sections = {});

/// Typed access to one section; `finish()` rejects keys nobody asked for.
class KvReader {
 public:
  explicit KvReader(const KvSection& section);

  bool has(std::string_view key) const;
  std::optional<std::string> string(std::string_view key);
  std::string required(std::string_view key);
  std::optional<std::int64_t> integer(std::string_view key);
  std::optional<double> number(std::string_view key);
  std::optional<bool> boolean(std::string_view key);

  std::size_t line_of(std::string_view key) const;
  void finish() const;

 private:
  const KvEntry* entry(std::string_view key) const;
  [[noreturn]] void fail(std::string_view key, const std::string& msg) const;

  const KvSection& section_;
  std::set<std::string, std::less<>> used_;
};

}  // namespace rha
