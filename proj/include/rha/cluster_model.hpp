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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rha/error.hpp"

namespace rha {

/// A non-negative load average held as whole hundredths. Parsing truncates
/// any further fractional digits toward zero, which is what the controller's
/// threshold comparison operates on ("10.009" and "10.00" both hold 1000).
class Load {
 public:
  constexpr Load() = default;
  static constexpr Load from_hundredths(std::int64_t h) { return Load{h}; }

  static std::optional<Load> try_parse(std::string_view text);

  constexpr std::int64_t hundredths() const { return hundredths_; }
  double value() const { return static_cast<double>(hundredths_) / 100.0; }

  /// Always two decimals: "2.94", "0.00".
  std::string fixed2() const;
  /// Shortest exact form: "10", "10.5", "2.94".
  std::string compact() const;

  friend constexpr auto operator<=>(Load, Load) = default;

 private:
  constexpr explicit Load(std::int64_t h) : hundredths_(h) {}
  std::int64_t hundredths_ = 0;
};

enum class HostKind { PH, VM };

struct HostSpec {
  HostKind kind = HostKind::PH;
  std::string name;
  std::optional<Load> max_load;          // PH only
  std::optional<bool> reinstallable;     // VM only (INST)
  std::optional<std::string> os_profile; // VM only, e.g. "sl4-32"
  std::optional<std::string> middleware; // VM only, e.g. "ig_CE"

  static HostSpec physical(std::string name, Load max_load);
  static HostSpec virtual_machine(std::string name, bool reinstallable,
                                  std::optional<std::string> os = std::nullopt,
                                  std::optional<std::string> mw = std::nullopt);

  bool is_ph() const { return kind == HostKind::PH; }
  bool is_vm() const { return kind == HostKind::VM; }

  friend bool operator==(const HostSpec&, const HostSpec&) = default;
};

/// Nonempty, and free of whitespace and ';'.
bool valid_hostname(std::string_view name);

/// The declared cluster. Construction validates every invariant (unique
/// names, PH/VM field presence, at least one PH when VMs exist) and throws
/// ParseError otherwise.
class ClusterConfig {
 public:
  ClusterConfig() = default;
  explicit ClusterConfig(std::vector<HostSpec> hosts);

  const std::vector<HostSpec>& hosts() const { return hosts_; }
  bool empty() const { return hosts_.empty(); }

  const HostSpec* find(std::string_view name) const;
  const HostSpec& at(std::string_view name) const;

  /// Declaration index of the named host; throws when unknown.
  std::size_t index_of(std::string_view name) const;

  std::vector<const HostSpec*> physical_hosts() const;
  std::vector<const HostSpec*> virtual_machines() const;

  /// Owner assumed for a VM with no recorded state: PHs are dealt out to VMs
  /// round-robin in declaration order (hosts.def records no placement).
  const std::string& default_owner(std::string_view vm) const;

  friend bool operator==(const ClusterConfig&, const ClusterConfig&) = default;

 private:
  std::vector<HostSpec> hosts_;
};

/// Collects every problem in a hosts.def text without throwing.
std::vector<Diagnostic> validate_hosts_def(std::string_view text);

ClusterConfig parse_hosts_def(std::string_view text);
std::string serialize_hosts_def(const ClusterConfig& config);

}  // namespace rha
