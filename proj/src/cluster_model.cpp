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

#include "rha/cluster_model.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "rha/text.hpp"

namespace rha {

// ---- Load -----------------------------------------------------------------

std::optional<Load> Load::try_parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::int64_t whole = 0;
  std::int64_t frac = 0;
  int frac_digits = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (const char c : text) {
    if (c == '.') {
      if (seen_point) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (c < '0' || c > '9') return std::nullopt;
    seen_digit = true;
    if (!seen_point) {
      if (whole > 1'000'000'000'000LL) return std::nullopt;
      whole = whole * 10 + (c - '0');
    } else if (frac_digits < 2) {
      frac = frac * 10 + (c - '0');
      ++frac_digits;
    }
  }
  if (!seen_digit) return std::nullopt;
  if (frac_digits == 1) frac *= 10;
  return Load{whole * 100 + frac};
}

std::string Load::fixed2() const {
  return fmt::format("{}.{:02d}", hundredths_ / 100, hundredths_ % 100);
}

std::string Load::compact() const {
  const auto whole = hundredths_ / 100;
  const auto frac = hundredths_ % 100;
  if (frac == 0) return fmt::format("{}", whole);
  if (frac % 10 == 0) return fmt::format("{}.{}", whole, frac / 10);
  return fmt::format("{}.{:02d}", whole, frac);
}

// ---- HostSpec -------------------------------------------------------------

HostSpec HostSpec::physical(std::string name, Load max_load) {
  HostSpec h;
  h.kind = HostKind::PH;
  h.name = std::move(name);
  h.max_load = max_load;
  return h;
}

HostSpec HostSpec::virtual_machine(std::string name, bool reinstallable,
                                   std::optional<std::string> os,
                                   std::optional<std::string> mw) {
  HostSpec h;
  h.kind = HostKind::VM;
  h.name = std::move(name);
  h.reinstallable = reinstallable;
  h.os_profile = std::move(os);
  h.middleware = std::move(mw);
  return h;
}

bool valid_hostname(std::string_view name) {
  return !name.empty() &&
         name.find_first_of(" \t\r\n;#") == std::string_view::npos;
}

namespace {

bool valid_token(const std::optional<std::string>& token) {
  return !token || valid_hostname(*token);
}

std::optional<std::string> check_host(const HostSpec& h) {
  if (!valid_hostname(h.name)) {
    return fmt::format("invalid host name '{}'", h.name);
  }
  if (h.is_ph()) {
    if (!h.max_load || h.max_load->hundredths() <= 0) {
      return fmt::format("PH {} needs a positive max load", h.name);
    }
    if (h.reinstallable || h.os_profile || h.middleware) {
      return fmt::format("PH {} carries VM-only fields", h.name);
    }
  } else {
    if (!h.reinstallable) {
      return fmt::format("VM {} needs a reinstall flag", h.name);
    }
    if (h.max_load) return fmt::format("VM {} carries a max load", h.name);
    if (h.middleware && !h.os_profile) {
      return fmt::format("VM {} has middleware but no OS profile", h.name);
    }
    if (!valid_token(h.os_profile) || !valid_token(h.middleware)) {
      return fmt::format("VM {} has an invalid profile token", h.name);
    }
  }
  return std::nullopt;
}

}  // namespace

// ---- ClusterConfig --------------------------------------------------------

ClusterConfig::ClusterConfig(std::vector<HostSpec> hosts)
    : hosts_(std::move(hosts)) {
  std::vector<Diagnostic> problems;
  std::unordered_map<std::string_view, std::size_t> seen;
  bool any_ph = false;
  bool any_vm = false;
  for (const auto& h : hosts_) {
    if (auto msg = check_host(h)) problems.push_back({0, *msg});
    if (!seen.emplace(h.name, 0).second) {
      problems.push_back({0, fmt::format("duplicate host name '{}'", h.name)});
    }
    any_ph = any_ph || h.is_ph();
    any_vm = any_vm || h.is_vm();
  }
  if (any_vm && !any_ph) {
    problems.push_back({0, "virtual machines declared without any PH"});
  }
  if (!problems.empty()) throw ParseError(std::move(problems));
}

const HostSpec* ClusterConfig::find(std::string_view name) const {
  auto it = std::find_if(hosts_.begin(), hosts_.end(),
                         [&](const HostSpec& h) { return h.name == name; });
  return it == hosts_.end() ? nullptr : &*it;
}

const HostSpec& ClusterConfig::at(std::string_view name) const {
  if (const auto* h = find(name)) return *h;
  throw Error(fmt::format("unknown host '{}'", name));
}

std::size_t ClusterConfig::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < hosts_.size(); ++i) {
    if (hosts_[i].name == name) return i;
  }
  throw Error(fmt::format("unknown host '{}'", name));
}

std::vector<const HostSpec*> ClusterConfig::physical_hosts() const {
  std::vector<const HostSpec*> out;
  for (const auto& h : hosts_) {
    if (h.is_ph()) out.push_back(&h);
  }
  return out;
}

std::vector<const HostSpec*> ClusterConfig::virtual_machines() const {
  std::vector<const HostSpec*> out;
  for (const auto& h : hosts_) {
    if (h.is_vm()) out.push_back(&h);
  }
  return out;
}

const std::string& ClusterConfig::default_owner(std::string_view vm) const {
  const auto phs = physical_hosts();
  if (phs.empty()) throw Error("cluster has no physical hosts");
  std::size_t vm_index = 0;
  for (const auto& h : hosts_) {
    if (!h.is_vm()) continue;
    if (h.name == vm) return phs[vm_index % phs.size()]->name;
    ++vm_index;
  }
  throw Error(fmt::format("unknown virtual machine '{}'", vm));
}

// ---- hosts.def codec ------------------------------------------------------

namespace {

struct ParsedRows {
  std::vector<HostSpec> hosts;
  std::vector<Diagnostic> problems;
};

ParsedRows parse_rows(std::string_view text) {
  ParsedRows out;
  std::unordered_map<std::string, std::size_t> first_line;
  std::size_t line_no = 0;
  bool any_ph = false;
  std::size_t first_vm_line = 0;

  for (auto line : text::lines(text)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const auto fields = text::split_ws(line);
    if (fields.empty()) continue;

    auto fail = [&](std::string msg) {
      out.problems.push_back({line_no, std::move(msg)});
    };

    HostSpec host;
    const auto kind = fields[0];
    if (kind == "PH") {
      host.kind = HostKind::PH;
    } else if (kind == "VM") {
      host.kind = HostKind::VM;
    } else {
      fail(fmt::format("unknown host type '{}' (want PH or VM)", kind));
      continue;
    }
    if (fields.size() < 2) {
      fail(fmt::format("{} row without a host name", kind));
      continue;
    }
    host.name = std::string(fields[1]);
    if (!valid_hostname(host.name)) {
      fail(fmt::format("invalid host name '{}'", host.name));
      continue;
    }
    if (fields.size() < 3) {
      fail(fmt::format("{} row '{}' is missing column 3 ({})", kind, host.name,
                       host.is_ph() ? "MAXL" : "INST"));
      continue;
    }
    const auto column3 = Load::try_parse(fields[2]);
    if (!column3) {
      fail(fmt::format("column 3 of '{}' is not numeric: '{}'", host.name,
                       fields[2]));
      continue;
    }
    if (host.is_ph()) {
      if (column3->hundredths() <= 0) {
        fail(fmt::format("PH {} max load must be positive", host.name));
        continue;
      }
      host.max_load = *column3;
      any_ph = true;
    } else {
      // Only a literal "1" enables reinstall.
      host.reinstallable = fields[2] == "1";
      if (fields.size() > 3) host.os_profile = std::string(fields[3]);
      if (fields.size() > 4) host.middleware = std::string(fields[4]);
      if (first_vm_line == 0) first_vm_line = line_no;
    }
    auto [it, inserted] = first_line.emplace(host.name, line_no);
    if (!inserted) {
      fail(fmt::format("duplicate host name '{}' (first declared on line {})",
                       host.name, it->second));
      continue;
    }
    out.hosts.push_back(std::move(host));
  }
  if (first_vm_line != 0 && !any_ph) {
    out.problems.push_back(
        {first_vm_line, "virtual machines declared without any PH"});
  }
  return out;
}

}  // namespace

std::vector<Diagnostic> validate_hosts_def(std::string_view text) {
  return parse_rows(text).problems;
}

ClusterConfig parse_hosts_def(std::string_view text) {
  auto rows = parse_rows(text);
  if (!rows.problems.empty()) throw ParseError(std::move(rows.problems));
  return ClusterConfig(std::move(rows.hosts));
}

std::string serialize_hosts_def(const ClusterConfig& config) {
  std::string out = "# TYPE HOSTNAME MAXL INST OS MW\n";
  for (const auto& h : config.hosts()) {
    if (h.is_ph()) {
      out += fmt::format("PH {} {}\n", h.name, h.max_load->compact());
      continue;
    }
    out += fmt::format("VM {} {}", h.name, *h.reinstallable ? 1 : 0);
    if (h.os_profile) out += " " + *h.os_profile;
    if (h.middleware) out += " " + *h.middleware;
    out += '\n';
  }
  return out;
}

}  // namespace rha
