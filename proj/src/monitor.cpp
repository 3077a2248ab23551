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

#include "rha/monitor.hpp"

#include <unordered_set>

#include <fmt/format.h>

#include "rha/text.hpp"

namespace rha {

MonitorSample dead_sample(std::string host) {
  return MonitorSample{std::move(host), Load{}, kDeadPing};
}

MonitorSnapshot parse_status_feed(std::string_view text, Timestamp taken_at) {
  MonitorSnapshot snapshot{taken_at, {}};
  std::unordered_set<std::string> names;
  std::size_t line_no = 0;
  bool first_content = true;
  for (auto raw : text::lines(text)) {
    ++line_no;
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    if (first_content && line == "hostname;load;last_ping;") {
      first_content = false;
      continue;
    }
    first_content = false;

    const auto fields = text::split(line, ';');
    // "a;b;c;" splits into four fields, the last one empty.
    if (fields.size() != 4 || !fields[3].empty()) {
      throw ParseError(line_no,
                       fmt::format("want 'name;load;last_ping;', got '{}'", line));
    }
    if (!valid_hostname(fields[0])) {
      throw ParseError(line_no, fmt::format("invalid host name '{}'", fields[0]));
    }
    const auto load = Load::try_parse(fields[1]);
    if (!load) {
      throw ParseError(line_no, fmt::format("non-numeric load '{}'", fields[1]));
    }
    long long ping = 0;
    if (!text::parse_int(fields[2], ping) || ping < 0 || ping > kDeadPing) {
      throw ParseError(line_no,
                       fmt::format("bad last_ping '{}' (0..9999)", fields[2]));
    }
    std::string host(fields[0]);
    if (!names.insert(host).second) {
      throw ParseError(line_no, fmt::format("host '{}' reported twice", host));
    }
    snapshot.samples.push_back({std::move(host), *load, ping});
  }
  return snapshot;
}

std::string render_status_feed(const MonitorSnapshot& snapshot) {
  std::string out;
  for (const auto& s : snapshot.samples) {
    out += fmt::format("{};{};{};\n", s.host, s.load.fixed2(), s.last_ping);
  }
  return out;
}

std::string_view short_name(std::string_view host) {
  return host.substr(0, host.find('.'));
}

StatusView::StatusView(const MonitorSnapshot& snapshot,
                       const ClusterConfig& config)
    : taken_at_(snapshot.taken_at) {
  for (const auto& s : snapshot.samples) {
    std::string name(short_name(s.host));
    if (config.find(name) == nullptr || samples_.count(name) != 0) continue;
    samples_.emplace(name, s);
    reported_.emplace(name, true);
    order_.push_back(std::move(name));
  }
  for (const auto& h : config.hosts()) {
    if (samples_.count(h.name) != 0) continue;
    samples_.emplace(h.name, dead_sample(h.name));
    reported_.emplace(h.name, false);
    order_.push_back(h.name);
  }
}

const MonitorSample& StatusView::sample(std::string_view host) const {
  auto it = samples_.find(std::string(host));
  if (it == samples_.end()) {
    throw Error(fmt::format("host '{}' is not declared", host));
  }
  return it->second;
}

bool StatusView::reported(std::string_view host) const {
  auto it = reported_.find(std::string(host));
  return it != reported_.end() && it->second;
}

}  // namespace rha
