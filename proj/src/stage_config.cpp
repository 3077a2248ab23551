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

#include "rha/stage_config.hpp"

#include <fmt/format.h>

#include "rha/error.hpp"
#include "rha/text.hpp"

namespace rha {

namespace {

struct Pair {
  std::string_view key;
  long long value;
};

std::vector<Pair> parse_pairs(std::string_view text, std::size_t line,
                              std::string_view what) {
  std::vector<Pair> out;
  for (auto item : text::split(text, ',')) {
    item = text::trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    long long value = 0;
    if (colon == std::string_view::npos ||
        !text::parse_int(text::trim(item.substr(colon + 1)), value)) {
      throw ParseError(line, fmt::format("{}: bad entry '{}' (want key:number)",
                                         what, item));
    }
    out.push_back({text::trim(item.substr(0, colon)), value});
  }
  return out;
}

}  // namespace

std::string to_string(PlacementMode mode) {
  return mode == PlacementMode::LastEligible ? "last_eligible" : "min_load";
}

StageConfig StageConfig::from_kv(KvReader& reader) {
  StageConfig config;
  if (auto v = reader.boolean("reboot_enabled")) config.reboot_enabled = *v;

  if (auto v = reader.string("cycles_per_stage")) {
    const auto line = reader.line_of("cycles_per_stage");
    for (const auto& [key, value] : parse_pairs(*v, line, "cycles_per_stage")) {
      if (value < 1) {
        throw ParseError(line, fmt::format("cycles for {} must be >= 1", key));
      }
      if (key == "reboot") {
        config.reboot_cycles = static_cast<int>(value);
      } else if (key == "restart") {
        config.restart_cycles = static_cast<int>(value);
      } else if (key == "reinstall") {
        config.reinstall_cycles = static_cast<int>(value);
      } else {
        throw ParseError(line, fmt::format("unknown stage '{}'", key));
      }
    }
  }

  if (auto v = reader.string("wait_overrides")) {
    const auto line = reader.line_of("wait_overrides");
    for (const auto& [key, value] : parse_pairs(*v, line, "wait_overrides")) {
      long long flag = 0;
      if (!text::parse_int(key, flag) || !flag_from_int(flag)) {
        throw ParseError(line, fmt::format("wait override for bad flag '{}'", key));
      }
      if (value < 0) throw ParseError(line, "wait must be >= 0");
      config.wait_by_flag[static_cast<std::size_t>(flag)] = value;
    }
  }

  if (auto v = reader.integer("clear_after")) {
    if (*v <= 0) {
      throw ParseError(reader.line_of("clear_after"), "clear_after must be > 0");
    }
    config.clear_after = *v;
  }

  if (auto v = reader.string("placement")) {
    if (*v == "min_load") {
      config.placement = PlacementMode::MinLoad;
    } else if (*v == "last_eligible") {
      config.placement = PlacementMode::LastEligible;
    } else {
      throw ParseError(reader.line_of("placement"),
                       fmt::format("placement must be min_load or last_eligible, got '{}'",
                                   *v));
    }
  }
  return config;
}

StageConfig StageConfig::parse(std::string_view text) {
  const auto sections = parse_kv(text);
  if (sections.size() != 1 || !sections.front().name.empty()) {
    throw ParseError(0, "stage config takes plain key=value lines, no sections");
  }
  KvReader reader(sections.front());
  auto config = from_kv(reader);
  reader.finish();
  return config;
}

}  // namespace rha
