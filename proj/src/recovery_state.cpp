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

#include "rha/recovery_state.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "rha/cluster_model.hpp"
#include "rha/error.hpp"
#include "rha/text.hpp"

namespace rha {

std::optional<Flag> flag_from_int(long long value) {
  if (value < 0 || value > 2) return std::nullopt;
  return static_cast<Flag>(value);
}

std::string format_vm_state(const VmRecoveryState& state, Seconds utc_offset) {
  auto line = fmt::format("{} {} {}", state.owner_ph,
                          format_timestamp(state.last_action_at, utc_offset),
                          to_int(state.flag));
  if (state.attempts != implied_attempts(state.flag)) {
    line += fmt::format(" {}", state.attempts);
  }
  return line;
}

std::optional<VmRecoveryState> parse_vm_state(std::string_view vm,
                                              std::string_view line,
                                              Seconds utc_offset) {
  const auto fields = text::split_ws(line);
  if (fields.size() != 3 && fields.size() != 4) return std::nullopt;
  if (!valid_hostname(fields[0])) return std::nullopt;
  const auto at = try_parse_timestamp(fields[1], utc_offset);
  long long raw_flag = 0;
  if (!at || !text::parse_int(fields[2], raw_flag)) return std::nullopt;
  const auto flag = flag_from_int(raw_flag);
  if (!flag) return std::nullopt;
  int attempts = implied_attempts(*flag);
  if (fields.size() == 4) {
    long long raw = 0;
    if (!text::parse_int(fields[3], raw) || raw < 0 || raw > 1'000'000) {
      return std::nullopt;
    }
    attempts = static_cast<int>(raw);
  }
  return VmRecoveryState{std::string(vm), std::string(fields[0]), *at, *flag,
                         attempts};
}

std::optional<VmRecoveryState> MemoryStateStore::read(std::string_view vm) const {
  auto it = states_.find(vm);
  if (it == states_.end()) return std::nullopt;
  return it->second;
}

void MemoryStateStore::write(const VmRecoveryState& state) {
  states_.insert_or_assign(state.vm, state);
}

DirectoryStateStore::DirectoryStateStore(std::filesystem::path dir,
                                         Seconds utc_offset)
    : dir_(std::move(dir)), utc_offset_(utc_offset) {
  std::filesystem::create_directories(dir_);
}

std::optional<VmRecoveryState> DirectoryStateStore::read(
    std::string_view vm) const {
  std::ifstream in(dir_ / std::string(vm));
  if (!in) return std::nullopt;
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string content = buffer.str();
  const auto lines = text::lines(content);
  if (lines.empty()) return std::nullopt;
  return parse_vm_state(vm, lines.front(), utc_offset_);
}

void DirectoryStateStore::write(const VmRecoveryState& state) {
  const auto path = dir_ / state.vm;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write state file {}", path.string()));
  out << format_vm_state(state, utc_offset_) << '\n';
}

}  // namespace rha
