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

#include <array>
#include <string>
#include <string_view>

#include "rha/kv_config.hpp"
#include "rha/placement.hpp"
#include "rha/recovery_state.hpp"
#include "rha/time.hpp"

namespace rha {

/// Tunables of the escalation ladder. Defaults: every stage once, waits of
/// 600/200/200 s by flag, history cleared after an hour of quiet.
///
/// Text form (key=value):
///   reboot_enabled=1
///   cycles_per_stage=reboot:1,restart:1,reinstall:1
///   wait_overrides=0:600,1:200,2:200
///   clear_after=3600
///   placement=min_load        # or: last_eligible
struct StageConfig {
  bool reboot_enabled = true;
  int reboot_cycles = 1;
  int restart_cycles = 1;
  int reinstall_cycles = 1;
  std::array<Seconds, 3> wait_by_flag{600, 200, 200};
  Seconds clear_after = 3600;
  PlacementMode placement = PlacementMode::MinLoad;

  Seconds wait_for(Flag flag) const { return wait_by_flag[to_int(flag)]; }

  /// Reads the keys above from `reader`, leaving others untouched.
  static StageConfig from_kv(KvReader& reader);
  static StageConfig parse(std::string_view text);

  friend bool operator==(const StageConfig&, const StageConfig&) = default;
};

std::string to_string(PlacementMode mode);

}  // namespace rha
