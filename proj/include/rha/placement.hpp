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

#include <map>
#include <string>
#include <string_view>

#include "rha/cluster_model.hpp"
#include "rha/monitor.hpp"

namespace rha {

enum class PlacementMode {
  /// Lowest load, then fewest assigned VMs, then declaration order.
  MinLoad,
  /// Last eligible PH in declaration order.
  LastEligible,
};

struct PlacementDecision {
  enum class Outcome { SamePH, MovedPH, WaitNoCapacity };

  Outcome outcome = Outcome::WaitNoCapacity;
  std::string host;  // empty for WaitNoCapacity

  bool placed() const { return outcome != Outcome::WaitNoCapacity; }
  friend bool operator==(const PlacementDecision&,
                         const PlacementDecision&) = default;
};

/// VMs currently recorded as owned by each PH.
using VmCounts = std::map<std::string, int, std::less<>>;

/// Alive (last_ping != 9999) and load <= max_load, compared in whole
/// hundredths after truncation.
bool load_eligible(const MonitorSample& sample, Load max_load);

PlacementDecision choose_host(std::string_view vm, std::string_view current_ph,
                              const StatusView& status,
                              const ClusterConfig& config,
                              const VmCounts& vm_counts,
                              PlacementMode mode = PlacementMode::MinLoad);

}  // namespace rha
