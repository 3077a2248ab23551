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

#include "rha/placement.hpp"

#include <tuple>

#include <fmt/format.h>

namespace rha {

bool load_eligible(const MonitorSample& sample, Load max_load) {
  return !is_dead(sample) && sample.load.hundredths() <= max_load.hundredths();
}

PlacementDecision choose_host(std::string_view vm, std::string_view current_ph,
                              const StatusView& status,
                              const ClusterConfig& config,
                              const VmCounts& vm_counts, PlacementMode mode) {
  const auto* vm_spec = config.find(vm);
  if (vm_spec == nullptr || !vm_spec->is_vm()) {
    throw Error(fmt::format("placement for unknown VM '{}'", vm));
  }
  const auto* current = config.find(current_ph);
  if (current == nullptr || !current->is_ph()) {
    throw Error(fmt::format("VM '{}' owned by unknown PH '{}'", vm, current_ph));
  }

  using Outcome = PlacementDecision::Outcome;
  if (load_eligible(status.sample(current->name), *current->max_load)) {
    return {Outcome::SamePH, current->name};
  }

  auto count_of = [&](const std::string& ph) {
    auto it = vm_counts.find(ph);
    return it == vm_counts.end() ? 0 : it->second;
  };

  const HostSpec* best = nullptr;
  std::tuple<std::int64_t, int> best_key{};
  for (const auto* ph : config.physical_hosts()) {
    if (ph == current) continue;
    const auto& sample = status.sample(ph->name);
    if (!load_eligible(sample, *ph->max_load)) continue;
    if (mode == PlacementMode::LastEligible) {
      best = ph;
      continue;
    }
    // Strict '<' keeps the earliest declared PH among equal keys.
    const std::tuple<std::int64_t, int> key{sample.load.hundredths(),
                                            count_of(ph->name)};
    if (best == nullptr || key < best_key) {
      best = ph;
      best_key = key;
    }
  }
  if (best == nullptr) return {Outcome::WaitNoCapacity, {}};
  return {Outcome::MovedPH, best->name};
}

}  // namespace rha
