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

#include "rha/recovery_actions.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "rha/error.hpp"

namespace rha {

ClusterState::ClusterState(const ClusterConfig& config,
                           std::unique_ptr<ProfileNamespace> profiles)
    : config_(config), profiles_(std::move(profiles)) {
  if (!profiles_) profiles_ = std::make_unique<MemoryProfileNamespace>();
  for (const auto& h : config_.hosts()) {
    health_.emplace(h.name, Health{});
    if (h.is_ph()) {
      phs_.emplace(h.name, PhRuntime{h.name});
    } else {
      VmRuntime vm;
      vm.name = h.name;
      vm.running_on = config_.default_owner(h.name);
      vms_.emplace(h.name, std::move(vm));
    }
  }
}

PhRuntime& ClusterState::ph(std::string_view name) {
  auto it = phs_.find(name);
  if (it == phs_.end()) throw Error(fmt::format("unknown PH '{}'", name));
  return it->second;
}

const PhRuntime& ClusterState::ph(std::string_view name) const {
  return const_cast<ClusterState*>(this)->ph(name);
}

VmRuntime& ClusterState::vm(std::string_view name) {
  auto it = vms_.find(name);
  if (it == vms_.end()) throw Error(fmt::format("unknown VM '{}'", name));
  return it->second;
}

const VmRuntime& ClusterState::vm(std::string_view name) const {
  return const_cast<ClusterState*>(this)->vm(name);
}

bool ClusterState::responsive(std::string_view host) const {
  if (auto it = phs_.find(host); it != phs_.end()) return it->second.powered;
  const auto& v = vm(host);
  return v.powered && v.guest_up && ph(v.running_on).powered;
}

void ClusterState::mark_down(std::string_view host, Timestamp at,
                             Seconds detection_latency) {
  auto& h = health_.at(std::string(host));
  if (h.down_since) return;  // already silent; keep the original onset
  h.down_since = at;
  h.detection_latency = detection_latency;
}

void ClusterState::mark_up(std::string_view host) {
  health_.at(std::string(host)).down_since.reset();
}

std::optional<Timestamp> ClusterState::down_since(std::string_view host) const {
  return health_.at(std::string(host)).down_since;
}

std::optional<Timestamp> ClusterState::declared_dead_at(
    std::string_view host) const {
  const auto& h = health_.at(std::string(host));
  if (!h.down_since) return std::nullopt;
  return *h.down_since + h.detection_latency;
}

MonitorSnapshot ClusterState::observe(Timestamp now) const {
  constexpr Seconds kPollInterval = 15;
  MonitorSnapshot snap{now, {}};
  for (const auto& h : config_.hosts()) {
    const auto& health = health_.at(h.name);
    MonitorSample s{h.name, {}, 0};
    if (health.down_since) {
      const Seconds silent = now - *health.down_since;
      if (silent >= health.detection_latency) {
        s = dead_sample(h.name);
      } else {
        s.last_ping = std::clamp<Seconds>(silent, 0, kDeadPing - 1);
      }
    } else {
      s.load = h.is_ph() ? ph(h.name).load : vm(h.name).load;
      const Seconds phase = now.seconds() % kPollInterval;
      s.last_ping = phase < 0 ? phase + kPollInterval : phase;
    }
    snap.samples.push_back(std::move(s));
  }
  return snap;
}

void ClusterState::use_profiles(std::unique_ptr<ProfileNamespace> profiles) {
  if (profiles) profiles_ = std::move(profiles);
}

void ClusterState::note(Timestamp at, std::string what) {
  trace_.push_back({at, std::move(what)});
}

// ---- execution --------------------------------------------------------------

namespace {

/// Power the VM off wherever it runs and on at `to_ph`.
void relocate_and_power_on(VmRuntime& vm, const std::string& to_ph) {
  vm.powered = false;
  vm.guest_up = false;
  vm.running_on = to_ph;
  vm.powered = true;
  ++vm.generation;
}

}  // namespace

std::optional<Completion> execute(const RecoveryAction& action,
                                  ClusterState& cluster, Rng& rng,
                                  const TimingModel& timing) {
  const auto kind = action.kind;
  if (kind != ActionKind::Reboot && kind != ActionKind::Restart &&
      kind != ActionKind::Reinstall) {
    return std::nullopt;
  }
  const Timestamp now = action.issued_at;
  auto& target = cluster.ph(action.to_ph);
  if (!target.powered) {
    cluster.note(now, fmt::format("{} {} dropped: PH {} is down",
                                  action_token(kind), action.vm, action.to_ph));
    return std::nullopt;
  }

  Seconds delay = 0;
  if (!target.daemon_up) {
    target.daemon_up = true;
    delay += timing.daemon_restart.sample_seconds(rng);
    cluster.note(now, fmt::format("hypervisor restarted on {}", target.name));
  }

  auto& vm = cluster.vm(action.vm);
  if (kind == ActionKind::Reboot) {
    const bool reachable =
        vm.powered && cluster.ph(vm.running_on).powered && vm.reboot_responsive;
    if (!reachable) {
      cluster.note(now, fmt::format("REBOOT {} lost: guest unreachable", vm.name));
      return std::nullopt;
    }
    ++vm.generation;
    if (!vm.boot_intact) {
      cluster.note(now, fmt::format("REBOOT {}: no bootable system", vm.name));
      return std::nullopt;
    }
    delay += timing.pxe_setup.sample_seconds(rng);
    delay += timing.boot_time.sample_seconds(rng);
    cluster.note(now, fmt::format("REBOOT {} on {}", vm.name, vm.running_on));
    return Completion{now + delay, vm.name, vm.generation, kind};
  }

  const auto exchange = pxe_handshake(vm.name, true);
  if (kind == ActionKind::Reinstall) {
    const auto& spec = cluster.config().at(vm.name);
    const auto link = stage_reinstall_profile(
        spec, synthesize_host_ip(cluster.config(), vm.name), cluster.profiles());
    cluster.note(now, fmt::format("staged {} -> {} for {}", link.hex_name,
                                  link.os_profile, vm.name));
  }

  const std::string from = vm.running_on;
  relocate_and_power_on(vm, action.to_ph);
  cluster.note(now, fmt::format("{} {} on {} (from {}), pxe {} steps",
                                action_token(kind), vm.name, vm.running_on, from,
                                exchange.steps.size()));
  if (kind == ActionKind::Reinstall) {
    delay += timing.pxe_setup.sample_seconds(rng);
    delay += timing.install_time.sample_seconds(rng);
    delay += timing.pxe_setup.sample_seconds(rng);
    delay += timing.boot_time.sample_seconds(rng);
    return Completion{now + delay, vm.name, vm.generation, kind};
  }
  if (!vm.boot_intact) {
    cluster.note(now, fmt::format("RESTART {}: no bootable system", vm.name));
    return std::nullopt;
  }
  delay += timing.pxe_setup.sample_seconds(rng);
  delay += timing.boot_time.sample_seconds(rng);
  return Completion{now + delay, vm.name, vm.generation, kind};
}

bool complete(const Completion& c, ClusterState& cluster) {
  auto& vm = cluster.vm(c.vm);
  if (vm.generation != c.generation || !vm.powered ||
      !cluster.ph(vm.running_on).powered) {
    return false;
  }
  if (c.kind == ActionKind::Reinstall) vm.boot_intact = true;
  vm.guest_up = true;
  cluster.mark_up(vm.name);
  cluster.note(c.at, fmt::format("{} up on {}", vm.name, vm.running_on));
  return true;
}

}  // namespace rha
