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

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rha/cluster_model.hpp"
#include "rha/controller.hpp"
#include "rha/monitor.hpp"
#include "rha/pxe.hpp"
#include "rha/rng.hpp"
#include "rha/timing.hpp"

namespace rha {

struct PhRuntime {
  std::string name;
  bool powered = true;
  bool daemon_up = true;  // hypervisor service
  Load load = Load::from_hundredths(100);
};

struct VmRuntime {
  std::string name;
  std::string running_on;
  bool powered = true;
  bool guest_up = true;
  bool boot_intact = true;         // false once /boot is gone
  bool reboot_responsive = false;  // a hung guest that still takes a reboot
  std::uint64_t generation = 0;    // bumped by every boot attempt
  Load load = Load::from_hundredths(50);
};

struct TraceEvent {
  Timestamp at;
  std::string what;
};

/// Mutable state of one simulated cluster. Owned by a single trial.
class ClusterState {
 public:
  /// VMs start powered on their default owners; `profiles` defaults to an
  /// in-memory namespace.
  explicit ClusterState(const ClusterConfig& config,
                        std::unique_ptr<ProfileNamespace> profiles = nullptr);

  const ClusterConfig& config() const { return config_; }

  PhRuntime& ph(std::string_view name);
  const PhRuntime& ph(std::string_view name) const;
  VmRuntime& vm(std::string_view name);
  const VmRuntime& vm(std::string_view name) const;

  /// Answers heartbeats: a PH when powered; a VM when powered, its guest is
  /// up, and its PH is powered.
  bool responsive(std::string_view host) const;

  /// Heartbeats stopped at `at`; the monitor reports 9999 from
  /// `at + detection_latency` on.
  void mark_down(std::string_view host, Timestamp at, Seconds detection_latency);
  void mark_up(std::string_view host);
  std::optional<Timestamp> down_since(std::string_view host) const;
  std::optional<Timestamp> declared_dead_at(std::string_view host) const;

  /// The status feed as the monitor would publish it at `now`, one row per
  /// declared host in declaration order.
  MonitorSnapshot observe(Timestamp now) const;

  ProfileNamespace& profiles() { return *profiles_; }
  void use_profiles(std::unique_ptr<ProfileNamespace> profiles);

  void note(Timestamp at, std::string what);
  const std::vector<TraceEvent>& trace() const { return trace_; }

 private:
  struct Health {
    std::optional<Timestamp> down_since;
    Seconds detection_latency = 0;
  };

  ClusterConfig config_;
  std::map<std::string, PhRuntime, std::less<>> phs_;
  std::map<std::string, VmRuntime, std::less<>> vms_;
  std::map<std::string, Health, std::less<>> health_;
  std::unique_ptr<ProfileNamespace> profiles_;
  std::vector<TraceEvent> trace_;
};

/// A boot that will bring `vm` back at `at`, unless a later boot attempt
/// (higher generation) supersedes it.
struct Completion {
  Timestamp at;
  std::string vm;
  std::uint64_t generation = 0;
  ActionKind kind = ActionKind::Restart;
};

/// Carries out a controller action against the simulated cluster.
///
/// Every action first makes sure the hypervisor service on the target PH
/// runs, restarting it (daemon_restart) when not. Then:
///  - REBOOT reaches only a guest that still answers (reboot_responsive) and
///    then boots it in place after pxe_setup + boot_time. Otherwise it is
///    lost without a trace.
///  - RESTART powers the VM off wherever it runs and on at to_ph; the guest
///    comes back after pxe_setup + boot_time if its boot area is intact.
///  - REINSTALL stages the install profile first, then restarts the VM on
///    to_ph; install plus the local boot take pxe_setup + install_time +
///    pxe_setup + boot_time and leave the boot area repaired.
/// An action aimed at a PH that is powered off is dropped; the next
/// controller pass escalates.
std::optional<Completion> execute(const RecoveryAction& action,
                                  ClusterState& cluster, Rng& rng,
                                  const TimingModel& timing);

/// Applies a completion. Returns true when it brought the VM back.
bool complete(const Completion& completion, ClusterState& cluster);

}  // namespace rha
