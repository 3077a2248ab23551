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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <string>
#include <string_view>
#include <vector>

#include "rha/cluster_model.hpp"
#include "rha/controller.hpp"
#include "rha/recovery_actions.hpp"
#include "rha/recovery_state.hpp"
#include "rha/rng.hpp"
#include "rha/stage_config.hpp"
#include "rha/timing.hpp"

namespace rha::sim {

enum class CrashKind { SwitchOff, LoadHang, DestructiveBootErase, PhPowerGlitch };

std::string_view to_string(CrashKind kind);
std::optional<CrashKind> crash_kind_from_string(std::string_view text);

enum class EventKind {
  CrashInject,
  HeartbeatDeclareDead,
  ControllerTick,
  ActionComplete,
  DaemonFail,
  ControllerFail,
  ControllerRecover,
  LoadChange,
};

struct SimEvent {
  Timestamp at;
  EventKind kind = EventKind::ControllerTick;
  std::string host;
  CrashKind crash = CrashKind::SwitchOff;
  bool reboot_responsive = false;
  Load load;
  ControllerId controller = ControllerId::A;
  std::optional<Completion> completion;
};

/// Min-queue on (at, insertion order).
class EventQueue {
 public:
  void push(SimEvent event);
  SimEvent pop();
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  Timestamp next_time() const { return heap_.top().event.at; }

 private:
  struct Slot {
    SimEvent event;
    std::uint64_t seq;
  };
  struct Later {
    bool operator()(const Slot& a, const Slot& b) const {
      if (a.event.at != b.event.at) return a.event.at > b.event.at;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Slot, std::vector<Slot>, Later> heap_;
  std::uint64_t seq_ = 0;
};

enum class ControllerMode {
  Single,  // one controller acts every minute
  Dual,    // A on even minutes, B on odd minutes
};

struct SimOptions {
  ControllerMode controllers = ControllerMode::Single;
  Seconds tick_offset = 1;  // seconds past the minute a pass runs
  Seconds utc_offset = 0;   // for log rendering
  /// When positive, passes read the VM's PH from a replica of the state area
  /// that trails the controller's own writes by this many seconds.
  Seconds owner_sync_lag = 0;
};

/// What happened to one VM since its latest crash.
struct VmOutcome {
  std::optional<Timestamp> crashed_at;
  std::optional<Timestamp> aware_at;  // first controller pass that saw it dead
  std::optional<Timestamp> recovered_at;
  std::string recovered_on;
  std::vector<std::string> actions;  // CLEAR / REBOOT / RESTART / REINSTALL / ACT
};

/// One injected crash and the VMs it took down, each with the time it came
/// back (first successful boot after the crash).
struct CrashRecord {
  std::string host;
  Timestamp at;
  CrashKind kind = CrashKind::SwitchOff;
  std::vector<std::pair<std::string, std::optional<Timestamp>>> victims;
};

/// Discrete-event run of one cluster under one controller deployment.
/// Single-threaded; virtual time only.
class Simulation {
 public:
  Simulation(ClusterConfig config, StageConfig stages, TimingModel timing,
             std::uint64_t seed, SimOptions options = {});

  ClusterState& cluster() { return cluster_; }
  const ClusterState& cluster() const { return cluster_; }
  StateStore& store() { return *store_; }
  /// Replaces the in-memory state area (e.g. with a DirectoryStateStore).
  void use_store(std::unique_ptr<StateStore> store);
  Rng& rng() { return rng_; }
  const ClusterConfig& config() const { return config_; }

  void schedule(SimEvent event);
  void inject_crash(std::string_view host, CrashKind kind, Timestamp at,
                    bool reboot_responsive = false);
  /// Takes controller `which` out between `from` and `until`.
  void inject_controller_failure(ControllerId which, Timestamp from,
                                 Timestamp until);
  /// Queues the first controller pass at the first grid point >= from.
  void start_ticks(Timestamp from);

  /// Processes events with `at <= end`, stopping early once `done` holds.
  void run_until(Timestamp end, const std::function<bool()>& done = {});

  Timestamp now() const { return now_; }
  const std::string& log() const { return log_; }
  /// Times at which a controller pass actually ran.
  const std::vector<Timestamp>& pass_times() const { return pass_times_; }
  const VmOutcome& outcome(std::string_view vm) const;
  const std::vector<CrashRecord>& crash_records() const { return crashes_; }

 private:
  void handle(const SimEvent& event);
  void crash(const SimEvent& event);
  void controller_pass(const SimEvent& event);
  bool controller_alive(ControllerId id) const;
  Timestamp next_grid_point(Timestamp from) const;
  std::optional<std::string> shared_owner(std::string_view vm, Timestamp now) const;

  ClusterConfig config_;
  StageConfig stages_;
  TimingModel timing_;
  SimOptions options_;
  Rng rng_;
  ClusterState cluster_;
  std::unique_ptr<StateStore> store_;
  EventQueue queue_;
  Timestamp now_;
  std::string log_;
  std::vector<Timestamp> pass_times_;
  std::map<std::string, VmOutcome, std::less<>> outcomes_;
  std::vector<CrashRecord> crashes_;
  std::map<std::string, std::vector<std::pair<Timestamp, std::string>>, std::less<>>
      owner_history_;
  bool alive_a_ = true;
  bool alive_b_ = true;
  bool ticking_ = false;
};

// ---- benchmark trials -------------------------------------------------------

struct CrashScenario {
  std::string name;
  CrashKind kind = CrashKind::SwitchOff;
  std::string target;  // VM, or PH for PhPowerGlitch
  StageConfig stages;
  /// When set, the target's state says this stage was issued `preset_age`
  /// seconds before the crash, so escalation resumes from there.
  std::optional<Flag> preset_flag;
  Seconds preset_age = 600;
  bool reboot_responsive = false;
  Load hang_load = Load::from_hundredths(2500);
  std::map<std::string, Load, std::less<>> ph_loads;
  ControllerMode controllers = ControllerMode::Single;
};

/// Closed set of named presets:
///  switchoff   VM halted; REBOOT stage disabled (single RESTART recovers)
///  loadhang    VM overloaded until unresponsive; REBOOT stage disabled
///  destructive /boot erased on a reinstallable VM; state preset to flag 2
///  glitch      power loss on the PH hosting the first VM; full escalation
///  awareness   VM halted; full escalation; read for crash-to-controller time
/// An empty `target` picks the natural default for the cluster.
CrashScenario named_scenario(std::string_view name, const ClusterConfig& config,
                             std::string_view target = {});
const std::vector<std::string>& scenario_names();

struct RecoverySample {
  std::size_t trial = 0;
  Seconds crash_at = 0;     // seconds from the trial origin
  Seconds detected_at = 0;  // first controller pass that saw the crash
  std::optional<Seconds> recovered_at;
  std::vector<std::string> action_path;

  std::optional<Seconds> recovery_time() const {
    if (!recovered_at) return std::nullopt;
    return *recovered_at - crash_at;
  }
  Seconds awareness_time() const { return detected_at - crash_at; }

  friend bool operator==(const RecoverySample&, const RecoverySample&) = default;
};

/// Virtual time origin of every trial (2008-01-01T02:00:00Z); crashes land
/// within the following minute.
inline constexpr Timestamp kTrialOrigin{1199145600 + 7200};
/// Give up on a trial this long after the crash.
inline constexpr Seconds kTrialHorizon = 6 * 3600;

RecoverySample run_trial(const ClusterConfig& config,
                         const CrashScenario& scenario,
                         const TimingModel& timing, std::uint64_t seed,
                         std::size_t trial_index = 0);

/// Trial i runs with child_seed(seed, i); output is in trial order whatever
/// the thread count (0 = hardware concurrency).
std::vector<RecoverySample> run_campaign(const ClusterConfig& config,
                                         const CrashScenario& scenario,
                                         const TimingModel& timing,
                                         std::size_t trials, std::uint64_t seed,
                                         unsigned jobs = 0);

inline constexpr std::string_view kCampaignCsvHeader =
    "trial,crash_at,detected_at,recovered_at,recovery_time,action_path";

/// Header plus one row per sample; unrecovered trials leave recovered_at and
/// recovery_time empty. action_path tokens are joined with '|'.
std::string campaign_csv(const std::vector<RecoverySample>& samples);

/// Cluster used when no hosts.def is given: four PHs and three VMs.
ClusterConfig default_cluster();

}  // namespace rha::sim
