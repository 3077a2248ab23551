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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rha/cluster_model.hpp"
#include "rha/sim.hpp"
#include "rha/stage_config.hpp"
#include "rha/timing.hpp"

namespace rha {

/// A scripted incident: cluster, initial state and timed events.
///
///   [settings]
///   start=2008-12-14/04:25:00     # first pass at the next grid point
///   end=2008-12-14/05:00:00       # default: last event + 6 h
///   utc_offset=3600               # script and log times are local
///   tick_offset=1
///   controllers=single            # or: dual
///   owner_sync_lag=0
///   seed=1
///   detection_latency=70          # number, uniform:LO:HI or
///   pxe_setup=10                  #   normal:MEAN:SD:LO:HI
///   boot_time=normal:70:10:40:100
///   install_time=normal:352:17:300:404
///   daemon_restart=20
///
///   [stage]                       # StageConfig keys
///   [hosts.def]                   # verbatim hosts.def; default cluster if absent
///   [state VM]        owner= last_action= flag= [attempts=]
///   [load HOST]       at= value=
///   [crash HOST]      at= kind= [reboot_responsive=]
///   [controller_fail A|B]  from= until=
///   [daemon_fail PH]  at=
struct ReplayScript {
  struct StateLine {
    std::string vm;
    std::string owner;
    Timestamp last_action;
    Flag flag = Flag::Cleared;
    int attempts = 0;
  };
  struct LoadChange {
    std::string host;
    std::optional<Timestamp> at;  // none: in effect from the start
    Load value;
  };
  struct Crash {
    std::string host;
    Timestamp at;
    sim::CrashKind kind = sim::CrashKind::SwitchOff;
    bool reboot_responsive = false;
  };
  struct ControllerOutage {
    ControllerId which = ControllerId::A;
    Timestamp from;
    Timestamp until;
  };
  struct DaemonFailure {
    std::string ph;
    Timestamp at;
  };

  ClusterConfig config = sim::default_cluster();
  StageConfig stages;
  TimingModel timing;
  sim::SimOptions options;
  std::uint64_t seed = 1;
  std::optional<Timestamp> start;
  std::optional<Timestamp> end;
  std::vector<StateLine> states;
  std::vector<LoadChange> loads;
  std::vector<Crash> crashes;
  std::vector<ControllerOutage> controller_outages;
  std::vector<DaemonFailure> daemon_failures;

  bool empty() const {
    return states.empty() && loads.empty() && crashes.empty() &&
           controller_outages.empty() && daemon_failures.empty() && !start;
  }
};

/// Parses `number`, `uniform:LO:HI` or `normal:MEAN:SD:LO:HI`.
Distribution parse_distribution(std::string_view text);

ReplayScript parse_replay_script(std::string_view text);

struct ReplayCrashOutcome {
  std::string host;
  Timestamp crashed_at;
  std::optional<Timestamp> recovered_at;  // latest VM back, for a PH glitch
  std::optional<Seconds> outage() const {
    if (!recovered_at) return std::nullopt;
    return *recovered_at - crashed_at;
  }
};

struct ReplayResult {
  std::string log;
  std::vector<ReplayCrashOutcome> crashes;
  std::vector<Timestamp> pass_times;
};

struct ReplayOptions {
  std::optional<std::filesystem::path> state_dir;    // default: in memory
  std::optional<std::filesystem::path> profile_dir;  // default: in memory
};

/// Runs the script; an empty script yields an empty log.
ReplayResult replay_trace(const ReplayScript& script,
                          const ReplayOptions& options = {});

}  // namespace rha
