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

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rha/cluster_model.hpp"
#include "rha/monitor.hpp"
#include "rha/recovery_state.hpp"
#include "rha/stage_config.hpp"
#include "rha/time.hpp"

namespace rha {

enum class ActionKind { Wait, Clear, Reboot, Restart, Reinstall, NoopEscalate };

/// Token written in the ACT column. A flag-2 step on a VM that may not be
/// reinstalled leaves the placeholder "ACT".
std::string_view action_token(ActionKind kind);

struct RecoveryAction {
  ActionKind kind = ActionKind::Wait;
  std::string vm;
  std::string from_ph;
  std::string to_ph;
  Timestamp issued_at;

  friend bool operator==(const RecoveryAction&, const RecoveryAction&) = default;
};

/// `NOW -- VM - PH1 PH2 - LAST [F] ACT`
struct LogRecord {
  Timestamp now;
  std::string vm;
  std::string ph1;
  std::string ph2;
  Timestamp last_action_at;
  Flag flag = Flag::Cleared;
  std::string act;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

std::string format_log_record(const LogRecord& record, Seconds utc_offset = 0);
LogRecord parse_log_record(std::string_view line, Seconds utc_offset = 0);

/// Seconds to hold off after the action recorded by `flag`.
Seconds restart_time_for(Flag flag);

bool should_clear_history(Seconds delta_t, Seconds clear_after = 3600);

struct Transition {
  ActionKind kind;
  Flag flag;
  int attempts;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// The escalation step for a dead VM whose hold-off has expired.
Transition next_action(const VmRecoveryState& state, const HostSpec& vm,
                       const StageConfig& stages = {});

/// State assumed for a VM that has no (readable) state file.
VmRecoveryState initial_state(std::string_view vm, const ClusterConfig& config);

/// One logical step of a controller pass: optional `>>` banner lines
/// followed by an optional record line.
struct TickEntry {
  RecoveryAction action;
  std::vector<std::string> banners;
  std::optional<LogRecord> record;
};

/// Where a pass reads a VM's current PH when that differs from the state
/// store (a replicated copy of the state area). nullopt falls back to the
/// store.
using OwnerView = std::function<std::optional<std::string>(std::string_view vm)>;

/// One controller pass over the cluster. Dead VMs are handled in feed order;
/// live VMs, PHs and hosts not declared in `config` produce nothing. Writes
/// the new per-VM state into `store`.
///
/// PH1 is the owner read through `shared` when given, else the store's.
/// Wait records print PH1 and the store's owner, which coincide unless the
/// shared copy lags.
std::vector<TickEntry> tick(Timestamp now, const MonitorSnapshot& snapshot,
                            StateStore& store, const ClusterConfig& config,
                            const StageConfig& stages = {},
                            const OwnerView& shared = {});

/// Log lines for `entries`, each terminated by '\n'.
std::string render_log(const std::vector<TickEntry>& entries,
                       Seconds utc_offset = 0);

enum class ControllerId { A, B };

/// In a two-controller deployment A owns even minutes and B odd ones.
bool controller_slot(ControllerId id, Timestamp now);

}  // namespace rha
