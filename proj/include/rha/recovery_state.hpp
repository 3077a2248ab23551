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
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "rha/time.hpp"

namespace rha {

/// Persisted escalation level of one VM.
enum class Flag : int {
  Cleared = 0,    // healthy, or last action was a reinstall / clear
  Rebooted = 1,   // last action was a reboot
  Restarted = 2,  // last action was a restart
};

std::optional<Flag> flag_from_int(long long value);
inline int to_int(Flag f) { return static_cast<int>(f); }

struct VmRecoveryState {
  std::string vm;
  std::string owner_ph;
  Timestamp last_action_at;
  Flag flag = Flag::Cleared;
  /// Times the stage named by `flag` has been issued in a row. Only matters
  /// when a stage is configured to repeat; see implied_attempts().
  int attempts = 0;

  friend bool operator==(const VmRecoveryState&,
                         const VmRecoveryState&) = default;
};

/// Attempt count a state line without a fourth field stands for.
inline int implied_attempts(Flag f) { return f == Flag::Cleared ? 0 : 1; }

/// `PH TIMESTAMP FLAG`, plus ` ATTEMPTS` only when it differs from
/// implied_attempts(flag). No trailing newline.
std::string format_vm_state(const VmRecoveryState& state,
                            Seconds utc_offset = 0);

/// Returns nullopt for anything unparseable; callers treat that as missing.
std::optional<VmRecoveryState> parse_vm_state(std::string_view vm,
                                              std::string_view line,
                                              Seconds utc_offset = 0);

/// Read/write contract for the per-VM state area.
class StateStore {
 public:
  virtual ~StateStore() = default;
  virtual std::optional<VmRecoveryState> read(std::string_view vm) const = 0;
  virtual void write(const VmRecoveryState& state) = 0;
};

class MemoryStateStore final : public StateStore {
 public:
  std::optional<VmRecoveryState> read(std::string_view vm) const override;
  void write(const VmRecoveryState& state) override;

  const std::map<std::string, VmRecoveryState, std::less<>>& states() const {
    return states_;
  }

 private:
  std::map<std::string, VmRecoveryState, std::less<>> states_;
};

/// One file per VM under `dir`, named after the VM, holding a single state
/// line. Mirrors the shared `vm/<VM>` area so state survives the controller.
class DirectoryStateStore final : public StateStore {
 public:
  explicit DirectoryStateStore(std::filesystem::path dir,
                               Seconds utc_offset = 0);

  std::optional<VmRecoveryState> read(std::string_view vm) const override;
  void write(const VmRecoveryState& state) override;

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  Seconds utc_offset_;
};

}  // namespace rha
