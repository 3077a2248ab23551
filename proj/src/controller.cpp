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

#include "rha/controller.hpp"

#include <fmt/format.h>

#include "rha/error.hpp"
#include "rha/placement.hpp"
#include "rha/text.hpp"

namespace rha {

std::string_view action_token(ActionKind kind) {
  switch (kind) {
    case ActionKind::Wait: return "..wait";
    case ActionKind::Clear: return "CLEAR";
    case ActionKind::Reboot: return "REBOOT";
    case ActionKind::Restart: return "RESTART";
    case ActionKind::Reinstall: return "REINSTALL";
    case ActionKind::NoopEscalate: return "ACT";
  }
  return "?";
}

// ---- log records ------------------------------------------------------------

std::string format_log_record(const LogRecord& r, Seconds utc_offset) {
  return fmt::format("{} -- {} - {} {} - {} [{}] {}",
                     format_timestamp(r.now, utc_offset), r.vm, r.ph1, r.ph2,
                     format_timestamp(r.last_action_at, utc_offset),
                     to_int(r.flag), r.act);
}

LogRecord parse_log_record(std::string_view line, Seconds utc_offset) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  const auto f = text::split(line, ' ');
  auto fail = [&](std::string_view why) -> ParseError {
    return ParseError(0, fmt::format("bad log record ({}): '{}'", why, line));
  };
  if (f.size() != 10) throw fail("want 10 space-separated fields");
  if (f[1] != "--" || f[3] != "-" || f[6] != "-") throw fail("separators");
  const auto now = try_parse_timestamp(f[0], utc_offset);
  const auto last = try_parse_timestamp(f[7], utc_offset);
  if (!now || !last) throw fail("timestamp");
  if (f[8].size() != 3 || f[8][0] != '[' || f[8][2] != ']') throw fail("flag");
  const auto flag = flag_from_int(f[8][1] - '0');
  if (!flag) throw fail("flag");
  for (const auto idx : {2, 4, 5}) {
    if (!valid_hostname(f[static_cast<std::size_t>(idx)])) throw fail("host");
  }
  if (f[9].empty()) throw fail("action");
  return LogRecord{*now,           std::string(f[2]), std::string(f[4]),
                   std::string(f[5]), *last,          *flag,
                   std::string(f[9])};
}

// ---- transition rules -------------------------------------------------------

Seconds restart_time_for(Flag flag) { return StageConfig{}.wait_for(flag); }

bool should_clear_history(Seconds delta_t, Seconds clear_after) {
  return delta_t >= clear_after;
}

Transition next_action(const VmRecoveryState& state, const HostSpec& vm,
                       const StageConfig& stages) {
  if (!vm.is_vm()) throw Error(fmt::format("{} is not a VM", vm.name));
  const bool reinstallable = vm.reinstallable.value_or(false);
  auto first_stage = [&]() -> Transition {
    if (stages.reboot_enabled) return {ActionKind::Reboot, Flag::Rebooted, 1};
    return {ActionKind::Restart, Flag::Restarted, 1};
  };
  switch (state.flag) {
    case Flag::Cleared:
      // attempts > 0 here means a reinstall was issued and may repeat.
      if (reinstallable && state.attempts > 0 &&
          state.attempts < stages.reinstall_cycles) {
        return {ActionKind::Reinstall, Flag::Cleared, state.attempts + 1};
      }
      return first_stage();
    case Flag::Rebooted:
      if (stages.reboot_enabled && state.attempts < stages.reboot_cycles) {
        return {ActionKind::Reboot, Flag::Rebooted, state.attempts + 1};
      }
      return {ActionKind::Restart, Flag::Restarted, 1};
    case Flag::Restarted:
      if (state.attempts < stages.restart_cycles) {
        return {ActionKind::Restart, Flag::Restarted, state.attempts + 1};
      }
      if (reinstallable) {
        return {ActionKind::Reinstall, Flag::Cleared,
                stages.reinstall_cycles > 1 ? 1 : 0};
      }
      return {ActionKind::NoopEscalate, Flag::Cleared, 0};
  }
  throw Error(fmt::format("invalid flag {} for {}", to_int(state.flag), vm.name));
}

VmRecoveryState initial_state(std::string_view vm, const ClusterConfig& config) {
  return VmRecoveryState{std::string(vm), config.default_owner(vm), Timestamp{0},
                         Flag::Cleared, 0};
}

// ---- controller pass --------------------------------------------------------

namespace {

VmCounts count_owners(const StateStore& store, const ClusterConfig& config) {
  VmCounts counts;
  for (const auto* vm : config.virtual_machines()) {
    auto state = store.read(vm->name);
    const auto* owner = state ? config.find(state->owner_ph) : nullptr;
    const auto& ph = (owner != nullptr && owner->is_ph())
                         ? owner->name
                         : config.default_owner(vm->name);
    ++counts[ph];
  }
  return counts;
}

std::string action_banner(ActionKind kind, const std::string& vm,
                          const std::string& ph1, const std::string& ph2) {
  if (kind == ActionKind::Reboot) {
    return fmt::format(">> REBOOT VM {} on PH {}", vm, ph1);
  }
  return fmt::format(">> {} VM {} on PH {} [from OLD PH {}]", action_token(kind),
                     vm, ph2, ph1);
}

}  // namespace

std::vector<TickEntry> tick(Timestamp now, const MonitorSnapshot& snapshot,
                            StateStore& store, const ClusterConfig& config,
                            const StageConfig& stages, const OwnerView& shared) {
  std::vector<TickEntry> entries;
  const StatusView status(snapshot, config);

  for (const auto& name : status.order()) {
    const auto& spec = config.at(name);
    if (!spec.is_vm() || !is_dead(status.sample(name))) continue;

    auto state = store.read(name).value_or(initial_state(name, config));
    if (const auto* owner = config.find(state.owner_ph);
        owner == nullptr || !owner->is_ph()) {
      state.owner_ph = config.default_owner(name);
    }
    std::string ph1 = state.owner_ph;
    if (shared) {
      if (auto seen = shared(name)) {
        if (const auto* h = config.find(*seen); h != nullptr && h->is_ph()) ph1 = *seen;
      }
    }
    const std::string stored_ph = state.owner_ph;
    const Timestamp last = state.last_action_at;
    const Seconds delta_t = now - last;

    auto wait_entry = [&](Flag flag) {
      TickEntry e;
      e.action = {ActionKind::Wait, name, ph1, ph1, now};
      e.record = LogRecord{now, name, ph1, stored_ph, last, flag,
                           std::string(action_token(ActionKind::Wait))};
      return e;
    };

    if (delta_t <= stages.wait_for(state.flag)) {
      entries.push_back(wait_entry(state.flag));
      continue;
    }

    if (should_clear_history(delta_t, stages.clear_after)) {
      TickEntry e;
      e.action = {ActionKind::Clear, name, ph1, ph1, now};
      e.banners.push_back(">> Clear history");
      entries.push_back(std::move(e));
      state.flag = Flag::Cleared;
      state.attempts = 0;
      store.write(state);
    }

    const auto step = next_action(state, spec, stages);
    std::string ph2 = ph1;
    if (step.kind == ActionKind::Restart || step.kind == ActionKind::Reinstall) {
      const auto decision =
          choose_host(name, ph1, status, config, count_owners(store, config),
                      stages.placement);
      if (!decision.placed()) {
        entries.push_back(wait_entry(state.flag));
        continue;
      }
      ph2 = decision.host;
    }

    TickEntry e;
    e.action = {step.kind, name, ph1, ph2, now};
    if (step.kind != ActionKind::NoopEscalate) {
      e.banners.push_back(action_banner(step.kind, name, ph1, ph2));
    }
    e.record = LogRecord{now,       name,      ph1,
                         ph2,       last,      step.flag,
                         std::string(action_token(step.kind))};
    entries.push_back(std::move(e));
    store.write(VmRecoveryState{name, ph2, now, step.flag, step.attempts});
  }
  return entries;
}

std::string render_log(const std::vector<TickEntry>& entries,
                       Seconds utc_offset) {
  std::string out;
  for (const auto& e : entries) {
    for (const auto& b : e.banners) {
      out += b;
      out += '\n';
    }
    if (e.record) {
      out += format_log_record(*e.record, utc_offset);
      out += '\n';
    }
  }
  return out;
}

bool controller_slot(ControllerId id, Timestamp now) {
  const bool even = now.minute() % 2 == 0;
  return id == ControllerId::A ? even : !even;
}

}  // namespace rha
