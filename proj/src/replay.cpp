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

#include "rha/replay.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "rha/error.hpp"
#include "rha/kv_config.hpp"
#include "rha/pxe.hpp"
#include "rha/text.hpp"

namespace rha {

Distribution parse_distribution(std::string_view text) {
  const auto parts = text::split(text::trim(text), ':');
  std::vector<double> v;
  for (std::size_t i = parts.front() == "uniform" || parts.front() == "normal" ? 1 : 0;
       i < parts.size(); ++i) {
    const std::string s(text::trim(parts[i]));
    char* end = nullptr;
    const double x = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) {
      throw Error(fmt::format("bad duration '{}'", text));
    }
    v.push_back(x);
  }
  if (parts.front() == "uniform" && v.size() == 2) return Distribution::uniform(v[0], v[1]);
  if (parts.front() == "normal" && v.size() == 4) {
    return Distribution::truncated_normal(v[0], v[1], v[2], v[3]);
  }
  if (parts.size() == 1 && v.size() == 1) return Distribution::constant(v[0]);
  throw Error(fmt::format(
      "bad duration '{}' (want N, uniform:LO:HI or normal:MEAN:SD:LO:HI)", text));
}

namespace {

const std::set<std::string> kRawSections{"hosts.def"};

Timestamp timestamp_at(KvReader& r, std::string_view key, Seconds off) {
  const auto text = r.required(key);
  auto t = try_parse_timestamp(text, off);
  if (!t) {
    throw ParseError(r.line_of(key),
                     fmt::format("{}: expected YYYY-MM-DD/HH:MM:SS, got '{}'", key, text));
  }
  return *t;
}

std::optional<Timestamp> optional_timestamp(KvReader& r, std::string_view key,
                                            Seconds off) {
  if (!r.has(key)) return std::nullopt;
  return timestamp_at(r, key, off);
}

void read_duration(KvReader& r, std::string_view key, Distribution& into) {
  if (auto v = r.string(key)) {
    try {
      into = parse_distribution(*v);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(r.line_of(key), e.what());
    }
  }
}

void need_arg(const KvSection& s) {
  if (s.arg.empty()) {
    throw ParseError(s.line, fmt::format("[{}] needs a host name", s.name));
  }
}

}  // namespace

ReplayScript parse_replay_script(std::string_view text) {
  const auto sections = parse_kv(text, kRawSections);
  ReplayScript script;

  for (const auto& s : sections) {
    if (s.name != "hosts.def") continue;
    try {
      script.config = parse_hosts_def(s.raw);
    } catch (const ParseError& e) {
      // Report script lines, not lines of the embedded block.
      auto diags = e.diagnostics();
      for (auto& d : diags) d.line += s.line;
      throw ParseError(std::move(diags));
    }
  }
  for (const auto& s : sections) {
    if (s.name != "settings") continue;
    KvReader r(s);
    if (auto v = r.integer("utc_offset")) script.options.utc_offset = *v;
    const Seconds off = script.options.utc_offset;
    script.start = optional_timestamp(r, "start", off);
    script.end = optional_timestamp(r, "end", off);
    if (auto v = r.integer("tick_offset")) {
      if (*v < 0 || *v > 59) throw ParseError(r.line_of("tick_offset"), "tick_offset must be 0..59");
      script.options.tick_offset = *v;
    }
    if (auto v = r.string("controllers")) {
      if (*v == "single") {
        script.options.controllers = sim::ControllerMode::Single;
      } else if (*v == "dual") {
        script.options.controllers = sim::ControllerMode::Dual;
      } else {
        throw ParseError(r.line_of("controllers"), "controllers must be single or dual");
      }
    }
    if (auto v = r.integer("owner_sync_lag")) {
      if (*v < 0) throw ParseError(r.line_of("owner_sync_lag"), "owner_sync_lag must be >= 0");
      script.options.owner_sync_lag = *v;
    }
    if (auto v = r.integer("seed")) script.seed = static_cast<std::uint64_t>(*v);
    read_duration(r, "detection_latency", script.timing.detection_latency);
    read_duration(r, "pxe_setup", script.timing.pxe_setup);
    read_duration(r, "boot_time", script.timing.boot_time);
    read_duration(r, "install_time", script.timing.install_time);
    read_duration(r, "daemon_restart", script.timing.daemon_restart);
    r.finish();
  }

  const auto& config = script.config;
  const Seconds off = script.options.utc_offset;
  auto host_of = [&](const KvSection& s, bool want_vm, bool want_ph) {
    need_arg(s);
    const auto* h = config.find(s.arg);
    if (h == nullptr || (h->is_vm() && !want_vm) || (h->is_ph() && !want_ph)) {
      throw ParseError(s.line, fmt::format("[{} {}]: no such {}", s.name, s.arg,
                                           want_vm && want_ph ? "host"
                                           : want_vm          ? "VM"
                                                              : "PH"));
    }
    return h->name;
  };

  for (const auto& s : sections) {
    if (s.name == "settings" || s.name == "hosts.def") continue;
    if (s.name.empty()) {
      if (!s.entries.empty()) {
        throw ParseError(s.entries.front().line, "key outside of any [section]");
      }
      continue;
    }
    KvReader r(s);
    if (s.name == "stage") {
      script.stages = StageConfig::from_kv(r);
    } else if (s.name == "state") {
      ReplayScript::StateLine st;
      st.vm = host_of(s, true, false);
      st.owner = r.required("owner");
      if (const auto* ph = config.find(st.owner); ph == nullptr || !ph->is_ph()) {
        throw ParseError(r.line_of("owner"), fmt::format("owner {} is not a PH", st.owner));
      }
      st.last_action = timestamp_at(r, "last_action", off);
      const auto flag = flag_from_int(r.integer("flag").value_or(0));
      if (!flag) throw ParseError(r.line_of("flag"), "flag must be 0, 1 or 2");
      st.flag = *flag;
      st.attempts = static_cast<int>(r.integer("attempts").value_or(implied_attempts(*flag)));
      script.states.push_back(std::move(st));
    } else if (s.name == "load") {
      ReplayScript::LoadChange lc;
      lc.host = host_of(s, true, true);
      lc.at = optional_timestamp(r, "at", off);
      const auto v = r.required("value");
      auto load = Load::try_parse(v);
      if (!load) throw ParseError(r.line_of("value"), fmt::format("bad load '{}'", v));
      lc.value = *load;
      script.loads.push_back(std::move(lc));
    } else if (s.name == "crash") {
      ReplayScript::Crash c;
      c.at = timestamp_at(r, "at", off);
      const auto kind = r.required("kind");
      auto k = sim::crash_kind_from_string(kind);
      if (!k) {
        throw ParseError(r.line_of("kind"),
                         fmt::format("unknown crash kind '{}' (switchoff, loadhang, "
                                     "destructive, glitch)",
                                     kind));
      }
      c.kind = *k;
      c.host = host_of(s, c.kind != sim::CrashKind::PhPowerGlitch,
                       c.kind == sim::CrashKind::PhPowerGlitch);
      c.reboot_responsive = r.boolean("reboot_responsive").value_or(false);
      script.crashes.push_back(std::move(c));
    } else if (s.name == "controller_fail") {
      ReplayScript::ControllerOutage o;
      if (s.arg == "A") {
        o.which = ControllerId::A;
      } else if (s.arg == "B") {
        o.which = ControllerId::B;
      } else {
        throw ParseError(s.line, "[controller_fail] wants A or B");
      }
      o.from = timestamp_at(r, "from", off);
      o.until = timestamp_at(r, "until", off);
      if (o.until < o.from) throw ParseError(r.line_of("until"), "until before from");
      script.controller_outages.push_back(o);
    } else if (s.name == "daemon_fail") {
      script.daemon_failures.push_back({host_of(s, false, true), timestamp_at(r, "at", off)});
    } else {
      throw ParseError(s.line, fmt::format("unknown section [{}]", s.name));
    }
    r.finish();
  }
  return script;
}

ReplayResult replay_trace(const ReplayScript& script, const ReplayOptions& options) {
  ReplayResult result;
  if (script.empty()) return result;

  sim::Simulation sim(script.config, script.stages, script.timing, script.seed,
                      script.options);
  if (options.state_dir) {
    sim.use_store(std::make_unique<DirectoryStateStore>(*options.state_dir,
                                                        script.options.utc_offset));
  }
  if (options.profile_dir) {
    sim.cluster().use_profiles(
        std::make_unique<DirectoryProfileNamespace>(*options.profile_dir));
  }
  for (const auto& st : script.states) {
    sim.store().write({st.vm, st.owner, st.last_action, st.flag, st.attempts});
    // The state names where the VM runs now.
    sim.cluster().vm(st.vm).running_on = st.owner;
  }

  std::vector<Timestamp> event_times;
  for (const auto& lc : script.loads) {
    if (!lc.at) {
      if (script.config.at(lc.host).is_ph()) {
        sim.cluster().ph(lc.host).load = lc.value;
      } else {
        sim.cluster().vm(lc.host).load = lc.value;
      }
      continue;
    }
    sim::SimEvent e;
    e.at = *lc.at;
    e.kind = sim::EventKind::LoadChange;
    e.host = lc.host;
    e.load = lc.value;
    sim.schedule(e);
    event_times.push_back(*lc.at);
  }
  for (const auto& c : script.crashes) {
    sim.inject_crash(c.host, c.kind, c.at, c.reboot_responsive);
    event_times.push_back(c.at);
  }
  for (const auto& o : script.controller_outages) {
    sim.inject_controller_failure(o.which, o.from, o.until);
    event_times.push_back(o.until);
  }
  for (const auto& d : script.daemon_failures) {
    sim::SimEvent e;
    e.at = d.at;
    e.kind = sim::EventKind::DaemonFail;
    e.host = d.ph;
    sim.schedule(e);
    event_times.push_back(d.at);
  }

  const auto first = std::min_element(event_times.begin(), event_times.end());
  const auto last = std::max_element(event_times.begin(), event_times.end());
  const Timestamp start = script.start ? *script.start
                          : first != event_times.end() ? *first
                                                       : Timestamp{};
  const Timestamp last_event = last != event_times.end() ? std::max(*last, start) : start;
  const Timestamp end = script.end ? *script.end : last_event + sim::kTrialHorizon;

  sim.start_ticks(start);
  auto settled = [&] {
    if (sim.now() < last_event) return false;
    const auto& recs = sim.crash_records();
    if (recs.size() < script.crashes.size()) return false;
    return std::all_of(recs.begin(), recs.end(), [](const sim::CrashRecord& r) {
      return std::all_of(r.victims.begin(), r.victims.end(),
                         [](const auto& v) { return v.second.has_value(); });
    });
  };
  // With an explicit end the log runs to it; otherwise stop once settled.
  sim.run_until(end, script.end ? std::function<bool()>{} : std::function<bool()>{settled});

  result.log = sim.log();
  result.pass_times = sim.pass_times();
  for (const auto& rec : sim.crash_records()) {
    ReplayCrashOutcome out{rec.host, rec.at, std::nullopt};
    bool all = true;
    for (const auto& [vm, back] : rec.victims) {
      if (!back) {
        all = false;
      } else if (!out.recovered_at || *back > *out.recovered_at) {
        out.recovered_at = back;
      }
    }
    if (!all || rec.victims.empty()) out.recovered_at.reset();
    result.crashes.push_back(std::move(out));
  }
  return result;
}

}  // namespace rha
