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

#include "rha/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include <fmt/format.h>

#include "rha/error.hpp"

namespace rha::sim {

std::string_view to_string(CrashKind kind) {
  switch (kind) {
    case CrashKind::SwitchOff: return "switchoff";
    case CrashKind::LoadHang: return "loadhang";
    case CrashKind::DestructiveBootErase: return "destructive";
    case CrashKind::PhPowerGlitch: return "glitch";
  }
  return "?";
}

std::optional<CrashKind> crash_kind_from_string(std::string_view text) {
  for (auto k : {CrashKind::SwitchOff, CrashKind::LoadHang,
                 CrashKind::DestructiveBootErase, CrashKind::PhPowerGlitch}) {
    if (to_string(k) == text) return k;
  }
  return std::nullopt;
}

// ---- event queue ------------------------------------------------------------

void EventQueue::push(SimEvent event) {
  heap_.push(Slot{std::move(event), seq_++});
}

SimEvent EventQueue::pop() {
  SimEvent e = heap_.top().event;
  heap_.pop();
  return e;
}

// ---- simulation -------------------------------------------------------------

Simulation::Simulation(ClusterConfig config, StageConfig stages,
                       TimingModel timing, std::uint64_t seed,
                       SimOptions options)
    : config_(std::move(config)),
      stages_(stages),
      timing_(std::move(timing)),
      options_(options),
      rng_(seed),
      cluster_(config_),
      store_(std::make_unique<MemoryStateStore>()) {}

void Simulation::use_store(std::unique_ptr<StateStore> store) {
  store_ = std::move(store);
}

const VmOutcome& Simulation::outcome(std::string_view vm) const {
  static const VmOutcome kNone;
  auto it = outcomes_.find(vm);
  return it == outcomes_.end() ? kNone : it->second;
}

void Simulation::schedule(SimEvent event) { queue_.push(std::move(event)); }

void Simulation::inject_crash(std::string_view host, CrashKind kind,
                              Timestamp at, bool reboot_responsive) {
  const auto& spec = config_.at(host);
  if (kind == CrashKind::PhPowerGlitch ? !spec.is_ph() : !spec.is_vm()) {
    throw Error(fmt::format("{} crash cannot target {}", to_string(kind), host));
  }
  if (kind == CrashKind::DestructiveBootErase && !spec.reinstallable.value_or(false)) {
    throw Error(fmt::format("destructive crash needs a reinstallable VM, {} is not",
                            host));
  }
  SimEvent e;
  e.at = at;
  e.kind = EventKind::CrashInject;
  e.host = std::string(host);
  e.crash = kind;
  e.reboot_responsive = reboot_responsive;
  schedule(std::move(e));
}

void Simulation::inject_controller_failure(ControllerId which, Timestamp from,
                                           Timestamp until) {
  SimEvent fail;
  fail.at = from;
  fail.kind = EventKind::ControllerFail;
  fail.controller = which;
  schedule(fail);
  SimEvent recover = fail;
  recover.at = until;
  recover.kind = EventKind::ControllerRecover;
  schedule(recover);
}

Timestamp Simulation::next_grid_point(Timestamp from) const {
  Timestamp t{from.minute() * 60 + options_.tick_offset};
  while (t < from) t += 60;
  return t;
}

void Simulation::start_ticks(Timestamp from) {
  if (ticking_) return;
  ticking_ = true;
  SimEvent e;
  e.at = next_grid_point(from);
  e.kind = EventKind::ControllerTick;
  schedule(e);
}

void Simulation::run_until(Timestamp end, const std::function<bool()>& done) {
  while (!queue_.empty() && queue_.next_time() <= end) {
    const SimEvent e = queue_.pop();
    now_ = e.at;
    handle(e);
    if (done && done()) break;
  }
}

std::optional<std::string> Simulation::shared_owner(std::string_view vm,
                                                   Timestamp now) const {
  auto it = owner_history_.find(vm);
  if (it == owner_history_.end()) return std::nullopt;
  std::optional<std::string> seen;
  for (const auto& [at, owner] : it->second) {
    if (at + options_.owner_sync_lag > now) break;
    seen = owner;
  }
  return seen;
}

bool Simulation::controller_alive(ControllerId id) const {
  return id == ControllerId::A ? alive_a_ : alive_b_;
}

void Simulation::handle(const SimEvent& e) {
  switch (e.kind) {
    case EventKind::CrashInject:
      crash(e);
      break;
    case EventKind::HeartbeatDeclareDead:
      cluster_.note(e.at, fmt::format("monitor reports {} dead", e.host));
      break;
    case EventKind::ControllerTick:
      controller_pass(e);
      break;
    case EventKind::ActionComplete:
      if (e.completion && complete(*e.completion, cluster_)) {
        auto& out = outcomes_[e.completion->vm];
        out.recovered_at = e.at;
        out.recovered_on = cluster_.vm(e.completion->vm).running_on;
        for (auto& rec : crashes_) {
          for (auto& [vm, back] : rec.victims) {
            if (vm == e.completion->vm && !back) back = e.at;
          }
        }
      }
      break;
    case EventKind::DaemonFail:
      cluster_.ph(e.host).daemon_up = false;
      cluster_.note(e.at, fmt::format("hypervisor down on {}", e.host));
      break;
    case EventKind::ControllerFail:
    case EventKind::ControllerRecover: {
      const bool alive = e.kind == EventKind::ControllerRecover;
      (e.controller == ControllerId::A ? alive_a_ : alive_b_) = alive;
      break;
    }
    case EventKind::LoadChange:
      if (config_.at(e.host).is_ph()) {
        cluster_.ph(e.host).load = e.load;
      } else {
        cluster_.vm(e.host).load = e.load;
      }
      break;
  }
}

void Simulation::crash(const SimEvent& e) {
  std::vector<std::string> victims;
  if (e.crash == CrashKind::PhPowerGlitch) {
    auto& ph = cluster_.ph(e.host);
    ph.powered = false;
    ph.daemon_up = false;
    for (const auto* vm : config_.virtual_machines()) {
      auto& rt = cluster_.vm(vm->name);
      if (rt.running_on != e.host) continue;
      rt.powered = false;
      rt.guest_up = false;
      victims.push_back(vm->name);
    }
    victims.insert(victims.begin(), e.host);
  } else {
    auto& vm = cluster_.vm(e.host);
    vm.guest_up = false;
    vm.reboot_responsive = e.reboot_responsive;
    switch (e.crash) {
      case CrashKind::SwitchOff:
        vm.powered = false;
        break;
      case CrashKind::LoadHang:
        break;
      case CrashKind::DestructiveBootErase:
        vm.boot_intact = false;
        break;
      case CrashKind::PhPowerGlitch:
        break;
    }
    victims.push_back(e.host);
  }
  cluster_.note(e.at, fmt::format("{} crash on {}", to_string(e.crash), e.host));
  CrashRecord rec{e.host, e.at, e.crash, {}};
  for (const auto& host : victims) {
    if (config_.at(host).is_vm()) rec.victims.emplace_back(host, std::nullopt);
  }
  crashes_.push_back(std::move(rec));

  for (const auto& host : victims) {
    const Seconds latency = timing_.detection_latency.sample_seconds(rng_);
    cluster_.mark_down(host, e.at, latency);
    if (config_.at(host).is_vm()) outcomes_[host] = VmOutcome{e.at, {}, {}, {}, {}};
    SimEvent declared;
    declared.at = e.at + latency;
    declared.kind = EventKind::HeartbeatDeclareDead;
    declared.host = host;
    schedule(std::move(declared));
  }
}

void Simulation::controller_pass(const SimEvent& e) {
  const ControllerId owner = options_.controllers == ControllerMode::Single
                                 ? ControllerId::A
                             : controller_slot(ControllerId::A, e.at)
                                 ? ControllerId::A
                                 : ControllerId::B;
  if (controller_alive(owner)) {
    pass_times_.push_back(e.at);
    OwnerView shared;
    if (options_.owner_sync_lag > 0) {
      shared = [this, at = e.at](std::string_view vm) { return shared_owner(vm, at); };
    }
    const auto entries =
        tick(e.at, cluster_.observe(e.at), *store_, config_, stages_, shared);
    log_ += render_log(entries, options_.utc_offset);
    for (const auto& entry : entries) {
      auto& out = outcomes_[entry.action.vm];
      if (out.crashed_at && !out.aware_at) out.aware_at = e.at;
      if (entry.action.kind == ActionKind::Wait) continue;
      if (options_.owner_sync_lag > 0) {
        if (auto st = store_->read(entry.action.vm)) {
          owner_history_[entry.action.vm].emplace_back(e.at, st->owner_ph);
        }
      }
      out.actions.emplace_back(action_token(entry.action.kind));
      if (auto done = execute(entry.action, cluster_, rng_, timing_)) {
        SimEvent c;
        c.at = done->at;
        c.kind = EventKind::ActionComplete;
        c.host = done->vm;
        c.completion = std::move(done);
        schedule(std::move(c));
      }
    }
  }
  SimEvent next;
  next.at = e.at + 60;
  next.kind = EventKind::ControllerTick;
  schedule(next);
}

// ---- scenarios --------------------------------------------------------------

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> kNames{"switchoff", "loadhang",
                                               "destructive", "glitch",
                                               "awareness"};
  return kNames;
}

CrashScenario named_scenario(std::string_view name, const ClusterConfig& config,
                             std::string_view target) {
  const auto vms = config.virtual_machines();
  if (vms.empty()) throw Error("scenario needs at least one VM in the cluster");

  CrashScenario s;
  s.name = std::string(name);
  if (name == "switchoff" || name == "awareness") {
    s.kind = CrashKind::SwitchOff;
    s.stages.reboot_enabled = name == "awareness";
  } else if (name == "loadhang") {
    s.kind = CrashKind::LoadHang;
    s.stages.reboot_enabled = false;
  } else if (name == "destructive") {
    s.kind = CrashKind::DestructiveBootErase;
    s.preset_flag = Flag::Restarted;
  } else if (name == "glitch") {
    s.kind = CrashKind::PhPowerGlitch;
  } else {
    throw Error(fmt::format("unknown scenario '{}' (known: switchoff, loadhang, "
                            "destructive, glitch, awareness)",
                            name));
  }

  if (!target.empty()) {
    s.target = std::string(target);
  } else if (s.kind == CrashKind::PhPowerGlitch) {
    s.target = config.default_owner(vms.front()->name);
  } else if (s.kind == CrashKind::DestructiveBootErase) {
    auto it = std::find_if(vms.begin(), vms.end(), [](const HostSpec* h) {
      return h->reinstallable.value_or(false) && h->os_profile;
    });
    if (it == vms.end()) throw Error("destructive scenario needs a reinstallable VM");
    s.target = (*it)->name;
  } else {
    s.target = vms.front()->name;
  }

  const auto* spec = config.find(s.target);
  if (spec == nullptr) throw Error(fmt::format("unknown target host '{}'", s.target));
  if (s.kind == CrashKind::PhPowerGlitch ? !spec->is_ph() : !spec->is_vm()) {
    throw Error(fmt::format("scenario {} cannot target {}", name, s.target));
  }
  if (s.kind == CrashKind::DestructiveBootErase &&
      !(spec->reinstallable.value_or(false) && spec->os_profile)) {
    throw Error(fmt::format("{} is not reinstallable", s.target));
  }
  return s;
}

// ---- trials -----------------------------------------------------------------

RecoverySample run_trial(const ClusterConfig& config,
                         const CrashScenario& scenario,
                         const TimingModel& timing, std::uint64_t seed,
                         std::size_t trial_index) {
  SimOptions options;
  options.controllers = scenario.controllers;
  Simulation sim(config, scenario.stages, timing, seed, options);
  for (const auto& [ph, load] : scenario.ph_loads) sim.cluster().ph(ph).load = load;

  const Seconds phase = static_cast<Seconds>(
      std::floor(timing.controller_phase.sample(sim.rng())));
  const Timestamp crash_at = kTrialOrigin + phase;

  std::vector<std::string> targets;
  if (scenario.kind == CrashKind::PhPowerGlitch) {
    for (const auto* vm : config.virtual_machines()) {
      if (sim.cluster().vm(vm->name).running_on == scenario.target) {
        targets.push_back(vm->name);
      }
    }
    if (targets.empty()) {
      throw Error(fmt::format("PH {} hosts no VMs to recover", scenario.target));
    }
  } else {
    targets.push_back(scenario.target);
    if (scenario.kind == CrashKind::LoadHang) {
      sim.cluster().vm(scenario.target).load = scenario.hang_load;
    }
  }
  if (scenario.preset_flag) {
    const auto& owner = sim.cluster().vm(scenario.target).running_on;
    sim.store().write(VmRecoveryState{scenario.target, owner,
                                      crash_at - scenario.preset_age,
                                      *scenario.preset_flag,
                                      implied_attempts(*scenario.preset_flag)});
  }

  sim.start_ticks(kTrialOrigin);
  sim.inject_crash(scenario.target, scenario.kind, crash_at,
                   scenario.reboot_responsive);
  auto all_recovered = [&] {
    return std::all_of(targets.begin(), targets.end(), [&](const auto& vm) {
      return sim.outcome(vm).recovered_at.has_value();
    });
  };
  sim.run_until(crash_at + kTrialHorizon, all_recovered);

  RecoverySample sample;
  sample.trial = trial_index;
  sample.crash_at = crash_at - kTrialOrigin;
  std::optional<Timestamp> aware;
  std::optional<Timestamp> recovered;
  bool all = true;
  for (const auto& vm : targets) {
    const auto& out = sim.outcome(vm);
    if (out.aware_at && (!aware || *out.aware_at < *aware)) aware = out.aware_at;
    if (!out.recovered_at) {
      all = false;
    } else if (!recovered || *out.recovered_at > *recovered) {
      recovered = out.recovered_at;
    }
    for (const auto& a : out.actions) {
      sample.action_path.push_back(targets.size() > 1 ? vm + ":" + a : a);
    }
  }
  sample.detected_at = (aware ? *aware : crash_at) - kTrialOrigin;
  if (all && recovered) sample.recovered_at = *recovered - kTrialOrigin;
  return sample;
}

std::vector<RecoverySample> run_campaign(const ClusterConfig& config,
                                         const CrashScenario& scenario,
                                         const TimingModel& timing,
                                         std::size_t trials, std::uint64_t seed,
                                         unsigned jobs) {
  if (trials == 0) throw Error("a campaign needs at least one trial");
  std::vector<RecoverySample> samples(trials);
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, trials));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < trials; i = next++) {
        samples[i] = run_trial(config, scenario, timing, child_seed(seed, i), i);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = trials;
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return samples;
}

std::string campaign_csv(const std::vector<RecoverySample>& samples) {
  std::string out(kCampaignCsvHeader);
  out += '\n';
  for (const auto& s : samples) {
    std::string path;
    for (const auto& a : s.action_path) {
      if (!path.empty()) path += '|';
      path += a;
    }
    const auto rt = s.recovery_time();
    out += fmt::format("{},{},{},{},{},{}\n", s.trial, s.crash_at, s.detected_at,
                       s.recovered_at ? fmt::format("{}", *s.recovered_at) : "",
                       rt ? fmt::format("{}", *rt) : "", path);
  }
  return out;
}

ClusterConfig default_cluster() {
  return parse_hosts_def(
      "# TYPE HOSTNAME MAXL INST OS MW\n"
      "PH alfa01 10\n"
      "PH alfa02 10\n"
      "PH alfa03 10\n"
      "PH alfa04 10\n"
      "VM gridce 0 sl4-32 ig_CE\n"
      "VM vrt1 1 sl4-32 ig_WN\n"
      "VM vrt2 1 sl4-64 ig_WN\n");
}

}  // namespace rha::sim
