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

#include <gtest/gtest.h>

#include <algorithm>

#include "rha/controller.hpp"
#include "rha/text.hpp"
#include "support/generators.hpp"

using namespace rha;

namespace {

const char kGolden[] =
    "2008-12-14/04:31:01 -- gridce - alfa01 alfa01 - 2008-12-13/13:12:01 [1] REBOOT\n"
    "2008-12-14/04:32:01 -- gridce - alfa01 alfa01 - 2008-12-14/04:31:01 [1] ..wait\n"
    "2008-12-14/04:33:01 -- gridce - alfa01 alfa01 - 2008-12-14/04:31:01 [1] ..wait\n"
    "2008-12-14/04:34:01 -- gridce - alfa01 alfa01 - 2008-12-14/04:31:01 [1] ..wait\n"
    "2008-12-14/04:35:01 -- gridce - alfa01 alfa04 - 2008-12-14/04:31:01 [2] RESTART\n"
    "2008-12-14/04:36:01 -- gridce - alfa01 alfa04 - 2008-12-14/04:35:01 [2] ..wait\n"
    "2008-12-14/04:37:01 -- gridce - alfa04 alfa04 - 2008-12-14/04:35:01 [2] ..wait\n"
    "2008-12-14/04:38:01 -- gridce - alfa04 alfa04 - 2008-12-14/04:35:01 [2] ..wait\n";

const ClusterConfig& cluster() {
  static const auto c = parse_hosts_def(
      "PH alfa01 10\nPH alfa02 10\nPH alfa03 10\nPH alfa04 10\n"
      "VM gridce 0 sl4-32 ig_CE\nVM vrt1 1 sl4-32 ig_WN\n");
  return c;
}

MonitorSnapshot dead(std::initializer_list<const char*> vms) {
  MonitorSnapshot s;
  for (const char* ph : {"alfa01", "alfa02", "alfa03", "alfa04"}) {
    s.samples.push_back({ph, Load::from_hundredths(100), 3});
  }
  for (const auto* h : cluster().virtual_machines()) {
    const bool down = std::find_if(vms.begin(), vms.end(), [&](const char* v) {
                        return h->name == v;
                      }) != vms.end();
    s.samples.push_back(down ? dead_sample(h->name) : MonitorSample{h->name, Load::from_hundredths(50), 3});
  }
  return s;
}

Timestamp at(const char* text) { return parse_timestamp(text); }

}  // namespace

TEST(LogRecord, ParsesReferenceLinesExactly) {
  for (const auto line : text::lines(kGolden)) {
    const auto r = parse_log_record(line);
    EXPECT_EQ(format_log_record(r), line);
  }
  const auto r = parse_log_record(
      "2008-12-14/04:35:01 -- gridce - alfa01 alfa04 - 2008-12-14/04:31:01 [2] RESTART");
  EXPECT_EQ(r.vm, "gridce");
  EXPECT_EQ(r.ph1, "alfa01");
  EXPECT_EQ(r.ph2, "alfa04");
  EXPECT_EQ(r.flag, Flag::Restarted);
  EXPECT_EQ(r.act, "RESTART");
  EXPECT_EQ(format_timestamp(r.last_action_at), "2008-12-14/04:31:01");
}

TEST(LogRecord, RejectsMalformed) {
  for (const char* bad : {
           "",
           "2008-12-14/04:35:01 -- gridce - alfa01 alfa04 - 2008-12-14/04:31:01 [3] RESTART",
           "2008-12-14/04:35:01 - gridce - alfa01 alfa04 - 2008-12-14/04:31:01 [2] RESTART",
           "2008-13-14/04:35:01 -- gridce - alfa01 alfa04 - 2008-12-14/04:31:01 [2] RESTART",
           "2008-12-14/04:35:01 -- gridce - alfa01 alfa04 - 2008-12-14/04:31:01 [2]",
           "2008-12-14/04:35:01 -- gridce - alfa01 - 2008-12-14/04:31:01 [2] RESTART",
       }) {
    EXPECT_THROW(parse_log_record(bad), ParseError) << bad;
  }
}

TEST(LogRecord, RoundTripRandom) {
  Rng rng(17);
  const char* acts[] = {"..wait", "REBOOT", "RESTART", "REINSTALL", "ACT"};
  for (int i = 0; i < 1000; ++i) {
    LogRecord r{Timestamp{testgen::int_in(rng, 0, 4'000'000'000)},
                testgen::name(rng),
                testgen::name(rng),
                testgen::name(rng),
                Timestamp{testgen::int_in(rng, 0, 4'000'000'000)},
                *flag_from_int(testgen::int_in(rng, 0, 2)),
                acts[testgen::int_in(rng, 0, 4)]};
    const Seconds off = testgen::int_in(rng, -12, 12) * 3600;
    EXPECT_EQ(parse_log_record(format_log_record(r, off), off), r);
  }
}

TEST(Fsm, RestartTimes) {
  EXPECT_EQ(restart_time_for(Flag::Cleared), 600);
  EXPECT_EQ(restart_time_for(Flag::Rebooted), 200);
  EXPECT_EQ(restart_time_for(Flag::Restarted), 200);
  EXPECT_FALSE(should_clear_history(3599));
  EXPECT_TRUE(should_clear_history(3600));
}

TEST(Fsm, LadderWithDefaults) {
  const auto& vm = cluster().at("vrt1");
  const auto& ce = cluster().at("gridce");
  const VmRecoveryState s0{"vrt1", "alfa01", {}, Flag::Cleared, 0};
  EXPECT_EQ(next_action(s0, vm), (Transition{ActionKind::Reboot, Flag::Rebooted, 1}));
  EXPECT_EQ(next_action({"vrt1", "a", {}, Flag::Rebooted, 1}, vm),
            (Transition{ActionKind::Restart, Flag::Restarted, 1}));
  EXPECT_EQ(next_action({"vrt1", "a", {}, Flag::Restarted, 1}, vm),
            (Transition{ActionKind::Reinstall, Flag::Cleared, 0}));
  EXPECT_EQ(next_action({"gridce", "a", {}, Flag::Restarted, 1}, ce),
            (Transition{ActionKind::NoopEscalate, Flag::Cleared, 0}));
  EXPECT_EQ(action_token(ActionKind::NoopEscalate), "ACT");
}

TEST(Fsm, StageRepeatsAndRebootDisabled) {
  StageConfig st;
  st.reboot_cycles = 2;
  st.restart_cycles = 3;
  st.reinstall_cycles = 2;
  const auto& vm = cluster().at("vrt1");
  VmRecoveryState s{"vrt1", "alfa01", {}, Flag::Cleared, 0};
  std::vector<ActionKind> kinds;
  for (int i = 0; i < 9; ++i) {
    const auto t = next_action(s, vm, st);
    kinds.push_back(t.kind);
    s.flag = t.flag;
    s.attempts = t.attempts;
  }
  using K = ActionKind;
  EXPECT_EQ(kinds, (std::vector<K>{K::Reboot, K::Reboot, K::Restart, K::Restart, K::Restart,
                                   K::Reinstall, K::Reinstall, K::Reboot, K::Reboot}));

  StageConfig no_reboot;
  no_reboot.reboot_enabled = false;
  EXPECT_EQ(next_action({"vrt1", "a", {}, Flag::Cleared, 0}, vm, no_reboot).kind, K::Restart);
}

TEST(Tick, GoldenSequenceThroughRestart) {
  StageConfig st;
  st.placement = PlacementMode::LastEligible;
  MemoryStateStore store;
  store.write({"gridce", "alfa01", at("2008-12-13/13:12:01"), Flag::Cleared, 0});
  auto snap = dead({"gridce"});
  snap.samples[0].load = Load::from_hundredths(1200);

  std::string log;
  for (const char* t : {"2008-12-14/04:31:01", "2008-12-14/04:32:01", "2008-12-14/04:33:01",
                        "2008-12-14/04:34:01", "2008-12-14/04:35:01"}) {
    log += render_log(tick(at(t), snap, store, cluster(), st));
  }
  const auto golden = text::lines(kGolden);
  std::string want = ">> Clear history\n>> REBOOT VM gridce on PH alfa01\n";
  for (int i = 0; i < 4; ++i) want += std::string(golden[i]) + "\n";
  want += ">> RESTART VM gridce on PH alfa04 [from OLD PH alfa01]\n";
  want += std::string(golden[4]) + "\n";
  EXPECT_EQ(log, want);
  EXPECT_EQ(format_vm_state(*store.read("gridce")), "alfa04 2008-12-14/04:35:01 2");
}

TEST(Tick, AliveVmsAndPhsProduceNothing) {
  MemoryStateStore store;
  MonitorSnapshot s = dead({});
  s.samples.push_back(dead_sample("alfa09"));  // undeclared
  s.samples[2] = dead_sample("alfa03");
  EXPECT_TRUE(tick(at("2008-01-01/00:00:00"), s, store, cluster()).empty());
  EXPECT_TRUE(store.states().empty());
}

namespace {

/// Independent model of the ladder for one dead VM.
struct ReferenceFsm {
  Timestamp last;
  int flag;
  bool inst;

  /// Returns the ACT token, or "..wait".
  std::string step(Timestamp now, bool& cleared) {
    const Seconds delta = now - last;
    const Seconds wait = flag == 0 ? 600 : 200;
    cleared = false;
    if (delta <= wait) return "..wait";
    if (delta >= 3600) {
      cleared = true;
      flag = 0;
    }
    std::string act = "ACT";
    if (flag == 0) {
      act = "REBOOT";
      flag = 1;
    } else if (flag == 1) {
      act = "RESTART";
      flag = 2;
    } else {
      if (inst) act = "REINSTALL";
      flag = 0;
    }
    last = now;
    return act;
  }
};

}  // namespace

TEST(Tick, RandomDeadTimelinesFollowTheLadder) {
  Rng rng(99);
  for (int timeline = 0; timeline < 1000; ++timeline) {
    const bool inst = testgen::coin(rng);
    const char* vm = inst ? "vrt1" : "gridce";
    MemoryStateStore store;
    Timestamp now{1'200'000'000 + testgen::int_in(rng, 0, 86400)};
    ReferenceFsm ref{now - testgen::int_in(rng, 0, 5000),
                     static_cast<int>(testgen::int_in(rng, 0, 2)), inst};
    store.write({vm, "alfa01", ref.last, *flag_from_int(ref.flag),
                 implied_attempts(*flag_from_int(ref.flag))});
    const auto snap = dead({vm});

    std::string prev_act;
    Timestamp prev_at = ref.last;
    int prev_flag = ref.flag;
    const auto steps = testgen::int_in(rng, 5, 40);
    for (int i = 0; i < steps; ++i) {
      // Mostly one-minute passes, sometimes a gap (controller outage).
      now += testgen::coin(rng, 0.9) ? 60 : testgen::int_in(rng, 1, 5000);
      bool cleared = false;
      const auto want = ref.step(now, cleared);
      const auto entries = tick(now, snap, store, cluster());

      ASSERT_FALSE(entries.empty());
      const bool has_clear = entries.front().action.kind == ActionKind::Clear;
      EXPECT_EQ(has_clear, cleared);
      const auto& last_entry = entries.back();
      ASSERT_TRUE(last_entry.record.has_value());
      EXPECT_EQ(last_entry.record->act, want);
      EXPECT_EQ(to_int(last_entry.record->flag), ref.flag);
      EXPECT_FALSE(!inst && want == "REINSTALL");

      if (want == "..wait") {
        EXPECT_LE(now - prev_at, prev_flag == 0 ? 600 : 200);
        continue;
      }
      EXPECT_GT(now - prev_at, prev_flag == 0 ? 600 : 200);
      // Each action follows its predecessor on the ladder unless history was cleared.
      if (!cleared && !prev_act.empty()) {
        if (want == "RESTART") EXPECT_EQ(prev_act, "REBOOT");
        if (want == "REINSTALL" || want == "ACT") EXPECT_EQ(prev_act, "RESTART");
        if (want == "REBOOT") EXPECT_TRUE(prev_act == "REINSTALL" || prev_act == "ACT");
      }
      if (cleared) EXPECT_EQ(want, "REBOOT");
      prev_act = want;
      prev_at = now;
      prev_flag = ref.flag;
    }
  }
}

TEST(Tick, NoCapacityWaitsWithoutTouchingState) {
  MemoryStateStore store;
  const VmRecoveryState before{"vrt1", "alfa01", at("2008-01-01/00:00:00"), Flag::Rebooted, 1};
  store.write(before);
  MonitorSnapshot s;
  for (const char* ph : {"alfa01", "alfa02", "alfa03", "alfa04"}) s.samples.push_back(dead_sample(ph));
  s.samples.push_back(dead_sample("vrt1"));
  s.samples.push_back({"gridce", Load::from_hundredths(50), 3});
  const auto e = tick(at("2008-01-01/00:05:00"), s, store, cluster());
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].record->act, "..wait");
  EXPECT_EQ(*store.read("vrt1"), before);
}

TEST(Tick, NoopEscalateForNonReinstallable) {
  MemoryStateStore store;
  store.write({"gridce", "alfa02", at("2008-01-01/00:00:00"), Flag::Restarted, 1});
  const auto e = tick(at("2008-01-01/00:03:21"), dead({"gridce"}), store, cluster());
  ASSERT_EQ(e.size(), 1u);
  EXPECT_TRUE(e[0].banners.empty());
  EXPECT_EQ(format_log_record(*e[0].record),
            "2008-01-01/00:03:21 -- gridce - alfa02 alfa02 - 2008-01-01/00:00:00 [0] ACT");
}

TEST(Tick, SharedOwnerViewFeedsPh1) {
  MemoryStateStore store;
  store.write({"vrt1", "alfa04", at("2008-01-01/00:00:00"), Flag::Restarted, 1});
  const OwnerView stale = [](std::string_view) { return std::optional<std::string>("alfa01"); };
  const auto e = tick(at("2008-01-01/00:01:00"), dead({"vrt1"}), store, cluster(), {}, stale);
  EXPECT_EQ(e[0].record->ph1, "alfa01");
  EXPECT_EQ(e[0].record->ph2, "alfa04");
}

TEST(ControllerSlot, EvenAndOddMinutes) {
  EXPECT_TRUE(controller_slot(ControllerId::A, Timestamp{0}));
  EXPECT_FALSE(controller_slot(ControllerId::B, Timestamp{59}));
  EXPECT_TRUE(controller_slot(ControllerId::B, Timestamp{60}));
  EXPECT_TRUE(controller_slot(ControllerId::A, Timestamp{120}));
}
