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

#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "rha/recovery_state.hpp"
#include "rha/stage_config.hpp"
#include "support/generators.hpp"

using namespace rha;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("rha_state_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST(StateLine, ThreeFieldForm) {
  const auto s = parse_vm_state("gridce", "alfa04 2008-12-14/04:35:01 2");
  ASSERT_TRUE(s);
  EXPECT_EQ(s->owner_ph, "alfa04");
  EXPECT_EQ(format_timestamp(s->last_action_at), "2008-12-14/04:35:01");
  EXPECT_EQ(s->flag, Flag::Restarted);
  EXPECT_EQ(s->attempts, 1);
  EXPECT_EQ(format_vm_state(*s), "alfa04 2008-12-14/04:35:01 2");
}

TEST(StateLine, AttemptsOnlyWhenNotImplied) {
  VmRecoveryState s{"v", "a", parse_timestamp("2008-01-01/00:00:00"), Flag::Cleared, 0};
  EXPECT_EQ(format_vm_state(s), "a 2008-01-01/00:00:00 0");
  s.attempts = 1;
  EXPECT_EQ(format_vm_state(s), "a 2008-01-01/00:00:00 0 1");
  s.flag = Flag::Rebooted;
  EXPECT_EQ(format_vm_state(s), "a 2008-01-01/00:00:00 1");
  s.attempts = 3;
  EXPECT_EQ(format_vm_state(s), "a 2008-01-01/00:00:00 1 3");
}

TEST(StateLine, GarbageIsMissing) {
  for (const char* bad : {"", "alfa01", "alfa01 2008-12-14/04:35:01", "alfa01 yesterday 1",
                          "alfa01 2008-12-14/04:35:01 7", "alfa01 2008-12-14/04:35:01 1 x",
                          "alfa01 2008-12-14/04:35:01 1 2 3"}) {
    EXPECT_FALSE(parse_vm_state("v", bad)) << bad;
  }
}

TEST(StateLine, RoundTripRandom) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const auto flag = *flag_from_int(testgen::int_in(rng, 0, 2));
    VmRecoveryState s{"vm", testgen::name(rng), Timestamp{testgen::int_in(rng, 0, 4'000'000'000)},
                      flag, testgen::coin(rng) ? implied_attempts(flag)
                                               : static_cast<int>(testgen::int_in(rng, 0, 9))};
    EXPECT_EQ(parse_vm_state("vm", format_vm_state(s)), s);
  }
}

TEST(DirectoryStore, OneFilePerVm) {
  const auto dir = scratch("dir");
  DirectoryStateStore store(dir);
  EXPECT_FALSE(store.read("gridce"));
  store.write({"gridce", "alfa04", parse_timestamp("2008-12-14/04:35:01"), Flag::Restarted, 1});
  std::ifstream f(dir / "gridce");
  std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, "alfa04 2008-12-14/04:35:01 2\n");
  EXPECT_EQ(store.read("gridce")->owner_ph, "alfa04");
  {
    std::ofstream junk(dir / "vrt1");
    junk << "not a state\n";
  }
  EXPECT_FALSE(store.read("vrt1"));
  fs::remove_all(dir);
}

TEST(MemoryStore, ReadBackWhatWasWritten) {
  MemoryStateStore store;
  const VmRecoveryState s{"v", "a", Timestamp{5}, Flag::Rebooted, 1};
  store.write(s);
  EXPECT_EQ(store.read("v"), s);
  EXPECT_FALSE(store.read("w"));
}

TEST(StageConfig, DefaultsAndParsing) {
  const StageConfig d;
  EXPECT_EQ(d.wait_for(Flag::Cleared), 600);
  EXPECT_EQ(d.wait_for(Flag::Rebooted), 200);
  EXPECT_EQ(StageConfig::parse(""), d);
  const auto s = StageConfig::parse(
      "reboot_enabled=0\n"
      "cycles_per_stage=reboot:2,restart:3\n"
      "wait_overrides=0:300, 2:100\n"
      "clear_after=7200\n"
      "placement=last_eligible\n");
  EXPECT_FALSE(s.reboot_enabled);
  EXPECT_EQ(s.reboot_cycles, 2);
  EXPECT_EQ(s.restart_cycles, 3);
  EXPECT_EQ(s.reinstall_cycles, 1);
  EXPECT_EQ(s.wait_by_flag, (std::array<Seconds, 3>{300, 200, 100}));
  EXPECT_EQ(s.clear_after, 7200);
  EXPECT_EQ(s.placement, PlacementMode::LastEligible);
}

TEST(StageConfig, Errors) {
  for (const char* bad : {"placement=best\n", "cycles_per_stage=reboot:0\n",
                          "cycles_per_stage=nap:1\n", "wait_overrides=3:10\n",
                          "clear_after=0\n", "bogus=1\n", "reboot_enabled=maybe\n",
                          "placement=min_load\nplacement=last_eligible\n"}) {
    EXPECT_THROW(StageConfig::parse(bad), ParseError) << bad;
  }
}
