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
#include <tuple>

#include "rha/placement.hpp"
#include "support/generators.hpp"

using namespace rha;
using Outcome = PlacementDecision::Outcome;

namespace {

/// Load text with 0-4 fractional digits.
std::string load_text(Rng& rng) {
  std::string s = std::to_string(testgen::int_in(rng, 0, 15));
  const auto digits = testgen::int_in(rng, 0, 4);
  if (digits > 0) s += '.';
  for (int i = 0; i < digits; ++i) s += static_cast<char>('0' + testgen::int_in(rng, 0, 9));
  return s;
}

/// Whole hundredths of a decimal string, truncated, computed on the text.
long long oracle_hundredths(const std::string& s) {
  const auto dot = s.find('.');
  const std::string whole = s.substr(0, dot);
  std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
  frac = (frac + "00").substr(0, 2);
  return std::stoll(whole) * 100 + std::stoll(frac);
}

struct Case {
  ClusterConfig config;
  MonitorSnapshot snapshot;
  std::vector<long long> ph_load;  // oracle, by PH index
  std::vector<long long> ph_max;
  std::vector<bool> ph_alive;
  std::vector<std::string> ph_names;
  VmCounts counts;
};

Case random_case(Rng& rng) {
  Case c;
  const auto phs = testgen::int_in(rng, 1, 7);
  std::string def;
  for (int i = 0; i < phs; ++i) {
    const auto max = load_text(rng);
    const auto max_h = oracle_hundredths(max);
    const std::string name = "ph" + std::to_string(i);
    // Zero max loads are rejected by the parser.
    def += "PH " + name + " " + (max_h == 0 ? "0.01" : max) + "\n";
    c.ph_max.push_back(max_h == 0 ? 1 : max_h);
    c.ph_names.push_back(name);
  }
  def += "VM vm 1 os mw\nVM other 0\n";
  c.config = parse_hosts_def(def);

  std::string feed;
  for (int i = 0; i < phs; ++i) {
    const auto roll = testgen::int_in(rng, 0, 9);
    if (roll == 0) {  // unreported
      c.ph_load.push_back(0);
      c.ph_alive.push_back(false);
      continue;
    }
    const bool alive = roll > 2;
    const auto load = load_text(rng);
    feed += c.ph_names[i] + ".dom;" + load + ";" + (alive ? "12" : "9999") + ";\n";
    c.ph_load.push_back(oracle_hundredths(load));
    c.ph_alive.push_back(alive);
    c.counts[c.ph_names[i]] = static_cast<int>(testgen::int_in(rng, 0, 3));
  }
  c.snapshot = parse_status_feed(feed);
  return c;
}

}  // namespace

TEST(Placement, TruncationAtTheThreshold) {
  const auto config = parse_hosts_def("PH a 10\nPH b 10\nVM v 0\n");
  auto decide = [&](const char* a_load) {
    const auto feed = std::string("a;") + a_load + ";1;\nb;1.00;1;\n";
    const StatusView view(parse_status_feed(feed), config);
    return choose_host("v", "a", view, config, {});
  };
  EXPECT_EQ(decide("10.00").outcome, Outcome::SamePH);
  EXPECT_EQ(decide("10.009").outcome, Outcome::SamePH);
  EXPECT_EQ(decide("10.01"), (PlacementDecision{Outcome::MovedPH, "b"}));
}

TEST(Placement, LastEligibleVersusMinLoad) {
  const auto config = parse_hosts_def("PH alfa01 10\nPH alfa02 10\nPH alfa03 10\nPH alfa04 10\nVM gridce 0\n");
  const StatusView view(parse_status_feed("alfa01;12.00;1;\nalfa02;1.00;1;\nalfa03;5.00;1;\nalfa04;1.00;1;\n"),
                        config);
  EXPECT_EQ(choose_host("gridce", "alfa01", view, config, {}, PlacementMode::LastEligible).host, "alfa04");
  EXPECT_EQ(choose_host("gridce", "alfa01", view, config, {}, PlacementMode::MinLoad).host, "alfa02");
  EXPECT_EQ(choose_host("gridce", "alfa01", view, config, {{"alfa02", 2}}, PlacementMode::MinLoad).host,
            "alfa04");
}

TEST(Placement, DeadOrMissingPhsAreNeverChosen) {
  const auto config = parse_hosts_def("PH a 10\nPH b 10\nPH c 10\nVM v 0\n");
  const StatusView view(parse_status_feed("a;0.00;9999;\nb;0.00;9999;\n"), config);
  EXPECT_EQ(choose_host("v", "a", view, config, {}).outcome, Outcome::WaitNoCapacity);
}

TEST(Placement, UnknownHostsThrow) {
  const auto config = parse_hosts_def("PH a 10\nVM v 0\n");
  const StatusView view(MonitorSnapshot{}, config);
  EXPECT_THROW(choose_host("nope", "a", view, config, {}), Error);
  EXPECT_THROW(choose_host("v", "nope", view, config, {}), Error);
  EXPECT_THROW(choose_host("v", "v", view, config, {}), Error);
}

TEST(Placement, RandomSnapshotsAgainstBruteForce) {
  Rng rng(2024);
  for (int iter = 0; iter < 1000; ++iter) {
    const auto c = random_case(rng);
    const StatusView view(c.snapshot, c.config);
    const auto n = c.ph_names.size();
    const auto current = static_cast<std::size_t>(testgen::int_in(rng, 0, static_cast<std::int64_t>(n) - 1));

    std::vector<bool> eligible(n);
    for (std::size_t i = 0; i < n; ++i) eligible[i] = c.ph_alive[i] && c.ph_load[i] <= c.ph_max[i];
    const bool any = std::find(eligible.begin(), eligible.end(), true) != eligible.end();

    for (const auto mode : {PlacementMode::MinLoad, PlacementMode::LastEligible}) {
      const auto d = choose_host("vm", c.ph_names[current], view, c.config, c.counts, mode);
      if (eligible[current]) {
        EXPECT_EQ(d, (PlacementDecision{Outcome::SamePH, c.ph_names[current]}));
        continue;
      }
      EXPECT_EQ(d.outcome == Outcome::WaitNoCapacity, !any);
      if (!any) continue;
      ASSERT_EQ(d.outcome, Outcome::MovedPH);
      std::size_t want = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (!eligible[i]) continue;
        if (mode == PlacementMode::LastEligible) {
          want = i;
        } else {
          auto count = [&](std::size_t k) {
            auto it = c.counts.find(c.ph_names[k]);
            return it == c.counts.end() ? 0 : it->second;
          };
          if (want == n || std::make_tuple(c.ph_load[i], count(i)) < std::make_tuple(c.ph_load[want], count(want))) {
            want = i;
          }
        }
      }
      EXPECT_EQ(d.host, c.ph_names[want]);
      const auto k = c.config.index_of(d.host);
      EXPECT_TRUE(c.ph_alive[k]);
      EXPECT_LE(c.ph_load[k], c.ph_max[k]);
    }
  }
}
