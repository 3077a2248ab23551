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

#include <cmath>
#include <set>

#include "rha/error.hpp"
#include "rha/rng.hpp"
#include "rha/text.hpp"
#include "rha/time.hpp"
#include "rha/timing.hpp"

using namespace rha;

TEST(Rng, ChildSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 100000; ++t) seen.insert(child_seed(42, t));
  EXPECT_EQ(seen.size(), 100000u);
  EXPECT_NE(child_seed(1, 0), child_seed(2, 0));
}

TEST(Rng, SameSeedSameStream) {
  Rng a(5), b(5), c(6);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    (void)c;
  }
  EXPECT_NE(Rng(5).next(), Rng(6).next());
}

TEST(Rng, Uniform01Range) {
  Rng r(1);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
}

TEST(Distribution, Moments) {
  Rng r(2);
  const auto tn = Distribution::truncated_normal(70, 10, 40, 100);
  double s = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = tn.sample(r);
    ASSERT_GE(x, 40);
    ASSERT_LE(x, 100);
    s += x;
    s2 += x * x;
  }
  const double mean = s / n;
  EXPECT_NEAR(mean, 70, 0.2);
  // Symmetric cut at +-3 sigma: var = sigma^2 (1 - 2*3*phi(3) / (2*Phi(3) - 1)).
  const double phi3 = std::exp(-4.5) / std::sqrt(2 * M_PI);
  const double mass = std::erf(3 / std::sqrt(2.0));
  EXPECT_NEAR(std::sqrt(s2 / n - mean * mean), 10 * std::sqrt(1 - 6 * phi3 / mass), 0.05);

  const auto u = Distribution::uniform(0, 60);
  EXPECT_DOUBLE_EQ(u.mean(), 30);
  EXPECT_EQ(Distribution::constant(70).sample_seconds(r), 70);
}

TEST(Distribution, RejectsBadParameters) {
  EXPECT_THROW(Distribution::constant(-1), Error);
  EXPECT_THROW(Distribution::uniform(5, 5), Error);
  EXPECT_THROW(Distribution::truncated_normal(10, 0, 0, 20), Error);
  EXPECT_THROW(Distribution::truncated_normal(10, 1, 11, 20), Error);
}

TEST(Timing, Defaults) {
  TimingModel t;
  Rng r(3);
  EXPECT_EQ(t.detection_latency.sample_seconds(r), 70);
  EXPECT_EQ(t.pxe_setup.sample_seconds(r), 10);
  EXPECT_DOUBLE_EQ(t.install_time.mean(), 352);
  t.with_detection_jitter();
  for (int i = 0; i < 1000; ++i) {
    const double d = t.detection_latency.sample(r);
    ASSERT_GE(d, 62.5);
    ASSERT_LT(d, 77.5);
  }
}

TEST(Time, FormatAndParse) {
  const auto t = parse_timestamp("2008-12-14/04:31:01");
  EXPECT_EQ(t.seconds(), 1229229061);
  EXPECT_EQ(format_timestamp(t), "2008-12-14/04:31:01");
  EXPECT_EQ(format_timestamp(t, 3600), "2008-12-14/05:31:01");
  EXPECT_EQ(parse_timestamp("2008-12-14/05:31:01", 3600), t);
  EXPECT_EQ(t.minute(), 1229229060 / 60);
  for (const char* bad : {"", "2008-12-14 04:31:01", "2008-02-30/00:00:00", "2008-12-14/24:00:00",
                          "2008-12-14/04:31:1", "2008-12-14/04:31:01x"}) {
    EXPECT_FALSE(try_parse_timestamp(bad)) << bad;
  }
  EXPECT_EQ(format_timestamp(Timestamp{-1}), "1969-12-31/23:59:59");
}

TEST(Text, Helpers) {
  EXPECT_EQ(text::trim("  a b \r\n"), "a b");
  EXPECT_EQ(text::split("a;;b;", ';').size(), 4u);
  EXPECT_EQ(text::split_ws(" a\t b  ").size(), 2u);
  EXPECT_EQ(text::lines("a\r\nb\n").size(), 2u);
  long long v = 0;
  EXPECT_TRUE(text::parse_int("-12", v));
  EXPECT_EQ(v, -12);
  EXPECT_FALSE(text::parse_int("12a", v));
  EXPECT_FALSE(text::parse_int("", v));
}
