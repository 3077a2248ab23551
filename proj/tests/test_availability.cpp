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

#include "rha/availability.hpp"
#include "rha/error.hpp"

using namespace rha;

TEST(Availability, Ratio) {
  EXPECT_DOUBLE_EQ(availability(999, 1), 0.999);
  EXPECT_DOUBLE_EQ(availability(1, 0), 1.0);
  EXPECT_THROW(availability(0, 1), Error);
  EXPECT_THROW(availability(1, -1), Error);
}

TEST(Availability, DowntimePerYear) {
  EXPECT_NEAR(downtime_per_year(0.999), 8.76, 1e-9);
  EXPECT_NEAR(downtime_per_year(0.99999), 0.0876, 1e-9);
  EXPECT_DOUBLE_EQ(downtime_per_year(1.0), 0.0);
  EXPECT_THROW(downtime_per_year(0.0), Error);
  EXPECT_THROW(downtime_per_year(1.5), Error);
}
