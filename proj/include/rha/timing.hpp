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

#include <string>

#include "rha/rng.hpp"
#include "rha/time.hpp"

namespace rha {

class Distribution {
 public:
  enum class Kind { Constant, Uniform, TruncatedNormal };

  static Distribution constant(double value);
  /// Uniform on [lo, hi).
  static Distribution uniform(double lo, double hi);
  /// Normal(mean, sd) conditioned on [lo, hi], by rejection.
  static Distribution truncated_normal(double mean, double sd, double lo,
                                       double hi);

  double sample(Rng& rng) const;
  /// sample() rounded to the nearest whole second.
  Seconds sample_seconds(Rng& rng) const;

  Kind kind() const { return kind_; }
  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double mean() const { return mean_; }
  double sd() const { return sd_; }

  std::string describe() const;

 private:
  Kind kind_ = Kind::Constant;
  double mean_ = 0, sd_ = 0, lo_ = 0, hi_ = 0;
};

/// Durations driving a simulated recovery.
struct TimingModel {
  Distribution detection_latency = Distribution::constant(70);
  Distribution controller_phase = Distribution::uniform(0, 60);
  Distribution pxe_setup = Distribution::constant(10);
  Distribution boot_time = Distribution::truncated_normal(70, 10, 40, 100);
  Distribution install_time = Distribution::truncated_normal(352, 17, 300, 404);
  /// Invented: no measured value exists for bringing the hypervisor back.
  Distribution daemon_restart = Distribution::constant(20);

  /// Detection latency of 70 s +/- 7.5 s (half the 15 s poll interval).
  TimingModel& with_detection_jitter();
};

}  // namespace rha
