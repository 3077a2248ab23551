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

#include "rha/timing.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "rha/error.hpp"

namespace rha {

double Rng::normal() {
  // 1 - u keeps the log argument in (0, 1].
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Distribution Distribution::constant(double value) {
  if (!(value >= 0)) throw Error("durations must be non-negative");
  Distribution d;
  d.kind_ = Kind::Constant;
  d.mean_ = d.lo_ = d.hi_ = value;
  return d;
}

Distribution Distribution::uniform(double lo, double hi) {
  if (!(lo >= 0 && hi > lo)) throw Error("uniform wants 0 <= lo < hi");
  Distribution d;
  d.kind_ = Kind::Uniform;
  d.lo_ = lo;
  d.hi_ = hi;
  d.mean_ = (lo + hi) / 2;
  d.sd_ = (hi - lo) / std::sqrt(12.0);
  return d;
}

Distribution Distribution::truncated_normal(double mean, double sd, double lo,
                                            double hi) {
  if (!(sd > 0 && lo >= 0 && lo <= mean && mean <= hi)) {
    throw Error("truncated normal wants sd > 0 and 0 <= lo <= mean <= hi");
  }
  Distribution d;
  d.kind_ = Kind::TruncatedNormal;
  d.mean_ = mean;
  d.sd_ = sd;
  d.lo_ = lo;
  d.hi_ = hi;
  return d;
}

double Distribution::sample(Rng& rng) const {
  switch (kind_) {
    case Kind::Constant:
      return mean_;
    case Kind::Uniform:
      return rng.uniform(lo_, hi_);
    case Kind::TruncatedNormal:
      for (;;) {
        const double x = mean_ + sd_ * rng.normal();
        if (x >= lo_ && x <= hi_) return x;
      }
  }
  return mean_;
}

Seconds Distribution::sample_seconds(Rng& rng) const {
  return static_cast<Seconds>(std::llround(sample(rng)));
}

std::string Distribution::describe() const {
  switch (kind_) {
    case Kind::Constant: return fmt::format("constant({})", mean_);
    case Kind::Uniform: return fmt::format("uniform[{}, {})", lo_, hi_);
    case Kind::TruncatedNormal:
      return fmt::format("normal({}, {}) on [{}, {}]", mean_, sd_, lo_, hi_);
  }
  return "?";
}

TimingModel& TimingModel::with_detection_jitter() {
  detection_latency = Distribution::uniform(62.5, 77.5);
  return *this;
}

}  // namespace rha
