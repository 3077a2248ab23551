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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rha {

using Seconds = std::int64_t;

/// Whole seconds since 1970-01-01T00:00:00Z. Both wall-clock log stamps and
/// the simulator's virtual clock use this type.
class Timestamp {
 public:
  constexpr Timestamp() = default;
  constexpr explicit Timestamp(Seconds since_epoch) : value_(since_epoch) {}

  constexpr Seconds seconds() const { return value_; }

  /// Minutes since the epoch, floored.
  constexpr std::int64_t minute() const {
    return value_ >= 0 ? value_ / 60 : -((-value_ + 59) / 60);
  }

  constexpr Timestamp& operator+=(Seconds s) {
    value_ += s;
    return *this;
  }
  friend constexpr Timestamp operator+(Timestamp t, Seconds s) {
    return Timestamp{t.value_ + s};
  }
  friend constexpr Timestamp operator-(Timestamp t, Seconds s) {
    return Timestamp{t.value_ - s};
  }
  friend constexpr Seconds operator-(Timestamp a, Timestamp b) {
    return a.value_ - b.value_;
  }
  friend constexpr auto operator<=>(Timestamp, Timestamp) = default;

 private:
  Seconds value_ = 0;
};

/// Renders `YYYY-MM-DD/HH:MM:SS` (the `date +%F/%T` layout) in the given
/// fixed UTC offset. Proleptic Gregorian, independent of the host TZ.
std::string format_timestamp(Timestamp t, Seconds utc_offset = 0);

/// Inverse of format_timestamp. Requires the exact 19-character layout.
std::optional<Timestamp> try_parse_timestamp(std::string_view text,
                                             Seconds utc_offset = 0);

/// Throwing variant of try_parse_timestamp.
Timestamp parse_timestamp(std::string_view text, Seconds utc_offset = 0);

}  // namespace rha
