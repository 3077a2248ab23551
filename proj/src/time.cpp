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

#include "rha/time.hpp"

#include <chrono>

#include <fmt/format.h>

#include "rha/error.hpp"

namespace rha {

namespace chr = std::chrono;

namespace {

constexpr Seconds kSecondsPerDay = 86400;

Seconds floor_div(Seconds a, Seconds b) {
  Seconds q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::optional<int> digits(std::string_view text, std::size_t pos,
                          std::size_t count) {
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

std::string format_timestamp(Timestamp t, Seconds utc_offset) {
  const Seconds local = t.seconds() + utc_offset;
  const Seconds days = floor_div(local, kSecondsPerDay);
  const Seconds secs = local - days * kSecondsPerDay;
  const chr::year_month_day ymd{chr::sys_days{chr::days{days}}};
  return fmt::format("{:04d}-{:02d}-{:02d}/{:02d}:{:02d}:{:02d}",
                     static_cast<int>(ymd.year()),
                     static_cast<unsigned>(ymd.month()),
                     static_cast<unsigned>(ymd.day()), secs / 3600,
                     (secs / 60) % 60, secs % 60);
}

std::optional<Timestamp> try_parse_timestamp(std::string_view text,
                                             Seconds utc_offset) {
  // 0123456789012345678
  // YYYY-MM-DD/HH:MM:SS
  if (text.size() != 19 || text[4] != '-' || text[7] != '-' ||
      text[10] != '/' || text[13] != ':' || text[16] != ':') {
    return std::nullopt;
  }
  const auto year = digits(text, 0, 4);
  const auto month = digits(text, 5, 2);
  const auto day = digits(text, 8, 2);
  const auto hour = digits(text, 11, 2);
  const auto minute = digits(text, 14, 2);
  const auto second = digits(text, 17, 2);
  if (!year || !month || !day || !hour || !minute || !second) {
    return std::nullopt;
  }
  if (*hour > 23 || *minute > 59 || *second > 59) return std::nullopt;
  const chr::year_month_day ymd{chr::year{*year},
                                chr::month{static_cast<unsigned>(*month)},
                                chr::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok()) return std::nullopt;
  const Seconds days = chr::sys_days{ymd}.time_since_epoch().count();
  const Seconds local =
      days * kSecondsPerDay + *hour * 3600 + *minute * 60 + *second;
  return Timestamp{local - utc_offset};
}

Timestamp parse_timestamp(std::string_view text, Seconds utc_offset) {
  if (auto t = try_parse_timestamp(text, utc_offset)) return *t;
  throw ParseError(0, fmt::format("bad timestamp '{}' (want YYYY-MM-DD/HH:MM:SS)",
                                  text));
}

}  // namespace rha
