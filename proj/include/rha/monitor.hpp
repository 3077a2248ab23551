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

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rha/cluster_model.hpp"
#include "rha/time.hpp"

namespace rha {

/// last_ping value the monitor plugin writes for a host it considers dead.
inline constexpr std::int64_t kDeadPing = 9999;

/// One `hostname;load;last_ping;` row of the status feed.
struct MonitorSample {
  std::string host;
  Load load;
  std::int64_t last_ping = 0;

  friend bool operator==(const MonitorSample&, const MonitorSample&) = default;
};

struct MonitorSnapshot {
  Timestamp taken_at;
  std::vector<MonitorSample> samples;

  friend bool operator==(const MonitorSnapshot&,
                         const MonitorSnapshot&) = default;
};

inline bool is_dead(const MonitorSample& sample) {
  return sample.last_ping == kDeadPing;
}

/// Sample for a host that is absent from the feed.
MonitorSample dead_sample(std::string host);

/// Parses the feed. Blank lines and a leading `hostname;load;last_ping;`
/// header are skipped; anything else malformed throws ParseError with the
/// offending line number.
MonitorSnapshot parse_status_feed(std::string_view text,
                                  Timestamp taken_at = Timestamp{});

std::string render_status_feed(const MonitorSnapshot& snapshot);

/// First DNS label: "gridce.sns.it" -> "gridce".
std::string_view short_name(std::string_view host);

/// A snapshot matched against the declared cluster by short name. Feed rows
/// for undeclared hosts are dropped; declared hosts the feed does not
/// mention get a synthesized dead sample. When two feed rows share a short
/// name, the first one wins.
class StatusView {
 public:
  StatusView(const MonitorSnapshot& snapshot, const ClusterConfig& config);

  /// Declared host names in feed order, followed by unreported hosts in
  /// declaration order.
  const std::vector<std::string>& order() const { return order_; }

  const MonitorSample& sample(std::string_view host) const;
  bool reported(std::string_view host) const;
  Timestamp taken_at() const { return taken_at_; }

 private:
  Timestamp taken_at_;
  std::vector<std::string> order_;
  std::unordered_map<std::string, MonitorSample> samples_;
  std::unordered_map<std::string, bool> reported_;
};

}  // namespace rha
