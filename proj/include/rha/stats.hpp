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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rha/sim.hpp"

namespace rha {

struct GaussianFit {
  std::size_t n = 0;
  double mean = 0;
  double sd = 0;  // n - 1 denominator
  double min = 0;
  double max = 0;
};

/// Single pass (Welford). Needs at least two samples.
GaussianFit fit_gaussian(std::span<const double> samples);

struct HistogramBin {
  double lower = 0;
  std::size_t count = 0;

  friend bool operator==(const HistogramBin&, const HistogramBin&) = default;
};

struct Histogram {
  double bin_width = 0;
  double origin = 0;
  std::vector<HistogramBin> bins;  // contiguous from origin, empty ones kept
};

/// Half-open bins [origin + k*w, origin + (k+1)*w). Samples below origin
/// are an error.
Histogram histogram(std::span<const double> samples, double bin_width,
                    double origin);

/// floor(min / w) * w, or 0 for no samples.
double histogram_origin(std::span<const double> samples, double bin_width);

/// Linear interpolation between closest ranks on sorted data; p in [0, 1].
double quantile(std::span<const double> sorted, double p);

/// Rows of a campaign CSV. Errors carry the 1-based line number.
std::vector<sim::RecoverySample> parse_campaign_csv(std::string_view text);

struct ReportOptions {
  std::string scenario;
  double bin_width = 5;
};

/// JSON summary of a campaign CSV. Keys in this order: scenario, n, mean, sd,
/// min, max, p50, p95, histogram, awareness; numbers that are not counts
/// printed with three decimals. n counts recovered trials only; with n = 1
/// only scenario, n and mean are given.
std::string report_json(std::string_view csv, const ReportOptions& options);

}  // namespace rha
