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

#include "rha/stats.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "rha/error.hpp"
#include "rha/text.hpp"

namespace rha {

GaussianFit fit_gaussian(std::span<const double> samples) {
  if (samples.size() < 2) {
    throw Error(fmt::format("a Gaussian fit needs at least 2 samples, got {}",
                            samples.size()));
  }
  GaussianFit fit;
  fit.min = fit.max = samples.front();
  double m2 = 0;
  for (const double x : samples) {
    ++fit.n;
    const double d = x - fit.mean;
    fit.mean += d / static_cast<double>(fit.n);
    m2 += d * (x - fit.mean);
    fit.min = std::min(fit.min, x);
    fit.max = std::max(fit.max, x);
  }
  fit.sd = std::sqrt(std::max(0.0, m2 / static_cast<double>(fit.n - 1)));
  // Rounding can push the mean a hair outside [min, max] for constant data.
  fit.mean = std::clamp(fit.mean, fit.min, fit.max);
  return fit;
}

double histogram_origin(std::span<const double> samples, double bin_width) {
  if (samples.empty()) return 0;
  return std::floor(*std::min_element(samples.begin(), samples.end()) / bin_width) *
         bin_width;
}

Histogram histogram(std::span<const double> samples, double bin_width,
                    double origin) {
  if (!(bin_width > 0)) throw Error("bin width must be positive");
  Histogram h{bin_width, origin, {}};
  for (const double x : samples) {
    if (x < origin) {
      throw Error(fmt::format("sample {} lies below the histogram origin {}", x, origin));
    }
    const auto k = static_cast<std::size_t>(std::floor((x - origin) / bin_width));
    while (h.bins.size() <= k) {
      h.bins.push_back({origin + static_cast<double>(h.bins.size()) * bin_width, 0});
    }
    ++h.bins[k].count;
  }
  return h;
}

double quantile(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw Error("quantile of no samples");
  if (!(p >= 0 && p <= 1)) throw Error("quantile wants p in [0, 1]");
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<sim::RecoverySample> parse_campaign_csv(std::string_view text) {
  const auto rows = text::lines(text);
  if (rows.empty()) throw ParseError(1, "empty campaign CSV");
  if (text::trim(rows.front()) != sim::kCampaignCsvHeader) {
    throw ParseError(1, fmt::format("expected header '{}'", sim::kCampaignCsvHeader));
  }
  std::vector<sim::RecoverySample> out;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const std::size_t line = i + 1;
    const auto row = text::trim(rows[i]);
    if (row.empty()) continue;
    const auto f = text::split(row, ',');
    if (f.size() != 6) {
      throw ParseError(line, fmt::format("expected 6 fields, got {}", f.size()));
    }
    auto integer = [&](std::string_view field, const char* name) {
      long long v = 0;
      if (!text::parse_int(field, v)) {
        throw ParseError(line, fmt::format("{}: not an integer: '{}'", name, field));
      }
      return v;
    };
    sim::RecoverySample s;
    const auto trial = integer(f[0], "trial");
    if (trial < 0) throw ParseError(line, "trial: negative");
    s.trial = static_cast<std::size_t>(trial);
    s.crash_at = integer(f[1], "crash_at");
    s.detected_at = integer(f[2], "detected_at");
    if (s.detected_at < s.crash_at) {
      throw ParseError(line, "detected_at precedes crash_at");
    }
    if (f[3].empty() != f[4].empty()) {
      throw ParseError(line, "recovered_at and recovery_time must both be set or both empty");
    }
    if (!f[3].empty()) {
      s.recovered_at = integer(f[3], "recovered_at");
      if (integer(f[4], "recovery_time") != *s.recovered_at - s.crash_at) {
        throw ParseError(line, "recovery_time != recovered_at - crash_at");
      }
    }
    if (!f[5].empty()) {
      for (const auto tok : text::split(f[5], '|')) s.action_path.emplace_back(tok);
    }
    out.push_back(std::move(s));
  }
  if (out.empty()) throw ParseError(1, "campaign CSV has no rows");
  return out;
}

namespace {

std::string num(double v) {
  // Avoid "-0.000".
  const std::string s = fmt::format("{:.3f}", v);
  return s == "-0.000" ? "0.000" : s;
}

std::string json_string(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          out += fmt::format("\\u{:04x}", static_cast<unsigned>(c));
        } else {
          out += c;
        }
    }
  }
  return out + "\"";
}

}  // namespace

std::string report_json(std::string_view csv, const ReportOptions& options) {
  if (!(options.bin_width > 0)) throw Error("bin width must be positive");
  const auto rows = parse_campaign_csv(csv);
  std::vector<double> times;
  std::vector<double> awareness;
  for (const auto& r : rows) {
    awareness.push_back(static_cast<double>(r.awareness_time()));
    if (auto t = r.recovery_time()) times.push_back(static_cast<double>(*t));
  }
  if (times.empty()) throw Error("no recovered trials in the campaign");

  std::string out = "{\n";
  out += fmt::format("  \"scenario\": {},\n", json_string(options.scenario));
  out += fmt::format("  \"n\": {},\n", times.size());
  if (times.size() == 1) {
    out += fmt::format("  \"mean\": {}\n}}\n", num(times.front()));
    return out;
  }
  const auto fit = fit_gaussian(times);
  std::vector<double> sorted = times;
  std::sort(sorted.begin(), sorted.end());
  out += fmt::format("  \"mean\": {},\n", num(fit.mean));
  out += fmt::format("  \"sd\": {},\n", num(fit.sd));
  out += fmt::format("  \"min\": {},\n", num(fit.min));
  out += fmt::format("  \"max\": {},\n", num(fit.max));
  out += fmt::format("  \"p50\": {},\n", num(quantile(sorted, 0.5)));
  out += fmt::format("  \"p95\": {},\n", num(quantile(sorted, 0.95)));

  const auto h = histogram(times, options.bin_width,
                           histogram_origin(times, options.bin_width));
  out += "  \"histogram\": {\n";
  out += fmt::format("    \"bin_width\": {},\n", num(h.bin_width));
  out += fmt::format("    \"origin\": {},\n", num(h.origin));
  out += "    \"bins\": [";
  for (std::size_t i = 0; i < h.bins.size(); ++i) {
    out += fmt::format("{}[{}, {}]", i == 0 ? "" : ", ", num(h.bins[i].lower),
                       h.bins[i].count);
  }
  out += "]\n  },\n";

  const auto aw = std::minmax_element(awareness.begin(), awareness.end());
  double aw_mean = 0;
  for (const double a : awareness) aw_mean += a;
  aw_mean /= static_cast<double>(awareness.size());
  out += "  \"awareness\": {\n";
  out += fmt::format("    \"mean\": {},\n", num(aw_mean));
  out += fmt::format("    \"min\": {},\n", num(*aw.first));
  out += fmt::format("    \"max\": {}\n", num(*aw.second));
  out += "  }\n}\n";
  return out;
}

}  // namespace rha
