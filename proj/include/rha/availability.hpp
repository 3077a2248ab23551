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

namespace rha {

inline constexpr double kHoursPerYear = 8760.0;

/// MTBF / (MTBF + MTTR). Throws rha::Error unless mtbf > 0 and mttr >= 0.
double availability(double mtbf_hours, double mttr_hours);

/// (1 - ratio) * 8760. Throws unless 0 < ratio <= 1.
double downtime_per_year(double ratio);

}  // namespace rha
