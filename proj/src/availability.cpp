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

#include "rha/availability.hpp"

#include <cmath>

#include "rha/error.hpp"

namespace rha {

double availability(double mtbf_hours, double mttr_hours) {
  if (!(mtbf_hours > 0.0) || !std::isfinite(mtbf_hours)) {
    throw Error("MTBF must be positive");
  }
  if (!(mttr_hours >= 0.0) || !std::isfinite(mttr_hours)) {
    throw Error("MTTR must be non-negative");
  }
  return mtbf_hours / (mtbf_hours + mttr_hours);
}

double downtime_per_year(double ratio) {
  if (!(ratio > 0.0 && ratio <= 1.0)) {
    throw Error("availability ratio must be in (0, 1]");
  }
  return (1.0 - ratio) * kHoursPerYear;
}

}  // namespace rha
