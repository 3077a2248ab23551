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
#include <string_view>
#include <vector>

namespace rha::text {

std::string_view trim(std::string_view s);

/// Splits on runs of spaces, tabs, CR and LF; no empty fields.
std::vector<std::string_view> split_ws(std::string_view s);

/// Splits on every occurrence of `sep`; keeps empty fields.
std::vector<std::string_view> split(std::string_view s, char sep);

/// Splits into lines, dropping a trailing CR from each.
std::vector<std::string_view> lines(std::string_view s);

bool parse_int(std::string_view s, long long& out);

}  // namespace rha::text
