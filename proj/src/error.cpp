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

#include "rha/error.hpp"

#include <fmt/format.h>

namespace rha {

namespace {

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) return "parse error";
  const auto& first = diagnostics.front();
  std::string text = first.line == 0
                         ? first.message
                         : fmt::format("line {}: {}", first.line, first.message);
  if (diagnostics.size() > 1) {
    text += fmt::format(" (and {} more)", diagnostics.size() - 1);
  }
  return text;
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : Error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : ParseError(std::vector<Diagnostic>{{line, message}}) {}

}  // namespace rha
