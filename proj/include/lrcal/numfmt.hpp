// Copyright 2026  lrcal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lrcal {

// Shortest-safe text for a double: %.<digits>g semantics via to_chars.
// With digits = 17 every finite double round-trips bit-exactly.
std::string format_double(double value, int digits = 17);

// Accepts the whole token or nothing; inf/nan are rejected.
std::optional<double> parse_finite_double(std::string_view token);
std::optional<long long> parse_integer(std::string_view token);

// Splits on ASCII whitespace, dropping empty fields.
std::vector<std::string_view> split_ws(std::string_view line);

std::string_view trim(std::string_view s);

}  // namespace lrcal
