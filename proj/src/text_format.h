// Copyright 2026 The scalecheck Authors.
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

// Helpers shared by the plain-text model and grammar formats.

#ifndef SCALECHECK_SRC_TEXT_FORMAT_H_
#define SCALECHECK_SRC_TEXT_FORMAT_H_

#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace scalecheck::text_format {

// Escapes backslash, tab, newline, carriage return and space so a symbol
// survives tab- and space-separated fields.
std::string escape(std::string_view s);
std::string unescape(std::string_view s);

std::vector<std::string> split(std::string_view line, char sep);

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view s);
std::uint64_t parse_uint(std::string_view s);

// Next line without the trailing newline; throws FormatError at EOF.
std::string next_line(std::istream& in, std::string_view what);

}  // namespace scalecheck::text_format

#endif  // SCALECHECK_SRC_TEXT_FORMAT_H_
