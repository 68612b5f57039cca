// Copyright 2026 The adrpipe Authors.
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

#ifndef ADRPIPE_IO_H_
#define ADRPIPE_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adrpipe::io {

// Reads a whole file. Throws IoError when it cannot be opened or read.
std::string read_file(const std::filesystem::path& path);

// Splits file content into lines on LF. A trailing LF does not produce an
// extra empty line.
std::vector<std::string_view> split_lines(std::string_view content);

std::vector<std::string_view> split(std::string_view s, char sep);

// Writes content to a sibling temporary file and renames it over `path`, so
// readers never observe a partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

// Fixed-point text with `digits` decimals ("%.4f" style).
std::string format_fixed(double value, int digits = 4);

// Parses a complete decimal number. Returns nullopt on trailing garbage,
// empty input, NaN or infinity.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

}  // namespace adrpipe::io

#endif  // ADRPIPE_IO_H_
