// Copyright 2026 The fcgen Authors
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
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

// Small string and file helpers shared by the pipeline modules.
namespace fcgen::text {

std::vector<std::string> split_whitespace(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
std::string join(std::span<const std::string> tokens, std::string_view sep = " ");
std::string_view trim(std::string_view s);

// ASCII case folding, byte by byte. Non-ASCII bytes pass through unchanged.
std::string lowercase(std::string_view s);
std::vector<std::string> lowercase(std::span<const std::string> tokens);

// Collapses runs of whitespace to single spaces and trims the ends.
std::string collapse_whitespace(std::string_view s);

// Splits on '\n', stripping one trailing '\r' per line. A final newline does
// not produce an empty trailing line.
std::vector<std::string> split_lines(std::string_view content);

std::string read_file(const std::filesystem::path& path);
std::vector<std::string> read_lines(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

std::string sha256_hex(std::string_view data);
std::uint64_t fnv1a64(std::string_view data);

}  // namespace fcgen::text
