/* Copyright 2026 The aggrid Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef AGGRID_TEXT_UTIL_H_
#define AGGRID_TEXT_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace aggrid {

// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte at a
// time, so decoding never fails.
std::u32string utf8_decode(std::string_view text);
void utf8_append(std::string& out, char32_t cp);
std::string utf8_encode(std::u32string_view cps);

bool is_unicode_space(char32_t cp);
bool is_ascii_letter(char32_t cp);
bool is_ascii_digit(char32_t cp);
// ASCII punctuation plus the Devanagari dandas and common Unicode quotes.
bool is_punct(char32_t cp);
// Letters in the broad sense: ASCII letters and every non-ASCII code point
// that is neither space nor punctuation.
bool is_letter(char32_t cp);

std::string ascii_lower(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string trim(std::string_view s);

// Backslash escaping used by every tab-separated file: \t \n \r and \\.
std::string escape_field(std::string_view s);
std::string unescape_field(std::string_view s);

// Shortest round-trip decimal form.
std::string format_double(double v);
double parse_double(std::string_view s);
// Fixed four-decimal form used by reports.
std::string format4(double v);

// 64-bit FNV-1a over a file's bytes, as 16 lowercase hex digits.
std::string file_checksum(const std::filesystem::path& path);
std::string fnv1a_hex(std::string_view bytes);

}  // namespace aggrid

#endif  // AGGRID_TEXT_UTIL_H_
