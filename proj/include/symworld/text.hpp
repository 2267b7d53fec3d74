#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symworld {

/// Lowercases, trims, collapses internal whitespace to single spaces, and
/// strips quote characters, backticks and punctuation from both ends.
/// Idempotent: canonicalize(canonicalize(s)) == canonicalize(s).
std::string canonicalize(std::string_view text);

bool is_canonical(std::string_view text);

std::string join(std::span<const std::string> parts, std::string_view separator);

/// Uppercases the first ASCII letter.
std::string capitalize_first(std::string_view text);

/// True when `needle` occurs in `haystack` with no letter or digit
/// immediately before or after it.
bool contains_bounded(std::string_view haystack, std::string_view needle);

std::vector<std::string> split_lines(std::string_view text);

}  // namespace symworld
