#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace cooc {

/// Split on a single delimiter; keeps empty fields.
std::vector<std::string_view> split(std::string_view text, char delim);

/// Split on runs of ASCII whitespace; drops empty tokens.
std::vector<std::string_view> tokenize(std::string_view text);

std::string to_lower(std::string_view text);
std::string_view trim(std::string_view text);

/// First whitespace-delimited token, or empty view.
std::string_view first_token(std::string_view text);

/// Shortest round-trip decimal form of a double (deterministic across runs).
std::string format_double(double value);

/// Parses a double, rejecting trailing garbage, NaN and infinities.
/// Returns false on failure.
bool parse_double(std::string_view text, double& out);

/// FNV-1a 64-bit, hex-encoded. Used for config fingerprints in artifacts.
std::string fnv1a_hex(std::string_view bytes);

/// Whole file as a string. Throws Error{Io} if unreadable.
std::string read_file(const std::filesystem::path& path);

/// Splits file content into lines (handles trailing newline, CRLF).
std::vector<std::string> read_lines(const std::filesystem::path& path);

/// Writes content to path, creating parent directories.
void write_file(const std::filesystem::path& path, std::string_view content);

/// True for comment/blank lines that data loaders skip.
inline bool is_skippable_line(std::string_view line) {
    auto t = trim(line);
    return t.empty() || t.front() == '#';
}

} // namespace cooc
