#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace conicflow {

/// One `key = value` line. `line` is 1-based.
struct KeyValueEntry {
    std::string key;
    std::string value;
    int line = 0;
};

/// Parses `key = value` lines. Blank lines and lines starting with '#' are
/// skipped; surrounding whitespace is trimmed. Duplicate keys and lines without
/// '=' raise ConfigError naming the line.
std::vector<KeyValueEntry> parse_key_values(std::string_view text, std::string_view source_name);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace conicflow
