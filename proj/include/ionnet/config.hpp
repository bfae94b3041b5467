#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

namespace ionnet {

// Flat key=value config format shared by the CLI and the preset loader.
// '#' starts a comment; blank lines are ignored; whitespace around key and
// value is trimmed.

std::string trim(const std::string& s);

// Parses one line; returns nothing for blanks/comments.
std::optional<std::pair<std::string, std::string>> parse_kv_line(const std::string& line);

std::map<std::string, std::string> parse_kv_file(const std::string& path);

}  // namespace ionnet
