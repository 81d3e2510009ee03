#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace gramnet {

// Shortest round-trip decimal representation; integral values print without
// a fractional part.
std::string format_number(double value);

// RFC 4180 quoting: fields holding commas, quotes or newlines get quoted.
std::string csv_field(const std::string& value);

std::string csv_line(const std::vector<std::string>& fields);

// Writes UTF-8 text to path atomically enough for our purposes (parent
// directories created as needed).
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace gramnet
