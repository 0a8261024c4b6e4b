#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pasel {

// Small helpers shared by every file format the toolkit reads or writes.
// All numeric output uses 17 significant digits so doubles round-trip
// bit-exactly through text files.

std::string fmt17(double v);

// strict double parse: whole field must be consumed, else throws with `what`
double parse_double(std::string_view field, const std::string& what);

// like parse_double but additionally rejects NaN/inf
double parse_finite(std::string_view field, const std::string& what);

long long parse_int(std::string_view field, const std::string& what);

std::string_view trim(std::string_view s);

std::vector<std::string> split(std::string_view line, char sep);

// reads all lines, tolerating CRLF endings; throws if the file cannot be read
std::vector<std::string> read_lines(const std::string& path);

void write_file(const std::string& path, const std::string& content);

}  // namespace pasel
