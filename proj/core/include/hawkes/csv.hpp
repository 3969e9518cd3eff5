#pragma once

#include <string>
#include <vector>

namespace hawkes::csv {

/// Minimal RFC-4180-ish reader: comma separated, double quotes with ""
/// escaping, \r\n or \n line ends. Lines starting with '#' are skipped.
std::vector<std::vector<std::string>> read_file(const std::string& path);
std::vector<std::string> split_line(const std::string& line);
std::string escape(const std::string& field);

}  // namespace hawkes::csv
