#pragma once

#include <string>
#include <utility>
#include <vector>

namespace kstar {

/// One line-oriented key=value record. Keys are bare identifiers; values
/// are quoted and escaped when they contain spaces, quotes or '='.
/// Field order is preserved, so emitted output is byte-stable.
using Record = std::vector<std::pair<std::string, std::string>>;

std::string record_to_line(const Record& record);
Record record_from_line(const std::string& line);

/// First value for a key, or empty string.
std::string record_get(const Record& record, const std::string& key);

}  // namespace kstar
