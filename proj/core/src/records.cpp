#include "kstar/records.hpp"

#include <sstream>

#include "kstar/errors.hpp"

namespace kstar {

namespace {

bool needs_quoting(const std::string& value) {
  if (value.empty()) return true;
  for (char ch : value)
    if (ch == ' ' || ch == '"' || ch == '=' || ch == '\\' || ch == '\t') return true;
  return false;
}

}  // namespace

std::string record_to_line(const Record& record) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [key, value] : record) {
    if (!first) os << ' ';
    first = false;
    os << key << '=';
    if (!needs_quoting(value)) {
      os << value;
      continue;
    }
    os << '"';
    for (char ch : value) {
      if (ch == '"' || ch == '\\') os << '\\';
      os << ch;
    }
    os << '"';
  }
  return os.str();
}

Record record_from_line(const std::string& line) {
  Record out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
  };
  while (true) {
    skip_ws();
    if (pos >= line.size()) break;
    std::size_t eq = line.find('=', pos);
    if (eq == std::string::npos) throw ParseError("record: missing '=' in: " + line);
    std::string key = line.substr(pos, eq - pos);
    if (key.empty() || key.find(' ') != std::string::npos)
      throw ParseError("record: bad key in: " + line);
    pos = eq + 1;
    std::string value;
    if (pos < line.size() && line[pos] == '"') {
      ++pos;
      bool closed = false;
      while (pos < line.size()) {
        char ch = line[pos++];
        if (ch == '\\' && pos < line.size()) {
          value.push_back(line[pos++]);
        } else if (ch == '"') {
          closed = true;
          break;
        } else {
          value.push_back(ch);
        }
      }
      if (!closed) throw ParseError("record: unterminated quote in: " + line);
    } else {
      while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t')
        value.push_back(line[pos++]);
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

std::string record_get(const Record& record, const std::string& key) {
  for (const auto& [k, v] : record)
    if (k == key) return v;
  return {};
}

}  // namespace kstar
