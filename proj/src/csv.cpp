#include "trailnet/csv.hpp"

namespace trailnet::csv {

bool split_record(std::string_view line, std::vector<std::string>& fields) {
  fields.clear();
  std::string current;
  std::size_t i = 0;
  while (true) {
    current.clear();
    if (i < line.size() && line[i] == '"') {
      ++i;
      bool closed = false;
      while (i < line.size()) {
        char c = line[i++];
        if (c == '"') {
          if (i < line.size() && line[i] == '"') {
            current.push_back('"');
            ++i;
          } else {
            closed = true;
            break;
          }
        } else {
          current.push_back(c);
        }
      }
      if (!closed) return false;
      if (i < line.size() && line[i] != ',') return false;
    } else {
      while (i < line.size() && line[i] != ',') {
        if (line[i] == '"') return false;
        current.push_back(line[i++]);
      }
    }
    fields.push_back(current);
    if (i >= line.size()) break;
    ++i;  // comma
  }
  return true;
}

std::string escape_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace trailnet::csv
