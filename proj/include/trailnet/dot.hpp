#pragma once

#include <string>
#include <string_view>

namespace trailnet::dot {

/// Double-quoted Graphviz ID with `"` and `\` escaped.
inline std::string quote(std::string_view id) {
  std::string out = "\"";
  for (char c : id) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace trailnet::dot
