#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace trailnet::csv {

/// Splits one CSV record (no line terminator). Supports RFC 4180 quoting.
/// Returns false on an unterminated quote or stray characters after a
/// closing quote.
bool split_record(std::string_view line, std::vector<std::string>& fields);

/// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape_field(std::string_view field);

}  // namespace trailnet::csv
