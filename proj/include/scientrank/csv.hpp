#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace scientrank::csv {

/// Splits one CSV line (RFC 4180 quoting, no embedded newlines).
/// Throws DataError on an unterminated quote.
std::vector<std::string> split_line(std::string_view line);

/// Quotes a cell only when it contains a comma, quote or newline.
std::string quote(std::string_view cell);

std::string join(const std::vector<std::string>& cells);

}  // namespace scientrank::csv
