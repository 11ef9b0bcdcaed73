// Locale-independent numeric formatting and a minimal CSV reader shared by
// every file schema.
#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace dynent::csv {

/// Fixed scientific notation with 12 significant digits, e.g. 1.30000000000e+00.
std::string format(double value);

/// Shortest round-trip representation, used for config echoes and file names.
std::string format_short(double value);

double parse_double(std::string_view text);

/// Splits one CSV line on commas. No quoting: every schema here is numeric.
std::vector<std::string> split(std::string_view line);

/// Reads a header line and returns the column names; throws on a mismatch
/// with `expected` when it is non-empty.
std::vector<std::string> read_header(std::istream& is, const std::vector<std::string>& expected);

}  // namespace dynent::csv
