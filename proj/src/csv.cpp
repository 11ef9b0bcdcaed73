#include "dynent/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <system_error>

#include "dynent/errors.hpp"

namespace dynent::csv {

std::string format(double value) {
  if (value == 0.0) value = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, 11);
  return std::string(buf, res.ptr);
}

std::string format_short(double value) {
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw InputError("not a number: '" + std::string(text) + "'");
  return value;
}

std::vector<std::string> split(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.emplace_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string> read_header(std::istream& is, const std::vector<std::string>& expected) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("missing CSV header");
  auto names = split(line);
  if (!expected.empty() && names != expected) {
    std::string want;
    for (const auto& n : expected) want += (want.empty() ? "" : ",") + n;
    throw IoError("unexpected CSV header '" + line + "', expected '" + want + "'");
  }
  return names;
}

}  // namespace dynent::csv
