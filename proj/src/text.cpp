// SPDX-License-Identifier: Apache-2.0

#include "spiralnls/text.hpp"

#include <charconv>
#include <cmath>

#include "spiralnls/errors.hpp"

namespace spiralnls
{

std::string format_real(double x)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string format_real(double x, int digits)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, digits);
  return std::string(buf, res.ptr);
}

double parse_real(std::string_view text, std::string_view what)
{
  text = trim(text);
  double x = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
  {
    fail(ErrorCode::kInvalidArgument,
         "cannot parse '" + std::string(text) + "' as a real for " + std::string(what));
  }
  return x;
}

long long parse_int(std::string_view text, std::string_view what)
{
  text = trim(text);
  long long x = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
  {
    fail(ErrorCode::kInvalidArgument,
         "cannot parse '" + std::string(text) + "' as an integer for " + std::string(what));
  }
  return x;
}

std::string_view trim(std::string_view text)
{
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos)
  {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

}  // namespace spiralnls
