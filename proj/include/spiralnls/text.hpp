// SPDX-License-Identifier: Apache-2.0
//
// Locale-independent number formatting. Reals use the shortest representation
// that round-trips exactly.

#pragma once

#include <string>
#include <string_view>

namespace spiralnls
{

std::string format_real(double x);
// Fixed number of significant digits, %g style.
std::string format_real(double x, int digits);
// Whole-string parse; throws InvalidArgument naming `what` on failure.
double parse_real(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);
std::string_view trim(std::string_view text);

}  // namespace spiralnls
