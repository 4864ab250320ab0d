#pragma once

#include <string_view>

#include "gcx/scalar/ratfunc.hpp"

namespace gcx {

/// Parses integers, a/b, i, chart variables, + - * / ^ (integer exponents)
/// and parentheses. Throws Error(ParseError) with the failing offset.
RatFunc parse_ratfunc(std::string_view text);

/// Same, then rejects variables that are not in the chart.
RatFunc parse_ratfunc(std::string_view text, const ChartVars& chart);

}  // namespace gcx
