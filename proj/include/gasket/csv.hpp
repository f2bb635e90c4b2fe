#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace gasket {

/// Shortest round-trippable form is not required; 17 significant digits, '.' separator.
std::string format_real(double v);

/// Parse "a,b,c" into reals. Throws InvalidArgument on malformed input.
std::vector<double> parse_real_list(std::string_view text);

double parse_real(std::string_view text);

} // namespace gasket
