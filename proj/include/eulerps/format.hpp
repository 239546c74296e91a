#pragma once

#include <string>

#include "eulerps/state.hpp"

namespace eulerps {

/// Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

/// Header line for diagnostics CSV files.
inline constexpr const char* kDiagnosticsHeader = "t,E,h,div_max,amp_max";

/// One CSV row (no trailing newline) in kDiagnosticsHeader column order.
std::string diagnostics_row(const DiagnosticsRecord& r);

}  // namespace eulerps
