#include "eulerps/format.hpp"

#include <array>
#include <charconv>

namespace eulerps {

std::string format_double(double x) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string diagnostics_row(const DiagnosticsRecord& r) {
  std::string row = format_double(r.t);
  for (double v : {r.E, r.h, r.div_max, r.amp_max}) {
    row += ',';
    row += format_double(v);
  }
  return row;
}

}  // namespace eulerps
