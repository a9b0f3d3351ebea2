#pragma once

#include <sstream>
#include <string>

// Internal diagnostic formatting. std::to_string renders small doubles as
// "0.000000", which turns tolerance diagnostics into noise; default ostream
// formatting switches to scientific notation where it matters.
namespace gramspec::detail {

inline std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace gramspec::detail
