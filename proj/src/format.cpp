// -*- mode: c++ -*-
#include <cstdio>

#include "lexeval/error.hpp"
#include "lexeval/rational.hpp"

namespace lexeval {

std::string format_percent(const Rational& r) {
  if (r < 0) throw InvariantError("format_percent: negative value");
  const __int128 num = r.numerator();
  const __int128 den = r.denominator();
  // hundredths of a percent, rounded half-up
  const __int128 scaled = (num * 20000 + den) / (2 * den);
  const auto whole = static_cast<long long>(scaled / 100);
  const auto frac = static_cast<int>(scaled % 100);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld.%02d", whole, frac);
  return buf;
}

std::string format_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace lexeval
