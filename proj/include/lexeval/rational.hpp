// -*- mode: c++ -*-
#ifndef LEXEVAL_RATIONAL_HPP
#define LEXEVAL_RATIONAL_HPP

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace lexeval {

using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

/// 100·r rounded half-up to two decimals, e.g. 3/8 -> "37.50", 2/3 -> "66.67".
/// r must be non-negative.
std::string format_percent(const Rational& r);

/// Fixed six-decimal rendering used for scores.
std::string format_score(double v);

}  // namespace lexeval

#endif
