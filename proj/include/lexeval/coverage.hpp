// -*- mode: c++ -*-
#ifndef LEXEVAL_COVERAGE_HPP
#define LEXEVAL_COVERAGE_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "lexeval/frame_checker.hpp"
#include "lexeval/passage.hpp"
#include "lexeval/rational.hpp"

namespace lexeval {

struct Coverage {
  std::size_t covered = 0;
  std::size_t total = 0;
  Rational fraction;

  /// Percentage with two decimals, half-up.
  std::string percent() const { return format_percent(fraction); }
};

/// Analyzable records over all records. Throws InvariantError on an empty list.
Coverage coverage(const std::vector<SentenceRecord>& records);
/// Fully parsed sentences over all sentences. Throws InvariantError on an empty list.
Coverage coverage(const std::vector<SentenceAnnotation>& sentences);

}  // namespace lexeval

#endif
