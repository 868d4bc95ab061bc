// -*- mode: c++ -*-
#include "lexeval/coverage.hpp"

#include "lexeval/error.hpp"

namespace lexeval {

namespace {

Coverage make_coverage(std::size_t covered, std::size_t total) {
  if (total == 0) throw InvariantError("coverage of an empty list");
  return {covered, total,
          Rational(static_cast<std::int64_t>(covered), static_cast<std::int64_t>(total))};
}

}  // namespace

Coverage coverage(const std::vector<SentenceRecord>& records) {
  std::size_t covered = 0;
  for (const auto& r : records) covered += r.analyzable;
  return make_coverage(covered, records.size());
}

Coverage coverage(const std::vector<SentenceAnnotation>& sentences) {
  std::size_t covered = 0;
  for (const auto& s : sentences) covered += s.full_parse;
  return make_coverage(covered, sentences.size());
}

}  // namespace lexeval
