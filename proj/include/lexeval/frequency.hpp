// -*- mode: c++ -*-
#ifndef LEXEVAL_FREQUENCY_HPP
#define LEXEVAL_FREQUENCY_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexeval {

struct FrequencyTable {
  std::vector<std::pair<std::string, std::uint64_t>> counts;  // form, count
  std::map<std::string, std::string, std::less<>> lemma_of;    // form -> lemma
};

struct LemmaRanking {
  std::vector<std::pair<std::string, std::uint64_t>> lemmas;  // lemma, summed count
  std::size_t unmapped_forms = 0;
};

/// Lemma frequency is the sum of its forms' counts; top n by frequency
/// descending, ties by lemma. Forms without a lemma are counted, not ranked.
LemmaRanking top_lemmas(const FrequencyTable& freq, std::size_t n);

/// `form TAB count` lines.
std::vector<std::pair<std::string, std::uint64_t>> parse_frequency_counts(std::string_view text);
/// `form TAB lemma` lines; duplicate forms are a FormatError.
std::map<std::string, std::string, std::less<>> parse_lemma_map(std::string_view text);

}  // namespace lexeval

#endif
