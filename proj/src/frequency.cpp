// -*- mode: c++ -*-
#include "lexeval/frequency.hpp"

#include <algorithm>

#include "lexeval/error.hpp"
#include "text.hpp"

namespace lexeval {

LemmaRanking top_lemmas(const FrequencyTable& freq, std::size_t n) {
  LemmaRanking out;
  std::map<std::string, std::uint64_t, std::less<>> totals;
  for (const auto& [form, count] : freq.counts) {
    const auto it = freq.lemma_of.find(form);
    if (it == freq.lemma_of.end()) {
      ++out.unmapped_forms;
      continue;
    }
    totals[it->second] += count;
  }
  out.lemmas.assign(totals.begin(), totals.end());
  std::stable_sort(out.lemmas.begin(), out.lemmas.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.lemmas.size() > n) out.lemmas.resize(n);
  return out;
}

std::vector<std::pair<std::string, std::uint64_t>> parse_frequency_counts(std::string_view text) {
  std::vector<std::pair<std::string, std::uint64_t>> out;
  text::for_each_record(text, [&](std::size_t line_no, std::string_view line) {
    const auto fields = text::split(line, '\t');
    if (fields.size() != 2) throw FormatError("expected form<TAB>count", line_no);
    if (fields[0].empty()) throw FormatError("empty form", line_no);
    const auto count = text::parse_int(fields[1]);
    if (!count || *count < 0) throw FormatError("count must be a non-negative integer", line_no);
    out.emplace_back(std::string(fields[0]), static_cast<std::uint64_t>(*count));
  });
  return out;
}

std::map<std::string, std::string, std::less<>> parse_lemma_map(std::string_view text) {
  std::map<std::string, std::string, std::less<>> out;
  text::for_each_record(text, [&](std::size_t line_no, std::string_view line) {
    const auto fields = text::split(line, '\t');
    if (fields.size() != 2) throw FormatError("expected form<TAB>lemma", line_no);
    if (fields[0].empty() || fields[1].empty()) throw FormatError("empty form or lemma", line_no);
    if (!out.emplace(std::string(fields[0]), std::string(fields[1])).second)
      throw FormatError("duplicate form '" + std::string(fields[0]) + "'", line_no);
  });
  return out;
}

}  // namespace lexeval
