// -*- mode: c++ -*-
//
// Fusion of a reference lexicon with a second lexicon.
//
// Two entries of one lemma match when their base functions are identical and
// the reference entry's oblique functions are included in the other entry's.
// Pairing is greedy and one-to-one: reference entries are visited in entry_id
// order, each fusing with the first matching, not yet consumed, other entry.
// Unmatched entries on either side are copied.
//
#ifndef LEXEVAL_MERGE_HPP
#define LEXEVAL_MERGE_HPP

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexeval/lexicon.hpp"

namespace lexeval {

enum class MatchReason { Matched, BaseMismatch, ObliqueNotIncluded };

std::string_view to_string(MatchReason r) noexcept;

struct MatchDecision {
  std::string ref_entry_id;
  std::string other_entry_id;
  bool matched = false;
  MatchReason reason = MatchReason::BaseMismatch;
};

/// Throws InvariantError when lemma or category differ.
MatchDecision entry_matches(const LexicalEntry& ref, const LexicalEntry& other);

/// Fuses a matched pair: other's frame (realizations unioned, optional if
/// optional on either side), union of redistributions and examples,
/// concatenated provenance. Keeps ref's lemma, category and entry_id.
LexicalEntry fuse_entries(const LexicalEntry& ref, const LexicalEntry& other);

enum class Side { Ref, Other };

struct EntryOrigin {
  Side side;
  std::string entry_id;

  bool operator==(const EntryOrigin&) const = default;
};

struct MergedLemmaResult {
  std::string lemma;
  std::vector<LexicalEntry> entries;
  /// origins[i] lists the source entries that produced entries[i].
  std::vector<std::vector<EntryOrigin>> origins;
  bool needs_validation = false;
  std::size_t ref_count = 0;
  std::size_t other_count = 0;
  std::size_t merged_count = 0;
};

/// All entries must share one lemma; entries of different categories never pair.
MergedLemmaResult merge_lemma(const std::vector<LexicalEntry>& ref_entries,
                              const std::vector<LexicalEntry>& other_entries);

struct MergeTotals {
  std::size_t lemmas = 0;
  std::size_t entries = 0;
  std::size_t flagged_lemmas = 0;
  std::size_t flagged_entries = 0;

  bool operator==(const MergeTotals&) const = default;
};

struct MergeReport {
  std::vector<MergedLemmaResult> lemmas;  // lemma order
  MergeTotals totals;
};

MergeTotals recompute_totals(const std::vector<MergedLemmaResult>& lemmas);

/// Result lexicon is named "<ref>+<other>". An unmatched other entry whose id
/// collides with a ref id is renamed "<id>+<other name>".
std::pair<Lexicon, MergeReport> merge_lexicons(const Lexicon& ref, const Lexicon& other);

/// Flagged lemmas, merged_count descending then lemma ascending.
std::vector<std::string> validation_queue(const MergeReport& report);

/// `lemma TAB ref_count TAB other_count TAB merged_count TAB flag` rows
/// followed by a `#TOTALS` line. flag is `validate` or `ok`.
std::string format_merge_report(const MergeReport& report);

}  // namespace lexeval

#endif
