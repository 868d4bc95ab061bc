// -*- mode: c++ -*-
//
// Lexicon-only analyzability oracle: a sentence is analyzable when every
// observed predicate frame in it is accepted by some entry of its lemma.
//
#ifndef LEXEVAL_FRAME_CHECKER_HPP
#define LEXEVAL_FRAME_CHECKER_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lexeval/lexicon.hpp"

namespace lexeval {

struct ObservedSlot {
  SyntacticFunction function;
  Realization realization;

  bool operator==(const ObservedSlot&) const = default;
};

/// Slots are kept sorted by function; duplicates are rejected.
class ObservedFrame {
public:
  ObservedFrame(std::string lemma, Redistribution context, std::vector<ObservedSlot> slots);

  const std::string& lemma() const noexcept { return lemma_; }
  Redistribution context() const noexcept { return context_; }
  const std::vector<ObservedSlot>& slots() const noexcept { return slots_; }
  const ObservedSlot* find(SyntacticFunction f) const noexcept;

  bool operator==(const ObservedFrame&) const = default;

private:
  std::string lemma_;
  Redistribution context_;
  std::vector<ObservedSlot> slots_;
};

enum class FailureReason : std::uint8_t {
  MissingLemma,
  UncodedEntry,
  MissingObligatoryComplement,
  UnknownConstruction,
  MissingRedistribution,
};

inline constexpr FailureReason kAllFailureReasons[] = {
    FailureReason::MissingLemma, FailureReason::UncodedEntry,
    FailureReason::MissingObligatoryComplement, FailureReason::UnknownConstruction,
    FailureReason::MissingRedistribution,
};

std::string_view to_string(FailureReason r) noexcept;

/// The three acceptance clauses, evaluated independently.
struct ClauseCheck {
  bool realizations = false;    // every observed slot exists with a compatible realization
  bool obligatory = false;      // every obligatory slot is observed
  bool redistribution = false;  // the context is licensed

  bool all() const noexcept { return realizations && obligatory && redistribution; }
};

/// Throws InvariantError if the lemmas differ.
ClauseCheck check_clauses(const LexicalEntry& e, const ObservedFrame& obs);
bool entry_accepts(const LexicalEntry& e, const ObservedFrame& obs);

struct AnalyzabilityVerdict {
  bool analyzable = false;
  std::vector<std::string> witness_entry_ids;
  std::optional<FailureReason> failure_reason;
};

AnalyzabilityVerdict check_sentence(const Lexicon& lex, const ObservedFrame& obs);

struct SentenceRecord {
  std::string sentence_id;
  std::vector<std::string> forms;
  bool analyzable = false;

  bool operator==(const SentenceRecord&) const = default;
};

struct AnnotatedSentence {
  std::string sentence_id;
  std::vector<ObservedFrame> frames;

  bool operator==(const AnnotatedSentence&) const = default;
};

using FailureHistogram = std::map<FailureReason, std::size_t>;

struct FrameDiagnosis {
  std::size_t sentence_index = 0;
  std::size_t frame_index = 0;
  AnalyzabilityVerdict verdict;
};

struct CorpusDiagnosis {
  std::vector<SentenceRecord> records;
  FailureHistogram histogram;
  std::vector<FrameDiagnosis> frames;  // corpus order
};

/// Throws InvariantError on a sentence without frames.
CorpusDiagnosis diagnose_corpus(const Lexicon& lex, const std::vector<AnnotatedSentence>& corpus);

/// `sentence_id TAB lemma TAB redistribution TAB Function:Realization;...`
/// Frames are grouped by sentence id in order of first appearance.
std::vector<AnnotatedSentence> parse_corpus(std::string_view text);
std::string serialize_corpus(const std::vector<AnnotatedSentence>& corpus);

/// Returns a copy of e modelling an uncoded table row: all slots obligatory,
/// redistributions reduced to ACTIVE.
LexicalEntry as_uncoded(LexicalEntry e);

}  // namespace lexeval

#endif
