// -*- mode: c++ -*-
#include "lexeval/merge.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "lexeval/error.hpp"

namespace lexeval {

std::string_view to_string(MatchReason r) noexcept {
  switch (r) {
    case MatchReason::Matched: return "MATCHED";
    case MatchReason::BaseMismatch: return "BASE-MISMATCH";
    case MatchReason::ObliqueNotIncluded: return "OBLIQUE-NOT-INCLUDED";
  }
  return {};
}

namespace {

struct SignatureMasks {
  std::uint32_t base = 0;
  std::uint32_t oblique = 0;
};

SignatureMasks masks_of(const LexicalEntry& e) {
  SignatureMasks m;
  for (const auto& slot : e.frame) {
    const auto bit = 1u << static_cast<unsigned>(slot.function);
    (is_base(slot.function) ? m.base : m.oblique) |= bit;
  }
  return m;
}

MatchReason compare_signatures(const SignatureMasks& ref, const SignatureMasks& other) {
  if (ref.base != other.base) return MatchReason::BaseMismatch;
  if ((ref.oblique & ~other.oblique) != 0) return MatchReason::ObliqueNotIncluded;
  return MatchReason::Matched;
}

}  // namespace

MatchDecision entry_matches(const LexicalEntry& ref, const LexicalEntry& other) {
  if (ref.lemma != other.lemma)
    throw InvariantError("entry_matches: lemma mismatch " + ref.lemma + " / " + other.lemma);
  if (ref.category != other.category)
    throw InvariantError("entry_matches: category mismatch for " + ref.lemma);

  const auto reason = compare_signatures(masks_of(ref), masks_of(other));
  return MatchDecision{ref.entry_id, other.entry_id, reason == MatchReason::Matched, reason};
}

LexicalEntry fuse_entries(const LexicalEntry& ref, const LexicalEntry& other) {
  LexicalEntry out;
  out.lemma = ref.lemma;
  out.category = ref.category;
  out.entry_id = ref.entry_id;
  out.coded = ref.coded || other.coded;

  for (const auto& slot : other.frame) {
    FunctionSlot merged = slot;
    if (const auto* mine = ref.find_slot(slot.function)) {
      merged.realizations.insert(mine->realizations.begin(), mine->realizations.end());
      merged.optional = merged.optional || mine->optional;
    }
    out.frame.push_back(std::move(merged));
  }
  for (const auto& slot : ref.frame)
    if (!other.find_slot(slot.function)) out.frame.push_back(slot);

  out.redistributions = ref.redistributions;
  out.redistributions.insert(other.redistributions.begin(), other.redistributions.end());

  out.provenance = ref.provenance;
  out.provenance.insert(out.provenance.end(), other.provenance.begin(), other.provenance.end());

  out.examples = ref.examples;
  for (const auto& ex : other.examples)
    if (std::find(out.examples.begin(), out.examples.end(), ex) == out.examples.end())
      out.examples.push_back(ex);
  return out;
}

MergedLemmaResult merge_lemma(const std::vector<LexicalEntry>& ref_entries,
                              const std::vector<LexicalEntry>& other_entries) {
  MergedLemmaResult result;
  const LexicalEntry* first = !ref_entries.empty()     ? &ref_entries.front()
                              : !other_entries.empty() ? &other_entries.front()
                                                       : nullptr;
  if (first) result.lemma = first->lemma;
  for (const auto* side : {&ref_entries, &other_entries})
    for (const auto& e : *side)
      if (e.lemma != result.lemma)
        throw InvariantError("merge_lemma: mixed lemmas " + result.lemma + " / " + e.lemma);

  result.ref_count = ref_entries.size();
  result.other_count = other_entries.size();

  std::vector<SignatureMasks> other_masks;
  other_masks.reserve(other_entries.size());
  for (const auto& o : other_entries) other_masks.push_back(masks_of(o));

  result.entries.reserve(ref_entries.size() + other_entries.size());
  result.origins.reserve(ref_entries.size() + other_entries.size());
  std::vector<bool> consumed(other_entries.size(), false);
  for (const auto& r : ref_entries) {
    const auto ref_masks = masks_of(r);
    std::size_t pick = other_entries.size();
    for (std::size_t j = 0; j < other_entries.size(); ++j) {
      if (consumed[j] || other_entries[j].category != r.category) continue;
      if (compare_signatures(ref_masks, other_masks[j]) == MatchReason::Matched) {
        pick = j;
        break;
      }
    }
    if (pick < other_entries.size()) {
      consumed[pick] = true;
      result.entries.push_back(fuse_entries(r, other_entries[pick]));
      result.origins.push_back({{Side::Ref, r.entry_id}, {Side::Other, other_entries[pick].entry_id}});
    } else {
      result.entries.push_back(r);
      result.origins.push_back({{Side::Ref, r.entry_id}});
    }
  }
  for (std::size_t j = 0; j < other_entries.size(); ++j) {
    if (consumed[j]) continue;
    result.entries.push_back(other_entries[j]);
    result.origins.push_back({{Side::Other, other_entries[j].entry_id}});
  }

  result.merged_count = result.entries.size();
  result.needs_validation = result.merged_count > std::max(result.ref_count, result.other_count);
  return result;
}

MergeTotals recompute_totals(const std::vector<MergedLemmaResult>& lemmas) {
  MergeTotals t;
  for (const auto& l : lemmas) {
    ++t.lemmas;
    t.entries += l.merged_count;
    if (l.needs_validation) {
      ++t.flagged_lemmas;
      t.flagged_entries += l.merged_count;
    }
  }
  return t;
}

std::pair<Lexicon, MergeReport> merge_lexicons(const Lexicon& ref, const Lexicon& other) {
  Lexicon merged(ref.name() + "+" + other.name());
  MergeReport report;
  static const std::vector<LexicalEntry> kNone;

  std::set<std::string, std::less<>> lemmas;
  for (const auto& [lemma, _] : ref.lemmas()) lemmas.insert(lemma);
  for (const auto& [lemma, _] : other.lemmas()) lemmas.insert(lemma);

  const std::string suffix = "+" + (other.name().empty() ? std::string("other") : other.name());

  for (const auto& lemma : lemmas) {
    const auto* r = ref.find(lemma);
    const auto* o = other.find(lemma);
    auto result = merge_lemma(r ? *r : kNone, o ? *o : kNone);

    for (std::size_t i = 0; i < result.entries.size(); ++i) {
      auto& e = result.entries[i];
      if (result.origins[i].front().side == Side::Other && ref.contains_id(e.entry_id)) {
        std::string id = e.entry_id + suffix;
        for (int n = 2; ref.contains_id(id) || other.contains_id(id) || merged.contains_id(id); ++n)
          id = e.entry_id + suffix + std::to_string(n);
        e.entry_id = std::move(id);
      }
      merged.add(e);
    }
    report.lemmas.push_back(std::move(result));
  }
  report.totals = recompute_totals(report.lemmas);
  return {std::move(merged), std::move(report)};
}

std::vector<std::string> validation_queue(const MergeReport& report) {
  std::vector<const MergedLemmaResult*> flagged;
  for (const auto& l : report.lemmas)
    if (l.needs_validation) flagged.push_back(&l);
  std::sort(flagged.begin(), flagged.end(), [](const auto* a, const auto* b) {
    if (a->merged_count != b->merged_count) return a->merged_count > b->merged_count;
    return a->lemma < b->lemma;
  });
  std::vector<std::string> out;
  for (const auto* l : flagged) out.push_back(l->lemma);
  return out;
}

std::string format_merge_report(const MergeReport& report) {
  std::string out = "#lemma\tref_count\tother_count\tmerged_count\tflag\n";
  for (const auto& l : report.lemmas) {
    out += l.lemma + '\t' + std::to_string(l.ref_count) + '\t' + std::to_string(l.other_count) + '\t' +
           std::to_string(l.merged_count) + '\t' + (l.needs_validation ? "validate" : "ok") + '\n';
  }
  const auto& t = report.totals;
  out += "#TOTALS\tlemmas=" + std::to_string(t.lemmas) + "\tentries=" + std::to_string(t.entries) +
         "\tflagged_lemmas=" + std::to_string(t.flagged_lemmas) +
         "\tflagged_entries=" + std::to_string(t.flagged_entries) + '\n';
  return out;
}

}  // namespace lexeval
