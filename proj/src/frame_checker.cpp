// -*- mode: c++ -*-
#include "lexeval/frame_checker.hpp"

#include <algorithm>

#include "lexeval/error.hpp"
#include "text.hpp"

namespace lexeval {

ObservedFrame::ObservedFrame(std::string lemma, Redistribution context, std::vector<ObservedSlot> slots)
    : lemma_(std::move(lemma)), context_(context), slots_(std::move(slots)) {
  std::stable_sort(slots_.begin(), slots_.end(),
                   [](const ObservedSlot& a, const ObservedSlot& b) { return a.function < b.function; });
  for (std::size_t i = 1; i < slots_.size(); ++i)
    if (slots_[i].function == slots_[i - 1].function)
      throw InvariantError("observed frame for " + lemma_ + " repeats function " +
                           std::string(to_string(slots_[i].function)));
}

const ObservedSlot* ObservedFrame::find(SyntacticFunction f) const noexcept {
  for (const auto& s : slots_)
    if (s.function == f) return &s;
  return nullptr;
}

std::string_view to_string(FailureReason r) noexcept {
  switch (r) {
    case FailureReason::MissingLemma: return "MISSING-LEMMA";
    case FailureReason::UncodedEntry: return "UNCODED-ENTRY";
    case FailureReason::MissingObligatoryComplement: return "MISSING-OBLIGATORY-COMPLEMENT";
    case FailureReason::UnknownConstruction: return "UNKNOWN-CONSTRUCTION";
    case FailureReason::MissingRedistribution: return "MISSING-REDISTRIBUTION";
  }
  return {};
}

ClauseCheck check_clauses(const LexicalEntry& e, const ObservedFrame& obs) {
  if (e.lemma != obs.lemma()) throw InvariantError("entry_accepts: lemma mismatch " + e.lemma + " / " + obs.lemma());

  ClauseCheck c;
  c.realizations = std::all_of(obs.slots().begin(), obs.slots().end(), [&](const ObservedSlot& s) {
    const auto* slot = e.find_slot(s.function);
    return slot && slot->realizations.contains(s.realization);
  });

  const bool subject_exempt =
      obs.context() == Redistribution::Passive || obs.context() == Redistribution::Impersonal;
  c.obligatory = std::all_of(e.frame.begin(), e.frame.end(), [&](const FunctionSlot& slot) {
    const bool optional = e.coded && slot.optional;
    if (optional || obs.find(slot.function)) return true;
    return subject_exempt && slot.function == SyntacticFunction::Suj;
  });

  c.redistribution = e.redistributions.contains(obs.context());
  return c;
}

bool entry_accepts(const LexicalEntry& e, const ObservedFrame& obs) { return check_clauses(e, obs).all(); }

AnalyzabilityVerdict check_sentence(const Lexicon& lex, const ObservedFrame& obs) {
  AnalyzabilityVerdict v;
  const auto* entries = lex.find(obs.lemma());
  if (!entries) {
    v.failure_reason = FailureReason::MissingLemma;
    return v;
  }

  bool all_uncoded = true;
  bool near_redistribution = false;
  bool near_obligatory = false;
  for (const auto& e : *entries) {
    const auto c = check_clauses(e, obs);
    if (c.all()) v.witness_entry_ids.push_back(e.entry_id);
    all_uncoded = all_uncoded && !e.coded;
    near_redistribution = near_redistribution || (c.realizations && c.obligatory && !c.redistribution);
    near_obligatory = near_obligatory || (c.realizations && c.redistribution && !c.obligatory);
  }

  if (!v.witness_entry_ids.empty()) {
    v.analyzable = true;
  } else if (all_uncoded) {
    v.failure_reason = FailureReason::UncodedEntry;
  } else if (near_redistribution) {
    v.failure_reason = FailureReason::MissingRedistribution;
  } else if (near_obligatory) {
    v.failure_reason = FailureReason::MissingObligatoryComplement;
  } else {
    v.failure_reason = FailureReason::UnknownConstruction;
  }
  return v;
}

CorpusDiagnosis diagnose_corpus(const Lexicon& lex, const std::vector<AnnotatedSentence>& corpus) {
  CorpusDiagnosis out;
  out.records.reserve(corpus.size());
  for (std::size_t si = 0; si < corpus.size(); ++si) {
    const auto& sentence = corpus[si];
    if (sentence.frames.empty()) throw InvariantError("sentence " + sentence.sentence_id + " has no observed frame");
    SentenceRecord rec{sentence.sentence_id, {}, true};
    for (std::size_t fi = 0; fi < sentence.frames.size(); ++fi) {
      const auto& frame = sentence.frames[fi];
      auto verdict = check_sentence(lex, frame);
      rec.forms.push_back(frame.lemma());
      if (!verdict.analyzable) {
        rec.analyzable = false;
        ++out.histogram[*verdict.failure_reason];
      }
      out.frames.push_back({si, fi, std::move(verdict)});
    }
    out.records.push_back(std::move(rec));
  }
  return out;
}

// ---------------------------------------------------------------- format

std::vector<AnnotatedSentence> parse_corpus(std::string_view text) {
  std::vector<AnnotatedSentence> corpus;
  std::map<std::string, std::size_t, std::less<>> index;
  text::for_each_record(text, [&](std::size_t line_no, std::string_view line) {
    const auto fields = text::split(line, '\t');
    if (fields.size() != 4)
      throw FormatError("expected 4 tab-separated fields, got " + std::to_string(fields.size()), line_no);
    if (fields[0].empty()) throw FormatError("empty sentence id", line_no);
    if (fields[1].empty() || fields[1].find(',') != std::string_view::npos)
      throw FormatError("invalid lemma '" + std::string(fields[1]) + "'", line_no);
    const auto context = parse_redistribution(fields[2]);
    if (!context) throw FormatError("unknown redistribution '" + std::string(fields[2]) + "'", line_no);

    std::vector<ObservedSlot> slots;
    if (!fields[3].empty()) {
      for (auto pair : text::split(fields[3], ';')) {
        const auto colon = pair.find(':');
        if (colon == std::string_view::npos)
          throw FormatError("observed slot must be Function:Realization, got '" + std::string(pair) + "'", line_no);
        const auto fn = parse_function(pair.substr(0, colon));
        if (!fn) throw FormatError("unknown function '" + std::string(pair.substr(0, colon)) + "'", line_no);
        const auto real = Realization::parse(pair.substr(colon + 1));
        if (!real) throw FormatError("unknown realization '" + std::string(pair.substr(colon + 1)) + "'", line_no);
        slots.push_back({*fn, *real});
      }
    }

    try {
      ObservedFrame frame(std::string(fields[1]), *context, std::move(slots));
      auto [it, fresh] = index.try_emplace(std::string(fields[0]), corpus.size());
      if (fresh) corpus.push_back({std::string(fields[0]), {}});
      corpus[it->second].frames.push_back(std::move(frame));
    } catch (const InvariantError& err) {
      throw FormatError(err.what(), line_no);
    }
  });
  return corpus;
}

std::string serialize_corpus(const std::vector<AnnotatedSentence>& corpus) {
  std::string out;
  for (const auto& s : corpus)
    for (const auto& f : s.frames) {
      out += s.sentence_id;
      out += '\t';
      out += f.lemma();
      out += '\t';
      out += to_string(f.context());
      out += '\t';
      for (std::size_t i = 0; i < f.slots().size(); ++i) {
        if (i) out += ';';
        out += to_string(f.slots()[i].function);
        out += ':';
        out += f.slots()[i].realization.to_string();
      }
      out += '\n';
    }
  return out;
}

LexicalEntry as_uncoded(LexicalEntry e) {
  e.coded = false;
  for (auto& slot : e.frame) slot.optional = false;
  e.redistributions = {Redistribution::Active};
  return e;
}

}  // namespace lexeval
