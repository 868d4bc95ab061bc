// -*- mode: c++ -*-
#include "lexeval/lexicon.hpp"

#include <algorithm>

#include "lexeval/error.hpp"
#include "text.hpp"

namespace lexeval {

namespace {

constexpr std::string_view kFunctionNames[] = {"Suj", "Obj", "Obja", "Objde", "Att",
                                               "Loc", "Dloc", "Obl", "Obl2"};
constexpr std::string_view kRedistributionNames[] = {"ACTIVE", "PASSIVE", "IMPERSONAL",
                                                     "SE-MIDDLE", "OBJ-CLITICIZATION"};

bool has_any(std::string_view s, std::string_view chars) {
  return s.find_first_of(chars) != std::string_view::npos;
}

void require(bool cond, const std::string& what) {
  if (!cond) throw InvariantError(what);
}

}  // namespace

std::string_view to_string(SyntacticFunction f) noexcept {
  return kFunctionNames[static_cast<std::size_t>(f)];
}

std::optional<SyntacticFunction> parse_function(std::string_view token) noexcept {
  for (std::size_t i = 0; i < std::size(kFunctionNames); ++i)
    if (kFunctionNames[i] == token) return static_cast<SyntacticFunction>(i);
  return std::nullopt;
}

std::string_view to_string(Redistribution r) noexcept {
  return kRedistributionNames[static_cast<std::size_t>(r)];
}

std::optional<Redistribution> parse_redistribution(std::string_view token) noexcept {
  for (std::size_t i = 0; i < std::size(kRedistributionNames); ++i)
    if (kRedistributionNames[i] == token) return static_cast<Redistribution>(i);
  return std::nullopt;
}

std::string_view to_string(Category c) noexcept { return c == Category::V ? "V" : "N-PRED"; }

std::optional<Category> parse_category(std::string_view token) noexcept {
  if (token == "V") return Category::V;
  if (token == "N-PRED") return Category::NPred;
  return std::nullopt;
}

// ---------------------------------------------------------------- Realization

Realization::Realization(Marker marker) : marker_(marker) {
  if (marker == Marker::PP) throw InvariantError("PP realization requires a preposition");
}

Realization Realization::pp(std::string prep) {
  if (prep.empty()) throw InvariantError("empty preposition");
  if (text::has_ascii_upper(prep)) throw InvariantError("preposition must be lowercase: " + prep);
  if (has_any(prep, "|;:(),\t\r\n")) throw InvariantError("invalid character in preposition: " + prep);
  return Realization(Marker::PP, std::move(prep));
}

std::string Realization::to_string() const {
  switch (marker_) {
    case Marker::NP: return "NP";
    case Marker::Clitic: return "CLITIC";
    case Marker::FiniteClause: return "FINITE-CLAUSE";
    case Marker::InfClause: return "INF-CLAUSE";
    case Marker::PP: return "PP(" + prep_ + ")";
  }
  return {};
}

std::optional<Realization> Realization::parse(std::string_view token) {
  if (token == "NP") return np();
  if (token == "CLITIC") return clitic();
  if (token == "FINITE-CLAUSE") return finite_clause();
  if (token == "INF-CLAUSE") return inf_clause();
  if (token.size() > 4 && token.starts_with("PP(") && token.back() == ')') {
    try {
      return pp(std::string(token.substr(3, token.size() - 4)));
    } catch (const InvariantError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- entries

const FunctionSlot* LexicalEntry::find_slot(SyntacticFunction f) const noexcept {
  for (const auto& slot : frame)
    if (slot.function == f) return &slot;
  return nullptr;
}

FunctionSet LexicalEntry::functions() const {
  FunctionSet out;
  for (const auto& slot : frame) out.insert(slot.function);
  return out;
}

void validate_entry(const LexicalEntry& e) {
  require(!e.lemma.empty(), "empty lemma");
  require(!has_any(e.lemma, "\t\r\n,") && e.lemma.front() != '#',
          "invalid character in lemma: " + e.lemma);
  require(!text::has_ascii_upper(e.lemma), "lemma must be lowercase: " + e.lemma);
  require(!e.entry_id.empty() && !has_any(e.entry_id, "\t\r\n"),
          "invalid entry id for lemma " + e.lemma);

  FunctionSet seen;
  for (const auto& slot : e.frame) {
    require(!slot.realizations.empty(),
            "empty realization set for " + std::string(to_string(slot.function)) + " in " + e.entry_id);
    require(seen.insert(slot.function).second,
            "duplicate function " + std::string(to_string(slot.function)) + " in " + e.entry_id);
    require(e.coded || !slot.optional, "uncoded entry " + e.entry_id + " has an optional slot");
  }
  require(!e.coded || e.redistributions.contains(Redistribution::Active),
          "coded entry " + e.entry_id + " lacks ACTIVE");

  require(!e.provenance.empty(), "empty provenance for " + e.entry_id);
  for (const auto& p : e.provenance) {
    require(!p.source.empty() && !has_any(p.source, ":,\t\r\n"), "invalid provenance source in " + e.entry_id);
    require(!p.id.empty() && !has_any(p.id, ",\t\r\n"), "invalid provenance id in " + e.entry_id);
  }
  for (const auto& ex : e.examples)
    require(!ex.empty() && !has_any(ex, "\t\r\n"), "invalid example in " + e.entry_id);
}

FunctionSet base_signature(const LexicalEntry& e) {
  FunctionSet out;
  for (const auto& slot : e.frame)
    if (is_base(slot.function)) out.insert(slot.function);
  return out;
}

FunctionSet oblique_signature(const LexicalEntry& e) {
  FunctionSet out;
  for (const auto& slot : e.frame)
    if (is_oblique(slot.function)) out.insert(slot.function);
  return out;
}

// ---------------------------------------------------------------- Lexicon

void Lexicon::add(LexicalEntry e) {
  validate_entry(e);
  if (ids_.contains(e.entry_id)) throw InvariantError("duplicate entry id: " + e.entry_id);
  ids_.insert(e.entry_id);
  auto& list = entries_[e.lemma];
  auto pos = std::upper_bound(list.begin(), list.end(), e.entry_id,
                              [](const std::string& id, const LexicalEntry& x) { return id < x.entry_id; });
  list.insert(pos, std::move(e));
}

const Lexicon::EntryList* Lexicon::find(std::string_view lemma) const {
  auto it = entries_.find(lemma);
  return it == entries_.end() ? nullptr : &it->second;
}

bool Lexicon::contains_id(std::string_view entry_id) const { return ids_.find(entry_id) != ids_.end(); }

// ---------------------------------------------------------------- format

LexicalEntry parse_entry_line(std::string_view line, std::size_t line_no) {
  const auto fields = text::split(line, '\t');
  if (fields.size() < 7)
    throw FormatError("expected at least 7 tab-separated fields, got " + std::to_string(fields.size()), line_no);

  LexicalEntry e;
  e.lemma = fields[0];

  const auto category = parse_category(fields[1]);
  if (!category) throw FormatError("unknown category '" + std::string(fields[1]) + "'", line_no);
  e.category = *category;
  e.entry_id = fields[2];

  if (!fields[3].empty()) {
    for (auto slot_text : text::split(fields[3], ';')) {
      const auto colon = slot_text.find(':');
      if (colon == std::string_view::npos)
        throw FormatError("slot without ':' in '" + std::string(slot_text) + "'", line_no);
      FunctionSlot slot;
      auto fn_text = slot_text.substr(0, colon);
      if (fn_text.ends_with('?')) {
        slot.optional = true;
        fn_text.remove_suffix(1);
      }
      const auto fn = parse_function(fn_text);
      if (!fn) throw FormatError("unknown function '" + std::string(fn_text) + "'", line_no);
      slot.function = *fn;
      const auto reals = slot_text.substr(colon + 1);
      if (reals.empty()) throw FormatError("empty realization set for " + std::string(fn_text), line_no);
      for (auto tok : text::split(reals, '|')) {
        const auto r = Realization::parse(tok);
        if (!r) throw FormatError("unknown realization '" + std::string(tok) + "'", line_no);
        slot.realizations.insert(*r);
      }
      e.frame.push_back(std::move(slot));
    }
  }

  if (!fields[4].empty()) {
    for (auto tok : text::split(fields[4], ',')) {
      const auto r = parse_redistribution(tok);
      if (!r) throw FormatError("unknown redistribution '" + std::string(tok) + "'", line_no);
      e.redistributions.insert(*r);
    }
  }

  if (fields[5] == "coded")
    e.coded = true;
  else if (fields[5] == "uncoded")
    e.coded = false;
  else
    throw FormatError("coded flag must be 'coded' or 'uncoded', got '" + std::string(fields[5]) + "'", line_no);

  for (auto tok : text::split(fields[6], ',')) {
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos) throw FormatError("provenance must be source:id, got '" + std::string(tok) + "'", line_no);
    e.provenance.push_back({std::string(tok.substr(0, colon)), std::string(tok.substr(colon + 1))});
  }

  for (std::size_t i = 7; i < fields.size(); ++i) e.examples.emplace_back(fields[i]);

  try {
    validate_entry(e);
  } catch (const InvariantError& err) {
    throw FormatError(err.what(), line_no);
  }
  return e;
}

std::string format_entry_line(const LexicalEntry& e) {
  std::string out = e.lemma;
  out += '\t';
  out += to_string(e.category);
  out += '\t';
  out += e.entry_id;
  out += '\t';
  for (std::size_t i = 0; i < e.frame.size(); ++i) {
    const auto& slot = e.frame[i];
    if (i) out += ';';
    out += to_string(slot.function);
    if (slot.optional) out += '?';
    out += ':';
    bool first = true;
    for (const auto& r : slot.realizations) {
      if (!first) out += '|';
      first = false;
      out += r.to_string();
    }
  }
  out += '\t';
  bool first = true;
  for (auto r : e.redistributions) {
    if (!first) out += ',';
    first = false;
    out += to_string(r);
  }
  out += '\t';
  out += e.coded ? "coded" : "uncoded";
  out += '\t';
  for (std::size_t i = 0; i < e.provenance.size(); ++i) {
    if (i) out += ',';
    out += e.provenance[i].source;
    out += ':';
    out += e.provenance[i].id;
  }
  for (const auto& ex : e.examples) {
    out += '\t';
    out += ex;
  }
  return out;
}

Lexicon parse_lexicon(std::string_view text, std::string name) {
  Lexicon lex(std::move(name));
  text::for_each_record(text, [&](std::size_t line_no, std::string_view line) {
    auto e = parse_entry_line(line, line_no);
    if (lex.contains_id(e.entry_id)) throw FormatError("duplicate entry id '" + e.entry_id + "'", line_no);
    lex.add(std::move(e));
  });
  return lex;
}

std::string serialize_lexicon(const Lexicon& lex) {
  std::string out;
  for (const auto& [lemma, entries] : lex.lemmas())
    for (const auto& e : entries) {
      out += format_entry_line(e);
      out += '\n';
    }
  return out;
}

StatsReport lexicon_stats(const Lexicon& lex, std::size_t top_k) {
  StatsReport report;
  report.lemma_count = lex.lemma_count();
  std::vector<std::pair<std::string, std::size_t>> counts;
  for (const auto& [lemma, entries] : lex.lemmas()) {
    report.entry_count += entries.size();
    report.max_entries_per_lemma = std::max(report.max_entries_per_lemma, entries.size());
    counts.emplace_back(lemma, entries.size());
  }
  std::stable_sort(counts.begin(), counts.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  if (counts.size() > top_k) counts.resize(top_k);
  report.most_ambiguous = std::move(counts);
  return report;
}

}  // namespace lexeval
