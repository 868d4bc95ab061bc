// -*- mode: c++ -*-
//
// Valence lexicon data model and its tab-separated interchange format.
//
// One entry per line:
//
//   lemma TAB category TAB entry_id TAB frame TAB redistributions TAB coded|uncoded
//         TAB provenance [TAB example ...]
//
// frame is a `;`-separated list of `Function[?]:real|real|...` slots, `?`
// marking an optional slot and `PP(prep)` a prepositional realization.
// Lines starting with `#` and blank lines are ignored.
//
#ifndef LEXEVAL_LEXICON_HPP
#define LEXEVAL_LEXICON_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lexeval {

enum class SyntacticFunction : std::uint8_t {
  Suj,
  Obj,
  Obja,   // indirect object in "à"
  Objde,  // indirect object in "de"
  Att,
  Loc,
  Dloc,
  Obl,
  Obl2,
};

inline constexpr SyntacticFunction kAllFunctions[] = {
    SyntacticFunction::Suj, SyntacticFunction::Obj,  SyntacticFunction::Obja,
    SyntacticFunction::Objde, SyntacticFunction::Att, SyntacticFunction::Loc,
    SyntacticFunction::Dloc, SyntacticFunction::Obl,  SyntacticFunction::Obl2,
};

/// Subject and direct/indirect objects. Every other function is oblique.
constexpr bool is_base(SyntacticFunction f) noexcept {
  return f == SyntacticFunction::Suj || f == SyntacticFunction::Obj ||
         f == SyntacticFunction::Obja || f == SyntacticFunction::Objde;
}
constexpr bool is_oblique(SyntacticFunction f) noexcept { return !is_base(f); }

std::string_view to_string(SyntacticFunction f) noexcept;
std::optional<SyntacticFunction> parse_function(std::string_view token) noexcept;

using FunctionSet = std::set<SyntacticFunction>;

class Realization {
public:
  enum class Marker : std::uint8_t { NP, Clitic, FiniteClause, InfClause, PP };

  static Realization np() { return Realization(Marker::NP); }
  static Realization clitic() { return Realization(Marker::Clitic); }
  static Realization finite_clause() { return Realization(Marker::FiniteClause); }
  static Realization inf_clause() { return Realization(Marker::InfClause); }
  /// Throws InvariantError unless prep is non-empty, lowercase and free of
  /// the format's separator characters.
  static Realization pp(std::string prep);

  /// Non-PP markers only; use pp() for prepositions.
  explicit Realization(Marker marker);

  Marker marker() const noexcept { return marker_; }
  const std::string& preposition() const noexcept { return prep_; }

  /// `NP`, `CLITIC`, `FINITE-CLAUSE`, `INF-CLAUSE` or `PP(prep)`.
  std::string to_string() const;
  static std::optional<Realization> parse(std::string_view token);

  auto operator<=>(const Realization&) const = default;

private:
  Realization(Marker marker, std::string prep) : marker_(marker), prep_(std::move(prep)) {}

  Marker marker_;
  std::string prep_;
};

struct FunctionSlot {
  SyntacticFunction function = SyntacticFunction::Suj;
  std::set<Realization> realizations;
  bool optional = false;

  bool operator==(const FunctionSlot&) const = default;
};

using SubcatFrame = std::vector<FunctionSlot>;

enum class Redistribution : std::uint8_t {
  Active,
  Passive,
  Impersonal,
  SeMiddle,
  ObjCliticization,
};

inline constexpr Redistribution kAllRedistributions[] = {
    Redistribution::Active, Redistribution::Passive, Redistribution::Impersonal,
    Redistribution::SeMiddle, Redistribution::ObjCliticization,
};

std::string_view to_string(Redistribution r) noexcept;
std::optional<Redistribution> parse_redistribution(std::string_view token) noexcept;

using RedistributionSet = std::set<Redistribution>;

enum class Category : std::uint8_t { V, NPred };

std::string_view to_string(Category c) noexcept;
std::optional<Category> parse_category(std::string_view token) noexcept;

struct Provenance {
  std::string source;
  std::string id;

  auto operator<=>(const Provenance&) const = default;
};

struct LexicalEntry {
  std::string lemma;
  Category category = Category::V;
  std::string entry_id;
  SubcatFrame frame;
  RedistributionSet redistributions;
  // false models a table row whose frame is only the declared base construction
  bool coded = true;
  std::vector<Provenance> provenance;
  std::vector<std::string> examples;

  const FunctionSlot* find_slot(SyntacticFunction f) const noexcept;
  FunctionSet functions() const;

  bool operator==(const LexicalEntry&) const = default;
};

/// Throws InvariantError describing the first violated entry invariant.
void validate_entry(const LexicalEntry& e);

/// Functions of e's slots classified as base, optionality ignored.
FunctionSet base_signature(const LexicalEntry& e);
/// Functions of e's slots classified as oblique, optionality ignored.
FunctionSet oblique_signature(const LexicalEntry& e);

/// Lemma -> entries, entries kept sorted by entry_id; entry ids unique
/// across the whole lexicon.
class Lexicon {
public:
  using EntryList = std::vector<LexicalEntry>;

  Lexicon() = default;
  explicit Lexicon(std::string name) : name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  /// Validates e and inserts it. Throws InvariantError on a duplicate entry_id.
  void add(LexicalEntry e);

  const EntryList* find(std::string_view lemma) const;
  bool contains_id(std::string_view entry_id) const;

  const std::map<std::string, EntryList, std::less<>>& lemmas() const noexcept { return entries_; }
  std::size_t lemma_count() const noexcept { return entries_.size(); }
  std::size_t entry_count() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  /// Compares contents only; the name is metadata.
  bool operator==(const Lexicon& other) const { return entries_ == other.entries_; }

private:
  std::string name_;
  std::map<std::string, EntryList, std::less<>> entries_;
  std::set<std::string, std::less<>> ids_;
};

/// Parses one non-comment line. `line_no` is only used for error messages.
LexicalEntry parse_entry_line(std::string_view line, std::size_t line_no = 0);
std::string format_entry_line(const LexicalEntry& e);

/// Throws FormatError (with line number) on syntax errors, unknown tokens,
/// empty realization sets, invariant violations and duplicate entry ids.
Lexicon parse_lexicon(std::string_view text, std::string name = {});
/// Lemmas in lexicographic order, entries in entry_id order, one line each.
std::string serialize_lexicon(const Lexicon& lex);

struct StatsReport {
  std::size_t lemma_count = 0;
  std::size_t entry_count = 0;
  std::size_t max_entries_per_lemma = 0;
  /// (lemma, entry count), count descending then lemma ascending.
  std::vector<std::pair<std::string, std::size_t>> most_ambiguous;

  bool operator==(const StatsReport&) const = default;
};

StatsReport lexicon_stats(const Lexicon& lex, std::size_t top_k = 10);

}  // namespace lexeval

#endif
