// -*- mode: c++ -*-
//
// Passage-style annotations and the precision / recall / f-measure scorer.
//
//   <S id="s1" full="yes">
//     <W ix="0">Depuis</W> ...
//     <G type="GP" start="0" end="3"/>
//     <R type="SUJ-V" src="5" tgt="11"/>
//   </S>
//
// Constituent spans are half-open token intervals.
//
#ifndef LEXEVAL_PASSAGE_HPP
#define LEXEVAL_PASSAGE_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexeval/rational.hpp"

namespace lexeval {

enum class ConstituentType : std::uint8_t { GN, NV, GA, GR, GP, PV };
inline constexpr std::size_t kConstituentTypeCount = 6;

enum class RelationType : std::uint8_t {
  SujV, AuxV, CodV, CplV, ModV, Comp, AtbSo, ModN, ModA, ModR, ModP, Coord, Appos, Juxt,
};
inline constexpr std::size_t kRelationTypeCount = 14;

std::string_view to_string(ConstituentType t) noexcept;
std::string_view to_string(RelationType t) noexcept;
std::optional<ConstituentType> parse_constituent_type(std::string_view token) noexcept;
std::optional<RelationType> parse_relation_type(std::string_view token) noexcept;

struct Constituent {
  ConstituentType type = ConstituentType::GN;
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive

  bool operator==(const Constituent&) const = default;
};

struct Relation {
  RelationType type = RelationType::SujV;
  std::size_t source = 0;
  std::size_t target = 0;

  bool operator==(const Relation&) const = default;
};

struct SentenceAnnotation {
  std::string sentence_id;
  std::vector<std::string> tokens;
  std::vector<Constituent> constituents;
  std::vector<Relation> relations;
  bool full_parse = true;

  bool operator==(const SentenceAnnotation&) const = default;
};

/// Throws InvariantError on out-of-range indices, empty spans or self relations.
void validate_annotation(const SentenceAnnotation& s);

/// Throws FormatError on malformed markup, bad indices or unknown types.
std::vector<SentenceAnnotation> parse_passage(std::string_view text);
std::string serialize_passage(const std::vector<SentenceAnnotation>& sentences);

enum class RelaxationMode : std::uint8_t { Exact, Left, Overlap };

std::string_view to_string(RelaxationMode m) noexcept;
std::optional<RelaxationMode> parse_relaxation_mode(std::string_view token) noexcept;

/// Whether a gold/hyp span pair is compatible under the mode (types not compared).
bool spans_compatible(const Constituent& gold, const Constituent& hyp, RelaxationMode mode) noexcept;

/// True positives, gold and hypothesis counts of one category.
struct Counts {
  std::int64_t tp = 0;
  std::int64_t gold = 0;
  std::int64_t hyp = 0;

  Counts& operator+=(const Counts& o) {
    tp += o.tp;
    gold += o.gold;
    hyp += o.hyp;
    return *this;
  }
  bool operator==(const Counts&) const = default;
};

struct ConstituentAlignment {
  std::array<Counts, kConstituentTypeCount> by_type{};
  /// (gold index, hyp index) pairs in matching order.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;

  Counts total() const;
};

struct RelationAlignment {
  std::array<Counts, kRelationTypeCount> by_type{};

  Counts total() const;
};

/// Greedy one-to-one matching over gold constituents in (start, end) order;
/// each takes the compatible same-type hyp constituent with the smallest
/// |start diff| + |end diff|, ties by hyp order.
/// Throws InvariantError on differing sentence ids or token counts.
ConstituentAlignment match_constituents(const SentenceAnnotation& gold, const SentenceAnnotation& hyp,
                                        RelaxationMode mode);

/// Exact (type, source, target) matching with multiset semantics.
RelationAlignment match_relations(const SentenceAnnotation& gold, const SentenceAnnotation& hyp);

struct Score {
  Counts counts;
  Rational precision{1};
  Rational recall{1};
  Rational f_measure{1};
};

/// P = tp/hyp, R = tp/gold (1 on 0/0), F = 2PR/(P+R) (0 when P+R = 0).
Score make_score(const Counts& c);

struct EvalScores {
  Score constituents;
  Score relations;
  std::array<Score, kConstituentTypeCount> by_constituent{};
  std::array<Score, kRelationTypeCount> by_relation{};
};

/// Micro-averaged over the corpus. Throws InvariantError unless both lists
/// carry the same sentence id sequence.
EvalScores score_corpus(const std::vector<SentenceAnnotation>& gold, const std::vector<SentenceAnnotation>& hyp,
                        RelaxationMode mode);

}  // namespace lexeval

#endif
