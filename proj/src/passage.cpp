// -*- mode: c++ -*-
#include "lexeval/passage.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <tuple>

#include "lexeval/error.hpp"
#include "text.hpp"

namespace lexeval {

namespace {

constexpr std::string_view kConstituentNames[] = {"GN", "NV", "GA", "GR", "GP", "PV"};
constexpr std::string_view kRelationNames[] = {"SUJ-V", "AUX-V", "COD-V", "CPL-V", "MOD-V", "COMP",  "ATB-SO",
                                               "MOD-N", "MOD-A", "MOD-R", "MOD-P", "COORD", "APPOS", "JUXT"};

std::size_t abs_diff(std::size_t a, std::size_t b) { return a > b ? a - b : b - a; }

// ---------------------------------------------------------------- markup reader

struct Attribute {
  std::string name;
  std::string value;
};

class MarkupReader {
public:
  explicit MarkupReader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  std::size_t line() const { return line_at(pos_); }
  std::size_t line_at(std::size_t pos) const {
    return 1 + static_cast<std::size_t>(std::count(text_.begin(), text_.begin() + std::min(pos, text_.size()), '\n'));
  }

  [[noreturn]] void fail(const std::string& what) const { throw FormatError(what, line()); }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r'))
      ++pos_;
  }

  /// Skips whitespace, XML declarations and comments.
  void skip_misc() {
    while (true) {
      skip_ws();
      if (lookahead("<?")) {
        skip_past("?>");
      } else if (lookahead("<!--")) {
        skip_past("-->");
      } else {
        return;
      }
    }
  }

  bool lookahead(std::string_view s) const { return text_.substr(pos_).starts_with(s); }

  void expect(std::string_view s) {
    if (!lookahead(s)) fail("expected '" + std::string(s) + "'");
    pos_ += s.size();
  }

  /// Reads `<Name attr="v" ...` and returns Name; leaves the cursor before `>` or `/>`.
  std::string open_tag() {
    expect("<");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected element name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::vector<Attribute> attributes() {
    std::vector<Attribute> out;
    while (true) {
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated tag");
      if (text_[pos_] == '>' || text_[pos_] == '/') return out;
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      if (pos_ == start) fail("malformed attribute");
      Attribute a{std::string(text_.substr(start, pos_ - start)), {}};
      skip_ws();
      expect("=");
      skip_ws();
      expect("\"");
      const std::size_t close = text_.find('"', pos_);
      if (close == std::string_view::npos) fail("unterminated attribute value");
      a.value = unescape(text_.substr(pos_, close - pos_));
      pos_ = close + 1;
      out.push_back(std::move(a));
    }
  }

  /// Text up to the next '<', entity-decoded.
  std::string text_content() {
    const std::size_t close = text_.find('<', pos_);
    if (close == std::string_view::npos) fail("unterminated element text");
    auto raw = text_.substr(pos_, close - pos_);
    pos_ = close;
    return unescape(raw);
  }

  std::string unescape(std::string_view raw) const {
    std::string out;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] == '<') fail("unexpected '<'");
      if (raw[i] != '&') {
        out += raw[i];
        continue;
      }
      const std::size_t semi = raw.find(';', i);
      if (semi == std::string_view::npos) fail("unterminated entity");
      const auto ent = raw.substr(i, semi - i + 1);
      if (ent == "&lt;") out += '<';
      else if (ent == "&gt;") out += '>';
      else if (ent == "&amp;") out += '&';
      else if (ent == "&quot;") out += '"';
      else if (ent == "&apos;") out += '\'';
      else fail("unknown entity '" + std::string(ent) + "'");
      i = semi;
    }
    return out;
  }

private:
  void skip_past(std::string_view s) {
    const std::size_t p = text_.find(s, pos_);
    if (p == std::string_view::npos) fail("unterminated '" + std::string(text_.substr(pos_, 4)) + "'");
    pos_ = p + s.size();
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

const std::string& attr(const MarkupReader& r, const std::vector<Attribute>& attrs, std::string_view name) {
  for (const auto& a : attrs)
    if (a.name == name) return a.value;
  r.fail("missing attribute '" + std::string(name) + "'");
}

void only_attrs(const MarkupReader& r, const std::vector<Attribute>& attrs, std::initializer_list<std::string_view> allowed) {
  for (const auto& a : attrs)
    if (std::find(allowed.begin(), allowed.end(), a.name) == allowed.end())
      r.fail("unexpected attribute '" + a.name + "'");
}

std::size_t index_attr(const MarkupReader& r, const std::vector<Attribute>& attrs, std::string_view name) {
  const auto v = text::parse_int(attr(r, attrs, name));
  if (!v || *v < 0) r.fail("attribute '" + std::string(name) + "' must be a non-negative integer");
  return static_cast<std::size_t>(*v);
}

void close_empty(MarkupReader& r) {
  r.skip_ws();
  r.expect("/>");
}

}  // namespace

std::string_view to_string(ConstituentType t) noexcept { return kConstituentNames[static_cast<std::size_t>(t)]; }
std::string_view to_string(RelationType t) noexcept { return kRelationNames[static_cast<std::size_t>(t)]; }

std::optional<ConstituentType> parse_constituent_type(std::string_view token) noexcept {
  for (std::size_t i = 0; i < kConstituentTypeCount; ++i)
    if (kConstituentNames[i] == token) return static_cast<ConstituentType>(i);
  return std::nullopt;
}

std::optional<RelationType> parse_relation_type(std::string_view token) noexcept {
  for (std::size_t i = 0; i < kRelationTypeCount; ++i)
    if (kRelationNames[i] == token) return static_cast<RelationType>(i);
  return std::nullopt;
}

std::string_view to_string(RelaxationMode m) noexcept {
  switch (m) {
    case RelaxationMode::Exact: return "exact";
    case RelaxationMode::Left: return "left";
    case RelaxationMode::Overlap: return "overlap";
  }
  return {};
}

std::optional<RelaxationMode> parse_relaxation_mode(std::string_view token) noexcept {
  if (token == "exact") return RelaxationMode::Exact;
  if (token == "left") return RelaxationMode::Left;
  if (token == "overlap") return RelaxationMode::Overlap;
  return std::nullopt;
}

void validate_annotation(const SentenceAnnotation& s) {
  const std::size_t n = s.tokens.size();
  for (const auto& c : s.constituents)
    if (c.start >= c.end || c.end > n)
      throw InvariantError("sentence " + s.sentence_id + ": constituent span [" + std::to_string(c.start) + "," +
                           std::to_string(c.end) + ") invalid for " + std::to_string(n) + " tokens");
  for (const auto& r : s.relations) {
    if (r.source >= n || r.target >= n)
      throw InvariantError("sentence " + s.sentence_id + ": relation index out of range");
    if (r.source == r.target) throw InvariantError("sentence " + s.sentence_id + ": relation source equals target");
  }
}

std::vector<SentenceAnnotation> parse_passage(std::string_view text) {
  std::vector<SentenceAnnotation> out;
  MarkupReader r(text);
  r.skip_misc();
  while (!r.at_end()) {
    const std::size_t sentence_line = r.line();
    if (r.open_tag() != "S") r.fail("expected <S>");
    const auto s_attrs = r.attributes();
    only_attrs(r, s_attrs, {"id", "full"});
    r.expect(">");

    SentenceAnnotation s;
    s.sentence_id = attr(r, s_attrs, "id");
    if (s.sentence_id.empty()) r.fail("empty sentence id");
    for (const auto& a : s_attrs) {
      if (a.name != "full") continue;
      if (a.value == "yes") s.full_parse = true;
      else if (a.value == "no") s.full_parse = false;
      else r.fail("full must be yes or no");
    }

    while (true) {
      r.skip_misc();
      if (r.lookahead("</S")) {
        r.expect("</S");
        r.skip_ws();
        r.expect(">");
        break;
      }
      const std::string tag = r.open_tag();
      const auto attrs = r.attributes();
      if (tag == "W") {
        only_attrs(r, attrs, {"ix"});
        if (index_attr(r, attrs, "ix") != s.tokens.size())
          r.fail("token index must be " + std::to_string(s.tokens.size()));
        r.expect(">");
        s.tokens.push_back(r.text_content());
        r.expect("</W>");
      } else if (tag == "G") {
        only_attrs(r, attrs, {"type", "start", "end"});
        const auto type = parse_constituent_type(attr(r, attrs, "type"));
        if (!type) r.fail("unknown constituent type '" + attr(r, attrs, "type") + "'");
        s.constituents.push_back({*type, index_attr(r, attrs, "start"), index_attr(r, attrs, "end")});
        close_empty(r);
      } else if (tag == "R") {
        only_attrs(r, attrs, {"type", "src", "tgt"});
        const auto type = parse_relation_type(attr(r, attrs, "type"));
        if (!type) r.fail("unknown relation type '" + attr(r, attrs, "type") + "'");
        s.relations.push_back({*type, index_attr(r, attrs, "src"), index_attr(r, attrs, "tgt")});
        close_empty(r);
      } else {
        r.fail("unexpected element <" + tag + ">");
      }
    }

    try {
      validate_annotation(s);
    } catch (const InvariantError& err) {
      throw FormatError(err.what(), sentence_line);
    }
    out.push_back(std::move(s));
    r.skip_misc();
  }
  return out;
}

std::string serialize_passage(const std::vector<SentenceAnnotation>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    out += "<S id=\"" + escape(s.sentence_id) + "\" full=\"" + (s.full_parse ? "yes" : "no") + "\">\n";
    for (std::size_t i = 0; i < s.tokens.size(); ++i)
      out += "  <W ix=\"" + std::to_string(i) + "\">" + escape(s.tokens[i]) + "</W>\n";
    for (const auto& c : s.constituents)
      out += "  <G type=\"" + std::string(to_string(c.type)) + "\" start=\"" + std::to_string(c.start) + "\" end=\"" +
             std::to_string(c.end) + "\"/>\n";
    for (const auto& rel : s.relations)
      out += "  <R type=\"" + std::string(to_string(rel.type)) + "\" src=\"" + std::to_string(rel.source) +
             "\" tgt=\"" + std::to_string(rel.target) + "\"/>\n";
    out += "</S>\n";
  }
  return out;
}

// ---------------------------------------------------------------- matching

bool spans_compatible(const Constituent& gold, const Constituent& hyp, RelaxationMode mode) noexcept {
  switch (mode) {
    case RelaxationMode::Exact: return gold.start == hyp.start && gold.end == hyp.end;
    case RelaxationMode::Left: return gold.start == hyp.start;
    case RelaxationMode::Overlap: return std::max(gold.start, hyp.start) < std::min(gold.end, hyp.end);
  }
  return false;
}

Counts ConstituentAlignment::total() const {
  Counts c;
  for (const auto& t : by_type) c += t;
  return c;
}

Counts RelationAlignment::total() const {
  Counts c;
  for (const auto& t : by_type) c += t;
  return c;
}

namespace {

void require_same_sentence(const SentenceAnnotation& gold, const SentenceAnnotation& hyp) {
  if (gold.sentence_id != hyp.sentence_id)
    throw InvariantError("sentence mismatch: " + gold.sentence_id + " / " + hyp.sentence_id);
  if (gold.tokens.size() != hyp.tokens.size())
    throw InvariantError("token count mismatch in sentence " + gold.sentence_id);
}

}  // namespace

ConstituentAlignment match_constituents(const SentenceAnnotation& gold, const SentenceAnnotation& hyp,
                                        RelaxationMode mode) {
  require_same_sentence(gold, hyp);
  ConstituentAlignment out;
  for (const auto& c : gold.constituents) ++out.by_type[static_cast<std::size_t>(c.type)].gold;
  for (const auto& c : hyp.constituents) ++out.by_type[static_cast<std::size_t>(c.type)].hyp;

  std::vector<std::size_t> order(gold.constituents.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& x = gold.constituents[a];
    const auto& y = gold.constituents[b];
    return std::tie(x.start, x.end) < std::tie(y.start, y.end);
  });

  std::vector<bool> used(hyp.constituents.size(), false);
  for (std::size_t gi : order) {
    const auto& g = gold.constituents[gi];
    std::size_t best = hyp.constituents.size();
    std::size_t best_cost = 0;
    for (std::size_t hi = 0; hi < hyp.constituents.size(); ++hi) {
      const auto& h = hyp.constituents[hi];
      if (used[hi] || h.type != g.type || !spans_compatible(g, h, mode)) continue;
      const std::size_t cost = abs_diff(g.start, h.start) + abs_diff(g.end, h.end);
      if (best == hyp.constituents.size() || cost < best_cost) {
        best = hi;
        best_cost = cost;
      }
    }
    if (best < hyp.constituents.size()) {
      used[best] = true;
      ++out.by_type[static_cast<std::size_t>(g.type)].tp;
      out.pairs.emplace_back(gi, best);
    }
  }
  return out;
}

RelationAlignment match_relations(const SentenceAnnotation& gold, const SentenceAnnotation& hyp) {
  require_same_sentence(gold, hyp);
  RelationAlignment out;
  for (const auto& r : gold.relations) ++out.by_type[static_cast<std::size_t>(r.type)].gold;
  for (const auto& r : hyp.relations) ++out.by_type[static_cast<std::size_t>(r.type)].hyp;

  std::vector<bool> used(hyp.relations.size(), false);
  for (const auto& g : gold.relations) {
    for (std::size_t hi = 0; hi < hyp.relations.size(); ++hi) {
      if (!used[hi] && hyp.relations[hi] == g) {
        used[hi] = true;
        ++out.by_type[static_cast<std::size_t>(g.type)].tp;
        break;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------- scoring

Score make_score(const Counts& c) {
  Score s;
  s.counts = c;
  s.precision = c.hyp == 0 ? Rational(1) : Rational(c.tp, c.hyp);
  s.recall = c.gold == 0 ? Rational(1) : Rational(c.tp, c.gold);
  const Rational sum = s.precision + s.recall;
  s.f_measure = sum.numerator() == 0 ? Rational(0) : Rational(2) * s.precision * s.recall / sum;
  return s;
}

EvalScores score_corpus(const std::vector<SentenceAnnotation>& gold, const std::vector<SentenceAnnotation>& hyp,
                        RelaxationMode mode) {
  if (gold.size() != hyp.size())
    throw InvariantError("sentence count mismatch: " + std::to_string(gold.size()) + " gold / " +
                         std::to_string(hyp.size()) + " hyp");

  std::array<Counts, kConstituentTypeCount> constituents{};
  std::array<Counts, kRelationTypeCount> relations{};
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto ca = match_constituents(gold[i], hyp[i], mode);
    const auto ra = match_relations(gold[i], hyp[i]);
    for (std::size_t t = 0; t < kConstituentTypeCount; ++t) constituents[t] += ca.by_type[t];
    for (std::size_t t = 0; t < kRelationTypeCount; ++t) relations[t] += ra.by_type[t];
  }

  EvalScores out;
  Counts all_c, all_r;
  for (std::size_t t = 0; t < kConstituentTypeCount; ++t) {
    out.by_constituent[t] = make_score(constituents[t]);
    all_c += constituents[t];
  }
  for (std::size_t t = 0; t < kRelationTypeCount; ++t) {
    out.by_relation[t] = make_score(relations[t]);
    all_r += relations[t];
  }
  out.constituents = make_score(all_c);
  out.relations = make_score(all_r);
  return out;
}

}  // namespace lexeval
