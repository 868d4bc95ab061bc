#include <doctest.h>

#include <set>

#include "lexeval/error.hpp"
#include "lexeval/merge.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace lexeval;
using SF = SyntacticFunction;

namespace {

LexicalEntry make(const std::string& id, std::initializer_list<SF> functions, const std::string& lemma = "l") {
  LexicalEntry e;
  e.lemma = lemma;
  e.entry_id = id;
  e.redistributions = {Redistribution::Active};
  e.provenance = {{"src", id}};
  for (auto f : functions) e.frame.push_back({f, {Realization::np()}, false});
  return e;
}

}  // namespace

TEST_CASE("entry_matches") {
  auto d = entry_matches(make("r", {SF::Suj, SF::Obj}), make("o", {SF::Suj, SF::Obj, SF::Loc}));
  CHECK(d.matched);
  CHECK(d.reason == MatchReason::Matched);
  CHECK(d.ref_entry_id == "r");
  CHECK(d.other_entry_id == "o");

  d = entry_matches(make("r", {SF::Suj, SF::Obj}), make("o", {SF::Suj, SF::Obja}));
  CHECK_FALSE(d.matched);
  CHECK(d.reason == MatchReason::BaseMismatch);

  d = entry_matches(make("r", {SF::Suj, SF::Loc}), make("o", {SF::Suj, SF::Dloc}));
  CHECK(d.reason == MatchReason::ObliqueNotIncluded);

  // both conditions fail: base mismatch wins
  d = entry_matches(make("r", {SF::Suj, SF::Loc}), make("o", {SF::Obj, SF::Dloc}));
  CHECK(d.reason == MatchReason::BaseMismatch);
}

TEST_CASE("entry_matches is directional exactly on strict oblique inclusion") {
  const auto small = make("a", {SF::Suj, SF::Loc});
  const auto big = make("b", {SF::Suj, SF::Loc, SF::Dloc});
  CHECK(entry_matches(small, big).matched);
  CHECK_FALSE(entry_matches(big, small).matched);

  const auto same = make("c", {SF::Suj, SF::Dloc, SF::Loc});
  CHECK(entry_matches(big, same).matched);
  CHECK(entry_matches(same, big).matched);
}

TEST_CASE("entry_matches preconditions") {
  CHECK_THROWS_AS(entry_matches(make("a", {}, "x"), make("b", {}, "y")), InvariantError);
  auto n = make("b", {});
  n.category = Category::NPred;
  CHECK_THROWS_AS(entry_matches(make("a", {}), n), InvariantError);
}

TEST_CASE("merge_lemma count examples") {
  const auto e = make("o1", {SF::Suj});
  auto r = merge_lemma({}, {e});
  CHECK(r.entries.size() == 1);
  CHECK(r.entries[0] == e);
  CHECK((r.ref_count == 0 && r.other_count == 1 && r.merged_count == 1));
  CHECK_FALSE(r.needs_validation);

  r = merge_lemma({make("r1", {SF::Suj, SF::Obj})}, {make("o1", {SF::Suj, SF::Obj})});
  CHECK((r.ref_count == 1 && r.other_count == 1 && r.merged_count == 1));
  CHECK_FALSE(r.needs_validation);

  r = merge_lemma({make("r1", {SF::Suj, SF::Obj})}, {make("o1", {SF::Suj, SF::Obja})});
  CHECK((r.ref_count == 1 && r.other_count == 1 && r.merged_count == 2));
  CHECK(r.needs_validation);
}

TEST_CASE("merge_lemma pairs one-to-one in ref order") {
  // r1 and r2 both match o1 and o2; r1 takes o1, r2 takes o2
  const std::vector<LexicalEntry> ref = {make("r1", {SF::Suj}), make("r2", {SF::Suj})};
  const std::vector<LexicalEntry> other = {make("o1", {SF::Suj, SF::Loc}), make("o2", {SF::Suj})};
  const auto r = merge_lemma(ref, other);
  CHECK(r.merged_count == 2);
  REQUIRE(r.origins.size() == 2);
  CHECK(r.origins[0] == std::vector<EntryOrigin>{{Side::Ref, "r1"}, {Side::Other, "o1"}});
  CHECK(r.origins[1] == std::vector<EntryOrigin>{{Side::Ref, "r2"}, {Side::Other, "o2"}});

  // one ref, two matching others: the second one is copied
  const auto r2 = merge_lemma({make("r1", {SF::Suj})}, other);
  CHECK(r2.merged_count == 2);
  CHECK_FALSE(r2.needs_validation);
}

TEST_CASE("categories never pair") {
  auto n = make("o1", {SF::Suj});
  n.category = Category::NPred;
  const auto r = merge_lemma({make("r1", {SF::Suj})}, {n});
  CHECK(r.merged_count == 2);
  CHECK(r.needs_validation);
}

TEST_CASE("merge_lemma rejects mixed lemmas") {
  CHECK_THROWS_AS(merge_lemma({make("a", {}, "x")}, {make("b", {}, "y")}), InvariantError);
  CHECK_THROWS_AS(merge_lemma({make("a", {}, "x"), make("b", {}, "y")}, {}), InvariantError);
}

TEST_CASE("fused entry content") {
  LexicalEntry ref = make("lefff_1", {SF::Suj, SF::Obj});
  ref.frame[1].optional = true;
  ref.frame[1].realizations.insert(Realization::clitic());
  ref.redistributions.insert(Redistribution::Passive);
  ref.examples = {"ex1"};
  ref.provenance = {{"lefff", "1380"}};

  LexicalEntry other = make("dv_7", {SF::Suj, SF::Obj, SF::Loc});
  other.frame[0].realizations = {Realization::clitic()};
  other.redistributions.insert(Redistribution::SeMiddle);
  other.examples = {"ex1", "ex2"};
  other.provenance = {{"dicovalence", "7"}};

  const auto f = fuse_entries(ref, other);
  CHECK(f.entry_id == "lefff_1");
  REQUIRE(f.frame.size() == 3);
  CHECK(f.frame[0].realizations == std::set<Realization>{Realization::np(), Realization::clitic()});
  CHECK(f.frame[1].optional);
  CHECK(f.frame[1].realizations.contains(Realization::clitic()));
  CHECK(f.frame[2].function == SF::Loc);
  CHECK(f.redistributions ==
        RedistributionSet{Redistribution::Active, Redistribution::Passive, Redistribution::SeMiddle});
  CHECK(f.examples == std::vector<std::string>{"ex1", "ex2"});
  CHECK(f.provenance == std::vector<Provenance>{{"lefff", "1380"}, {"dicovalence", "7"}});
  CHECK_NOTHROW(validate_entry(f));
}

TEST_CASE("merge_lexicons basics") {
  Lexicon a("a"), b("b");
  a.add(make("x1", {SF::Suj}, "x"));
  b.add(make("y1", {SF::Suj}, "y"));
  const auto [merged, report] = merge_lexicons(a, b);
  CHECK(merged.lemma_count() == 2);
  CHECK(report.totals.flagged_lemmas == 0);
  CHECK(validation_queue(report).empty());
  CHECK(merged.name() == "a+b");
}

TEST_CASE("merging a lexicon with itself doubles provenance only") {
  testgen::Rng rng(5);
  const auto lex = testgen::random_lexicon(rng, 60, "lefff");
  const auto [merged, report] = merge_lexicons(lex, lex);
  CHECK(report.totals.flagged_lemmas == 0);
  CHECK(merged.entry_count() == lex.entry_count());
  for (const auto& [lemma, entries] : lex.lemmas()) {
    const auto* m = merged.find(lemma);
    REQUIRE(m);
    REQUIRE(m->size() == entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) {
      auto expected = entries[i];
      expected.provenance.insert(expected.provenance.end(), entries[i].provenance.begin(), entries[i].provenance.end());
      CHECK((*m)[i] == expected);
    }
  }
}

TEST_CASE("merging with an empty lexicon returns the reference") {
  testgen::Rng rng(6);
  const auto lex = testgen::random_lexicon(rng, 40, "lefff");
  const auto [merged, report] = merge_lexicons(lex, Lexicon("empty"));
  CHECK(merged == lex);
  CHECK(report.totals.flagged_lemmas == 0);
}

TEST_CASE("colliding ids of copied entries are renamed") {
  Lexicon a("lefff"), b("dv");
  a.add(make("x__1", {SF::Suj}, "x"));
  b.add(make("x__1", {SF::Obj}, "x"));
  const auto [merged, report] = merge_lexicons(a, b);
  CHECK(merged.contains_id("x__1"));
  CHECK(merged.contains_id("x__1+dv"));
  CHECK(report.lemmas[0].entries[1].entry_id == "x__1+dv");
  CHECK(report.lemmas[0].origins[1].front().entry_id == "x__1");
}

TEST_CASE("validation_queue ordering") {
  MergeReport report;
  auto add = [&](std::string lemma, std::size_t merged, bool flag) {
    MergedLemmaResult r;
    r.lemma = std::move(lemma);
    r.merged_count = merged;
    r.needs_validation = flag;
    report.lemmas.push_back(r);
  };
  add("x", 3, true);
  add("y", 5, true);
  add("z", 9, false);
  add("w", 3, true);
  CHECK(validation_queue(report) == std::vector<std::string>{"y", "w", "x"});
  CHECK(validation_queue(MergeReport{}).empty());
}

TEST_CASE("random merges: bounds, flag, totals, queue and origins (property)") {
  testgen::Rng rng(77);
  for (int round = 0; round < 40; ++round) {
    const auto ref = testgen::random_lexicon(rng, 60, "ref", 30);
    const auto other = testgen::random_lexicon(rng, 60, "other", 30);
    const auto [merged, report] = merge_lexicons(ref, other);
    CHECK(report.totals == recompute_totals(report.lemmas));
    CHECK(merged.entry_count() == report.totals.entries);

    std::set<std::string> expected_queue;
    std::multiset<std::pair<int, std::string>> ref_seen, other_seen;
    for (const auto& l : report.lemmas) {
      CHECK(std::max(l.ref_count, l.other_count) <= l.merged_count);
      CHECK(l.merged_count <= l.ref_count + l.other_count);
      CHECK(l.needs_validation == (l.merged_count > std::max(l.ref_count, l.other_count)));
      if (l.needs_validation) expected_queue.insert(l.lemma);
      for (const auto& origins : l.origins)
        for (const auto& o : origins) (o.side == Side::Ref ? ref_seen : other_seen).insert({0, o.entry_id});
    }
    const auto queue = validation_queue(report);
    CHECK(std::set<std::string>(queue.begin(), queue.end()) == expected_queue);
    // every source entry id lands in exactly one merged entry
    CHECK(ref_seen.size() == ref.entry_count());
    CHECK(other_seen.size() == other.entry_count());
    for (const auto& [lemma, entries] : ref.lemmas())
      for (const auto& e : entries) CHECK(ref_seen.count({0, e.entry_id}) == 1);
    for (const auto& [lemma, entries] : other.lemmas())
      for (const auto& e : entries) CHECK(other_seen.count({0, e.entry_id}) == 1);
  }
}

TEST_CASE("merge_lemma agrees with the exhaustive pairing oracle") {
  testgen::Rng rng(88);
  testgen::EntryShape shape;
  shape.universe = {SF::Suj, SF::Obj, SF::Loc, SF::Dloc};
  shape.slot_probability = 0.5;
  for (int round = 0; round < 2000; ++round) {
    std::vector<LexicalEntry> ref, other;
    const auto nr = testgen::uniform(rng, 0, 4), no = testgen::uniform(rng, 0, 4);
    for (std::size_t i = 0; i < nr; ++i) ref.push_back(testgen::random_entry(rng, "l", "r" + std::to_string(i), shape));
    for (std::size_t i = 0; i < no; ++i) other.push_back(testgen::random_entry(rng, "l", "o" + std::to_string(i), shape));
    CHECK(merge_lemma(ref, other).merged_count == oracle::merged_count(ref, other));
  }
}

TEST_CASE("merge report format") {
  MergeReport report;
  MergedLemmaResult r;
  r.lemma = "tenir";
  r.ref_count = 2;
  r.other_count = 3;
  r.merged_count = 4;
  r.needs_validation = true;
  report.lemmas.push_back(r);
  report.totals = recompute_totals(report.lemmas);
  CHECK(format_merge_report(report) ==
        "#lemma\tref_count\tother_count\tmerged_count\tflag\n"
        "tenir\t2\t3\t4\tvalidate\n"
        "#TOTALS\tlemmas=1\tentries=4\tflagged_lemmas=1\tflagged_entries=4\n");
}
