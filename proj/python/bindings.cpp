#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "lexeval/cli.hpp"
#include "lexeval/coverage.hpp"
#include "lexeval/error.hpp"
#include "lexeval/error_miner.hpp"
#include "lexeval/frame_checker.hpp"
#include "lexeval/frequency.hpp"
#include "lexeval/lexicon.hpp"
#include "lexeval/merge.hpp"
#include "lexeval/passage.hpp"

namespace py = pybind11;
using namespace lexeval;

namespace {

std::string frame_string(const LexicalEntry& e) {
  // the frame column of the interchange line
  const auto line = format_entry_line(e);
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) pos = line.find('\t', pos) + 1;
  return line.substr(pos, line.find('\t', pos) - pos);
}

std::vector<std::string> names(const RedistributionSet& s) {
  std::vector<std::string> out;
  for (auto r : s) out.emplace_back(to_string(r));
  return out;
}

py::dict score_dict(const Score& s) {
  py::dict d;
  d["tp"] = s.counts.tp;
  d["gold"] = s.counts.gold;
  d["hyp"] = s.counts.hyp;
  d["precision"] = to_double(s.precision);
  d["recall"] = to_double(s.recall);
  d["f_measure"] = to_double(s.f_measure);
  d["f_percent"] = format_percent(s.f_measure);
  return d;
}

RelaxationMode mode_of(const std::string& name) {
  const auto m = parse_relaxation_mode(name);
  if (!m) throw InvariantError("unknown mode: " + name);
  return *m;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Valence lexicon merging, coverage checking, parser evaluation and error mining";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_ValueError);

  py::class_<LexicalEntry>(m, "LexicalEntry")
      .def_readonly("lemma", &LexicalEntry::lemma)
      .def_readonly("entry_id", &LexicalEntry::entry_id)
      .def_readonly("coded", &LexicalEntry::coded)
      .def_readonly("examples", &LexicalEntry::examples)
      .def_property_readonly("category", [](const LexicalEntry& e) { return std::string(to_string(e.category)); })
      .def_property_readonly("frame", &frame_string)
      .def_property_readonly("redistributions", [](const LexicalEntry& e) { return names(e.redistributions); })
      .def_property_readonly("provenance",
                             [](const LexicalEntry& e) {
                               std::vector<std::pair<std::string, std::string>> out;
                               for (const auto& p : e.provenance) out.emplace_back(p.source, p.id);
                               return out;
                             })
      .def("__str__", &format_entry_line)
      .def("__repr__", [](const LexicalEntry& e) { return "<LexicalEntry " + e.entry_id + ">"; });

  py::class_<Lexicon>(m, "Lexicon")
      .def_static("parse", &parse_lexicon, py::arg("text"), py::arg("name") = "")
      .def("serialize", &serialize_lexicon)
      .def_property_readonly("name", &Lexicon::name)
      .def_property_readonly("lemma_count", &Lexicon::lemma_count)
      .def_property_readonly("entry_count", &Lexicon::entry_count)
      .def("entries",
           [](const Lexicon& lex, const std::string& lemma) {
             const auto* list = lex.find(lemma);
             return list ? *list : Lexicon::EntryList{};
           })
      .def("lemmas",
           [](const Lexicon& lex) {
             std::vector<std::string> out;
             for (const auto& [lemma, entries] : lex.lemmas()) out.push_back(lemma);
             return out;
           })
      .def("stats",
           [](const Lexicon& lex, std::size_t top_k) {
             const auto s = lexicon_stats(lex, top_k);
             py::dict d;
             d["lemmas"] = s.lemma_count;
             d["entries"] = s.entry_count;
             d["max_entries_per_lemma"] = s.max_entries_per_lemma;
             d["most_ambiguous"] = s.most_ambiguous;
             return d;
           },
           py::arg("top_k") = 10)
      .def("__eq__", [](const Lexicon& a, const Lexicon& b) { return a == b; })
      .def("__len__", &Lexicon::entry_count);

  m.def(
      "merge",
      [](const Lexicon& ref, const Lexicon& other) {
        auto [merged, report] = merge_lexicons(ref, other);
        py::dict d;
        d["lexicon"] = std::move(merged);
        d["report"] = format_merge_report(report);
        d["queue"] = validation_queue(report);
        d["flagged_lemmas"] = report.totals.flagged_lemmas;
        return d;
      },
      py::arg("ref"), py::arg("other"), "Fuse two lexicons; returns the merged lexicon, report and validation queue.");

  m.def(
      "check",
      [](const Lexicon& lex, const std::string& corpus_text) {
        const auto corpus = parse_corpus(corpus_text);
        const auto diag = diagnose_corpus(lex, corpus);
        const auto cov = coverage(diag.records);
        py::dict hist;
        for (auto r : kAllFailureReasons) {
          const auto it = diag.histogram.find(r);
          hist[py::str(std::string(to_string(r)))] = it == diag.histogram.end() ? 0 : it->second;
        }
        py::dict d;
        d["covered"] = cov.covered;
        d["total"] = cov.total;
        d["coverage"] = cov.percent();
        d["histogram"] = hist;
        d["records"] = serialize_records(diag.records);
        return d;
      },
      py::arg("lexicon"), py::arg("corpus"), "Analyzability of an annotated frame corpus under a lexicon.");

  m.def(
      "mine",
      [](const std::string& ref_records, const std::string& hyp_records, double epsilon, std::size_t max_iter,
         std::size_t top_k) {
        const auto corpus = build_mining_corpus(parse_records(ref_records), parse_records(hyp_records));
        const auto res = compute_suspicion(corpus, {epsilon, max_iter});
        py::list out;
        for (const auto& s : rank_suspects(res.scores, top_k)) {
          py::dict d;
          d["form"] = s.form;
          d["score"] = s.score;
          d["occurrences"] = s.occurrences;
          d["failed_sentences"] = s.failed_sentences;
          d["sample_sentence_id"] = s.sample_sentence_id;
          out.append(d);
        }
        return py::make_tuple(out, res.iterations, res.converged);
      },
      py::arg("ref_records"), py::arg("hyp_records"), py::arg("epsilon") = 1e-9, py::arg("max_iter") = 200,
      py::arg("top_k") = 15, "Rank suspicious forms from two check runs' record files.");

  m.def(
      "evaluate",
      [](const std::string& gold_text, const std::string& hyp_text, const std::string& mode) {
        const auto gold = parse_passage(gold_text);
        const auto hyp = parse_passage(hyp_text);
        const auto s = score_corpus(gold, hyp, mode_of(mode));
        py::dict by_c, by_r;
        for (std::size_t t = 0; t < kConstituentTypeCount; ++t)
          by_c[py::str(std::string(to_string(static_cast<ConstituentType>(t))))] = score_dict(s.by_constituent[t]);
        for (std::size_t t = 0; t < kRelationTypeCount; ++t)
          by_r[py::str(std::string(to_string(static_cast<RelationType>(t))))] = score_dict(s.by_relation[t]);
        py::dict d;
        d["constituents"] = score_dict(s.constituents);
        d["relations"] = score_dict(s.relations);
        d["by_constituent"] = by_c;
        d["by_relation"] = by_r;
        d["coverage"] = coverage(hyp).percent();
        return d;
      },
      py::arg("gold"), py::arg("hyp"), py::arg("mode") = "exact", "Score Passage-style hypothesis markup against gold.");

  m.def(
      "top_lemmas",
      [](const std::vector<std::pair<std::string, std::uint64_t>>& counts,
         const std::map<std::string, std::string>& lemma_of, std::size_t n) {
        FrequencyTable t;
        t.counts = counts;
        t.lemma_of.insert(lemma_of.begin(), lemma_of.end());
        const auto r = top_lemmas(t, n);
        return py::make_tuple(r.lemmas, r.unmapped_forms);
      },
      py::arg("counts"), py::arg("lemma_of"), py::arg("n"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit code, stdout, stderr).");
}
