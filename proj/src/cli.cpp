// -*- mode: c++ -*-
#include "lexeval/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "lexeval/coverage.hpp"
#include "lexeval/error.hpp"
#include "lexeval/frame_checker.hpp"
#include "lexeval/frequency.hpp"
#include "lexeval/lexicon.hpp"
#include "lexeval/merge.hpp"

namespace lexeval {

namespace fs = std::filesystem;

std::string RunManifest::header() const {
  std::string h = "# lexeval " + version + "\n# command: " + command + "\n";
  for (const auto& in : inputs) h += "# input: " + in + "\n";
  if (mode) h += "# mode: " + std::string(to_string(*mode)) + "\n";
  if (mining) {
    std::ostringstream eps;
    eps << mining->epsilon;
    h += "# epsilon: " + eps.str() + "\n# max-iter: " + std::to_string(mining->max_iterations) + "\n";
  }
  return h;
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

namespace {

/// Parse failure tagged with the offending file.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <typename Fn>
auto load(const std::string& path, Fn&& parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const FormatError& e) {
    if (e.line()) {
      // FormatError already prefixes "line N: "; rewrite as file:N:
      std::string msg = e.what();
      const std::string prefix = "line " + std::to_string(e.line()) + ": ";
      if (msg.starts_with(prefix)) msg = msg.substr(prefix.size());
      throw InputError(path + ":" + std::to_string(e.line()) + ": " + msg);
    }
    throw InputError(path + ": " + e.what());
  } catch (const InvariantError& e) {
    throw InputError(path + ": " + e.what());
  }
}

class Output {
public:
  Output(std::optional<std::string> dir, std::ostream& out) : dir_(std::move(dir)), out_(out) {
    if (dir_) fs::create_directories(*dir_);
  }

  bool to_dir() const { return dir_.has_value(); }

  void emit(const std::string& name, const std::string& content) {
    if (dir_)
      write_file_atomic(fs::path(*dir_) / name, content);
    else
      out_ << content;
  }

private:
  std::optional<std::string> dir_;
  std::ostream& out_;
};

std::string pct(const Rational& r) { return format_percent(r); }

// ---------------------------------------------------------------- subcommands

int cmd_lex_parse(const std::string& file, const std::optional<std::string>& out_dir, std::ostream& out,
                  std::ostream& err) {
  const Lexicon lex = load(file, [](const std::string& t) { return parse_lexicon(t); });
  const RunManifest m{"lex parse", {file}};
  Output(out_dir, out).emit("lexicon.txt", m.header() + serialize_lexicon(lex));
  err << file << ": " << lex.lemma_count() << " lemmas, " << lex.entry_count() << " entries\n";
  return 0;
}

int cmd_lex_stats(const std::string& file, std::size_t top_k, const std::optional<std::string>& out_dir,
                  std::ostream& out) {
  const Lexicon lex = load(file, [](const std::string& t) { return parse_lexicon(t); });
  const auto stats = lexicon_stats(lex, top_k);
  std::string body = "lemmas\t" + std::to_string(stats.lemma_count) + "\nentries\t" +
                     std::to_string(stats.entry_count) + "\nmax_entries_per_lemma\t" +
                     std::to_string(stats.max_entries_per_lemma) + "\n#rank\tlemma\tentries\n";
  for (std::size_t i = 0; i < stats.most_ambiguous.size(); ++i)
    body += std::to_string(i + 1) + '\t' + stats.most_ambiguous[i].first + '\t' +
            std::to_string(stats.most_ambiguous[i].second) + '\n';
  const RunManifest m{"lex stats", {file}};
  Output(out_dir, out).emit("stats.tsv", m.header() + body);
  return 0;
}

int cmd_merge(const std::string& ref_file, const std::string& other_file, const std::string& ref_name,
              const std::string& other_name, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  const Lexicon ref = load(ref_file, [&](const std::string& t) { return parse_lexicon(t, ref_name); });
  const Lexicon other = load(other_file, [&](const std::string& t) { return parse_lexicon(t, other_name); });
  const auto [merged, report] = merge_lexicons(ref, other);
  const RunManifest m{"merge", {ref_file, other_file}};
  Output o(out_dir, out);
  o.emit("merged.lex", m.header() + serialize_lexicon(merged));
  o.emit("merge_report.tsv", m.header() + format_merge_report(report));
  std::string queue;
  for (const auto& lemma : validation_queue(report)) queue += lemma + '\n';
  o.emit("validation_queue.txt", m.header() + queue);
  err << "merged " << report.totals.lemmas << " lemmas into " << report.totals.entries << " entries, "
      << report.totals.flagged_lemmas << " lemmas flagged for validation\n";
  return 0;
}

int cmd_check(const std::string& lex_file, const std::string& corpus_file, const std::string& out_dir,
              std::ostream& out, std::ostream& err) {
  const Lexicon lex = load(lex_file, [](const std::string& t) { return parse_lexicon(t); });
  const auto corpus = load(corpus_file, [](const std::string& t) { return parse_corpus(t); });
  if (corpus.empty()) throw InputError(corpus_file + ": empty corpus");
  const auto diag = diagnose_corpus(lex, corpus);
  const RunManifest m{"check", {lex_file, corpus_file}};

  Output o(out_dir, out);
  o.emit("records.tsv", m.header() + serialize_records(diag.records));

  std::string hist = "#reason\tframes\n";
  for (auto reason : kAllFailureReasons) {
    const auto it = diag.histogram.find(reason);
    hist += std::string(to_string(reason)) + '\t' + std::to_string(it == diag.histogram.end() ? 0 : it->second) + '\n';
  }
  o.emit("histogram.tsv", m.header() + hist);

  std::string verdicts = "#sentence_id\tlemma\tstatus\tdetail\n";
  for (const auto& fd : diag.frames) {
    const auto& frame = corpus[fd.sentence_index].frames[fd.frame_index];
    verdicts += corpus[fd.sentence_index].sentence_id + '\t' + frame.lemma() + '\t';
    if (fd.verdict.analyzable) {
      std::string ids;
      for (const auto& id : fd.verdict.witness_entry_ids) ids += (ids.empty() ? "" : ",") + id;
      verdicts += "ok\t" + ids + '\n';
    } else {
      verdicts += "failed\t" + std::string(to_string(*fd.verdict.failure_reason)) + '\n';
    }
  }
  o.emit("verdicts.tsv", m.header() + verdicts);

  const auto cov = coverage(diag.records);
  o.emit("coverage.tsv", m.header() + "#covered\ttotal\tcoverage_pct\n" + std::to_string(cov.covered) + '\t' +
                             std::to_string(cov.total) + '\t' + cov.percent() + '\n');
  err << "coverage " << cov.covered << "/" << cov.total << " (" << cov.percent() << "%)\n";
  return 0;
}

int cmd_eval(const std::string& gold_file, const std::string& hyp_file, RelaxationMode mode,
             const std::string& label, const std::optional<std::string>& out_dir, std::ostream& out) {
  const auto gold = load(gold_file, [](const std::string& t) { return parse_passage(t); });
  const auto hyp = load(hyp_file, [](const std::string& t) { return parse_passage(t); });
  if (hyp.empty()) throw InputError(hyp_file + ": no sentence");
  EvalScores scores;
  try {
    scores = score_corpus(gold, hyp, mode);
  } catch (const InvariantError& e) {
    throw InputError(gold_file + " / " + hyp_file + ": " + e.what());
  }
  const auto cov = coverage(hyp);
  RunManifest m{"eval", {gold_file, hyp_file}};
  m.mode = mode;

  std::string table = "#label\tcoverage_sentences\tcoverage_pct\tconstituents_f\trelations_f";
  for (std::size_t t = 0; t < kRelationTypeCount; ++t) table += '\t' + std::string(to_string(static_cast<RelationType>(t)));
  table += '\n' + label + '\t' + std::to_string(cov.covered) + '\t' + cov.percent() + '\t' +
           pct(scores.constituents.f_measure) + '\t' + pct(scores.relations.f_measure);
  for (const auto& s : scores.by_relation) table += '\t' + pct(s.f_measure);
  table += '\n';

  Output o(out_dir, out);
  o.emit("eval.tsv", m.header() + table);
  if (o.to_dir()) {
    std::string detail = "#kind\ttype\ttp\tgold\thyp\tprecision\trecall\tf_measure\n";
    auto row = [&](std::string_view kind, std::string_view type, const Score& s) {
      detail += std::string(kind) + '\t' + std::string(type) + '\t' + std::to_string(s.counts.tp) + '\t' +
                std::to_string(s.counts.gold) + '\t' + std::to_string(s.counts.hyp) + '\t' + pct(s.precision) + '\t' +
                pct(s.recall) + '\t' + pct(s.f_measure) + '\n';
    };
    row("constituent", "ALL", scores.constituents);
    for (std::size_t t = 0; t < kConstituentTypeCount; ++t)
      row("constituent", to_string(static_cast<ConstituentType>(t)), scores.by_constituent[t]);
    row("relation", "ALL", scores.relations);
    for (std::size_t t = 0; t < kRelationTypeCount; ++t)
      row("relation", to_string(static_cast<RelationType>(t)), scores.by_relation[t]);
    o.emit("eval_detail.tsv", m.header() + detail);
  }
  return 0;
}

int cmd_mine(const std::optional<std::string>& corpus_file, const std::optional<std::string>& ref_file,
             const std::optional<std::string>& hyp_file, const MiningParams& params, std::size_t top_k,
             const std::optional<std::string>& out_dir, std::ostream& out, std::ostream& err) {
  RunManifest m{"mine", {}};
  m.mining = params;
  MiningCorpus corpus;
  if (corpus_file) {
    m.inputs = {*corpus_file};
    corpus = load(*corpus_file, [](const std::string& t) { return parse_mining_corpus(t); });
  } else {
    m.inputs = {*ref_file, *hyp_file};
    const auto ref = load(*ref_file, [](const std::string& t) { return parse_records(t); });
    const auto hyp = load(*hyp_file, [](const std::string& t) { return parse_records(t); });
    try {
      corpus = build_mining_corpus(ref, hyp);
    } catch (const InvariantError& e) {
      throw InputError(*ref_file + " / " + *hyp_file + ": " + e.what());
    }
  }
  if (corpus.sentences.empty()) throw InputError("mining corpus is empty");

  const auto result = compute_suspicion(corpus, params);
  const auto ranked = rank_suspects(result.scores, top_k);
  Output o(out_dir, out);
  o.emit("suspects.tsv", m.header() + "# iterations: " + std::to_string(result.iterations) +
                             "\n# converged: " + (result.converged ? "yes" : "no") + "\n" + format_suspects(ranked));
  if (o.to_dir() && !corpus_file) o.emit("mining_corpus.tsv", m.header() + serialize_mining_corpus(corpus));
  if (!result.converged) err << "warning: no convergence after " << result.iterations << " iterations\n";
  return 0;
}

int cmd_freq(const std::string& freq_file, const std::string& map_file, std::size_t n,
             const std::optional<std::string>& out_dir, std::ostream& out, std::ostream& err) {
  FrequencyTable table;
  table.counts = load(freq_file, [](const std::string& t) { return parse_frequency_counts(t); });
  table.lemma_of = load(map_file, [](const std::string& t) { return parse_lemma_map(t); });
  const auto ranking = top_lemmas(table, n);
  if (ranking.unmapped_forms) err << "warning: " << ranking.unmapped_forms << " forms without a lemma ignored\n";
  std::string body = "#rank\tlemma\tfrequency\n";
  for (std::size_t i = 0; i < ranking.lemmas.size(); ++i)
    body += std::to_string(i + 1) + '\t' + ranking.lemmas[i].first + '\t' + std::to_string(ranking.lemmas[i].second) + '\n';
  const RunManifest m{"freq", {freq_file, map_file}};
  Output(out_dir, out).emit("top_lemmas.tsv", m.header() + body);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Valence lexicon workbench: merge, coverage check, Passage scoring, error mining"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::optional<std::string> out_dir;

  auto* lex = app.add_subcommand("lex", "Lexicon utilities");
  lex->require_subcommand(1);
  std::string lex_file;
  std::size_t top_k_stats = 10;
  auto* lex_parse = lex->add_subcommand("parse", "Validate a lexicon and emit its canonical form");
  lex_parse->add_option("lexicon", lex_file, "Lexicon file")->required();
  lex_parse->add_option("--out", out_dir, "Output directory");
  auto* lex_stats = lex->add_subcommand("stats", "Lemma/entry counts and most ambiguous lemmas");
  lex_stats->add_option("lexicon", lex_file, "Lexicon file")->required();
  lex_stats->add_option("--top-k", top_k_stats, "Number of ambiguous lemmas listed")->check(CLI::PositiveNumber);
  lex_stats->add_option("--out", out_dir, "Output directory");

  auto* merge = app.add_subcommand("merge", "Merge a reference lexicon with a second lexicon");
  std::string ref_file, other_file, ref_name = "ref", other_name = "other", merge_out;
  merge->add_option("ref", ref_file, "Reference lexicon")->required();
  merge->add_option("other", other_file, "Lexicon merged into the reference")->required();
  merge->add_option("--ref-name", ref_name, "Name of the reference lexicon");
  merge->add_option("--other-name", other_name, "Name of the other lexicon");
  merge->add_option("--out", merge_out, "Output directory")->required();

  auto* check = app.add_subcommand("check", "Decide sentence analyzability against a lexicon");
  std::string check_lex, check_corpus, check_out;
  check->add_option("--lexicon", check_lex, "Lexicon file")->required();
  check->add_option("--corpus", check_corpus, "Annotated corpus file")->required();
  check->add_option("--out", check_out, "Output directory")->required();

  auto* eval = app.add_subcommand("eval", "Score a hypothesis Passage file against gold");
  std::string gold_file, hyp_file, mode_name = "exact", label = "hyp";
  eval->add_option("gold", gold_file, "Gold annotations")->required();
  eval->add_option("hyp", hyp_file, "Hypothesis annotations")->required();
  eval->add_option("--mode", mode_name, "Boundary relaxation")->check(CLI::IsMember({"exact", "left", "overlap"}));
  eval->add_option("--label", label, "Row label in the score table");
  eval->add_option("--out", out_dir, "Output directory");

  auto* mine = app.add_subcommand("mine", "Rank suspicious forms by comparative error mining");
  std::optional<std::string> mine_corpus, mine_ref, mine_hyp;
  MiningParams params;
  std::size_t top_k_mine = 15;
  auto* corpus_opt = mine->add_option("--corpus", mine_corpus, "Mining corpus file");
  auto* ref_opt = mine->add_option("--ref", mine_ref, "Sentence records under the reference lexicon");
  auto* hyp_opt = mine->add_option("--hyp", mine_hyp, "Sentence records under the hypothesis lexicon");
  ref_opt->needs(hyp_opt)->excludes(corpus_opt);
  hyp_opt->needs(ref_opt)->excludes(corpus_opt);
  mine->add_option("--epsilon", params.epsilon, "Convergence threshold")->check(CLI::PositiveNumber);
  mine->add_option("--max-iter", params.max_iterations, "Iteration cap")->check(CLI::PositiveNumber);
  mine->add_option("--top-k", top_k_mine, "Number of suspects reported")->check(CLI::PositiveNumber);
  mine->add_option("--out", out_dir, "Output directory");

  auto* freq = app.add_subcommand("freq", "Most frequent lemmas from a form frequency table");
  std::string freq_file, map_file;
  std::size_t n = 100;
  freq->add_option("frequencies", freq_file, "form<TAB>count file")->required();
  freq->add_option("lemmas", map_file, "form<TAB>lemma file")->required();
  freq->add_option("--n", n, "Number of lemmas")->check(CLI::PositiveNumber);
  freq->add_option("--out", out_dir, "Output directory");

  std::vector<const char*> argv{"lexeval"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (lex_parse->parsed()) return cmd_lex_parse(lex_file, out_dir, out, err);
    if (lex_stats->parsed()) return cmd_lex_stats(lex_file, top_k_stats, out_dir, out);
    if (merge->parsed()) return cmd_merge(ref_file, other_file, ref_name, other_name, merge_out, out, err);
    if (check->parsed()) return cmd_check(check_lex, check_corpus, check_out, out, err);
    if (eval->parsed()) return cmd_eval(gold_file, hyp_file, *parse_relaxation_mode(mode_name), label, out_dir, out);
    if (mine->parsed()) {
      if (!mine_corpus && !mine_ref) {
        err << "mine: either --corpus or --ref/--hyp is required\n";
        return 2;
      }
      return cmd_mine(mine_corpus, mine_ref, mine_hyp, params, top_k_mine, out_dir, out, err);
    }
    if (freq->parsed()) return cmd_freq(freq_file, map_file, n, out_dir, out, err);
  } catch (const std::exception& e) {
    err << "lexeval: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace lexeval
