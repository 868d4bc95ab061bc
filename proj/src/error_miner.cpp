// -*- mode: c++ -*-
#include "lexeval/error_miner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "lexeval/error.hpp"
#include "lexeval/rational.hpp"
#include "text.hpp"

namespace lexeval {

void validate_mining_corpus(const MiningCorpus& corpus) {
  std::set<std::string_view> ids;
  for (const auto& s : corpus.sentences) {
    if (s.sentence_id.empty()) throw InvariantError("empty sentence id");
    if (s.forms.empty()) throw InvariantError("sentence " + s.sentence_id + " has no form");
    for (const auto& f : s.forms)
      if (f.empty()) throw InvariantError("sentence " + s.sentence_id + " has an empty form");
    if (!ids.insert(s.sentence_id).second) throw InvariantError("duplicate sentence id " + s.sentence_id);
  }
}

MiningCorpus build_mining_corpus(const std::vector<SentenceRecord>& ref_records,
                                 const std::vector<SentenceRecord>& hyp_records) {
  std::map<std::string_view, const SentenceRecord*> hyp;
  for (const auto& r : hyp_records)
    if (!hyp.emplace(r.sentence_id, &r).second) throw InvariantError("duplicate sentence id " + r.sentence_id);
  if (hyp.size() != hyp_records.size() || ref_records.size() != hyp_records.size())
    throw InvariantError("reference and hypothesis runs cover different sentences");

  MiningCorpus out;
  std::set<std::string_view> seen;
  for (const auto& r : ref_records) {
    const auto it = hyp.find(r.sentence_id);
    if (it == hyp.end()) throw InvariantError("sentence " + r.sentence_id + " missing from hypothesis run");
    if (!seen.insert(r.sentence_id).second) throw InvariantError("duplicate sentence id " + r.sentence_id);
    if (it->second->forms != r.forms) throw InvariantError("sentence " + r.sentence_id + " has different forms in the two runs");
    if (!r.analyzable) continue;
    out.sentences.push_back({r.sentence_id, r.forms, !it->second->analyzable});
  }
  return out;
}

MiningCorpus mining_corpus_from_records(const std::vector<SentenceRecord>& records) {
  MiningCorpus out;
  for (const auto& r : records) out.sentences.push_back({r.sentence_id, r.forms, !r.analyzable});
  validate_mining_corpus(out);
  return out;
}

MiningResult compute_suspicion(const MiningCorpus& corpus, const MiningParams& params,
                               const std::function<void(const MiningIteration&)>& observer) {
  if (corpus.sentences.empty()) throw InvariantError("compute_suspicion: empty corpus");
  if (!(params.epsilon > 0)) throw InvariantError("compute_suspicion: epsilon must be positive");
  if (params.max_iterations < 1) throw InvariantError("compute_suspicion: max_iterations must be >= 1");
  validate_mining_corpus(corpus);

  // fixed summation order: sentence id, then position
  std::vector<const MiningSentence*> sentences;
  for (const auto& s : corpus.sentences) sentences.push_back(&s);
  std::sort(sentences.begin(), sentences.end(),
            [](const auto* a, const auto* b) { return a->sentence_id < b->sentence_id; });

  std::vector<std::string> forms;
  for (const auto* s : sentences) forms.insert(forms.end(), s->forms.begin(), s->forms.end());
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
  auto form_index = [&](const std::string& f) {
    return static_cast<std::size_t>(std::lower_bound(forms.begin(), forms.end(), f) - forms.begin());
  };

  // sentence k -> form indices per occurrence
  std::vector<std::vector<std::size_t>> occ(sentences.size());
  std::vector<std::size_t> failed_sentence_order;
  const std::size_t nf = forms.size();
  MiningResult result;
  result.scores.resize(nf);
  std::vector<std::size_t> failed_occ(nf, 0);
  for (std::size_t i = 0; i < nf; ++i) result.scores[i].form = forms[i];

  for (std::size_t k = 0; k < sentences.size(); ++k) {
    const auto* s = sentences[k];
    if (s->failed) failed_sentence_order.push_back(k);
    std::set<std::size_t> distinct;
    for (const auto& f : s->forms) {
      const std::size_t fi = form_index(f);
      occ[k].push_back(fi);
      ++result.scores[fi].occurrences;
      if (s->failed) ++failed_occ[fi];
      distinct.insert(fi);
    }
    if (!s->failed) continue;
    for (std::size_t fi : distinct) {
      auto& sc = result.scores[fi];
      ++sc.failed_sentences;
      if (!sc.sample_sentence_id) sc.sample_sentence_id = s->sentence_id;
    }
  }

  std::vector<double> score(nf), next(nf);
  for (std::size_t i = 0; i < nf; ++i)
    score[i] = static_cast<double>(failed_occ[i]) / static_cast<double>(result.scores[i].occurrences);

  std::vector<double> failed_mass;
  if (observer) observer(MiningIteration{0, forms, score, failed_mass});

  for (std::size_t t = 1; t <= params.max_iterations; ++t) {
    std::fill(next.begin(), next.end(), 0.0);
    failed_mass.assign(failed_sentence_order.size(), 0.0);
    for (std::size_t j = 0; j < failed_sentence_order.size(); ++j) {
      const auto& positions = occ[failed_sentence_order[j]];
      double denom = 0.0;
      for (std::size_t fi : positions) denom += score[fi];
      double mass = 0.0;
      for (std::size_t fi : positions) {
        const double local = denom > 0.0 ? score[fi] / denom : 1.0 / static_cast<double>(positions.size());
        next[fi] += local;
        mass += local;
      }
      failed_mass[j] = mass;
    }
    double delta = 0.0;
    for (std::size_t i = 0; i < nf; ++i) {
      next[i] /= static_cast<double>(result.scores[i].occurrences);
      delta = std::max(delta, std::abs(next[i] - score[i]));
    }
    score.swap(next);
    result.iterations = t;
    if (observer) observer(MiningIteration{t, forms, score, failed_mass});
    if (delta < params.epsilon) {
      result.converged = true;
      break;
    }
  }

  for (std::size_t i = 0; i < nf; ++i) result.scores[i].score = score[i];
  return result;
}

std::vector<SuspicionScore> rank_suspects(std::vector<SuspicionScore> scores, std::size_t top_k) {
  std::sort(scores.begin(), scores.end(), [](const SuspicionScore& a, const SuspicionScore& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.failed_sentences != b.failed_sentences) return a.failed_sentences > b.failed_sentences;
    return a.form < b.form;
  });
  if (scores.size() > top_k) scores.resize(top_k);
  return scores;
}

std::string format_suspects(const std::vector<SuspicionScore>& ranked) {
  std::string out = "#rank\tform\tscore\tfailed_sentences\tsample_sentence_id\n";
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    const auto& s = ranked[i];
    out += std::to_string(i + 1) + '\t' + s.form + '\t' + format_score(s.score) + '\t' +
           std::to_string(s.failed_sentences) + '\t' + s.sample_sentence_id.value_or("-") + '\n';
  }
  return out;
}

// ---------------------------------------------------------------- formats

namespace {

struct Row {
  std::string id;
  bool flag;  // true = failed
  std::vector<std::string> forms;
};

std::vector<Row> parse_rows(std::string_view text) {
  std::vector<Row> rows;
  std::set<std::string, std::less<>> ids;
  text::for_each_record(text, [&](std::size_t line_no, std::string_view line) {
    const auto fields = text::split(line, '\t');
    if (fields.size() != 3)
      throw FormatError("expected 3 tab-separated fields, got " + std::to_string(fields.size()), line_no);
    if (fields[0].empty()) throw FormatError("empty sentence id", line_no);
    if (!ids.emplace(fields[0]).second) throw FormatError("duplicate sentence id '" + std::string(fields[0]) + "'", line_no);
    Row row{std::string(fields[0]), false, {}};
    if (fields[1] == "failed")
      row.flag = true;
    else if (fields[1] != "ok")
      throw FormatError("status must be 'failed' or 'ok', got '" + std::string(fields[1]) + "'", line_no);
    if (fields[2].empty()) throw FormatError("sentence without forms", line_no);
    for (auto f : text::split(fields[2], ',')) {
      if (f.empty()) throw FormatError("empty form", line_no);
      row.forms.emplace_back(f);
    }
    rows.push_back(std::move(row));
  });
  return rows;
}

std::string format_row(const std::string& id, bool failed, const std::vector<std::string>& forms) {
  return id + '\t' + (failed ? "failed" : "ok") + '\t' + text::join(forms, ",") + '\n';
}

}  // namespace

MiningCorpus parse_mining_corpus(std::string_view text) {
  MiningCorpus out;
  for (auto& row : parse_rows(text)) out.sentences.push_back({std::move(row.id), std::move(row.forms), row.flag});
  return out;
}

std::string serialize_mining_corpus(const MiningCorpus& corpus) {
  std::string out;
  for (const auto& s : corpus.sentences) out += format_row(s.sentence_id, s.failed, s.forms);
  return out;
}

std::vector<SentenceRecord> parse_records(std::string_view text) {
  std::vector<SentenceRecord> out;
  for (auto& row : parse_rows(text)) out.push_back({std::move(row.id), std::move(row.forms), !row.flag});
  return out;
}

std::string serialize_records(const std::vector<SentenceRecord>& records) {
  std::string out;
  for (const auto& r : records) out += format_row(r.sentence_id, !r.analyzable, r.forms);
  return out;
}

}  // namespace lexeval
