// -*- mode: c++ -*-
//
// Comparative error mining.
//
// The corpus holds sentences analyzable with a reference lexicon; a sentence
// is "failed" when it is not analyzable with the hypothesis lexicon. Each
// form f gets a suspicion S(f) in [0,1], solved as a fixed point of
//
//   local(o)  = S(form o) / sum of S over the occurrences of o's failed sentence
//               (uniform 1/|s| when that sum is 0; 0 in non-failed sentences)
//   S'(f)     = mean of local(o) over every occurrence o of f
//
// starting from S(f) = failed occurrences of f / occurrences of f.
//
#ifndef LEXEVAL_ERROR_MINER_HPP
#define LEXEVAL_ERROR_MINER_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexeval/frame_checker.hpp"

namespace lexeval {

struct MiningSentence {
  std::string sentence_id;
  std::vector<std::string> forms;
  bool failed = false;

  bool operator==(const MiningSentence&) const = default;
};

struct MiningCorpus {
  std::vector<MiningSentence> sentences;

  bool operator==(const MiningCorpus&) const = default;
};

/// Throws InvariantError on empty form lists or duplicate ids.
void validate_mining_corpus(const MiningCorpus& corpus);

struct MiningParams {
  double epsilon = 1e-9;
  std::size_t max_iterations = 200;
};

struct SuspicionScore {
  std::string form;
  double score = 0.0;
  std::size_t occurrences = 0;
  std::size_t failed_sentences = 0;
  std::optional<std::string> sample_sentence_id;  // smallest failed sentence id containing the form
};

/// Per-iteration view handed to an optional observer. `scores` is indexed like
/// the result's forms (sorted); `failed_mass[k]` is the summed local suspicion
/// of the k-th failed sentence in id order.
struct MiningIteration {
  std::size_t iteration = 0;  // 0 is the initial assignment
  const std::vector<std::string>& forms;
  const std::vector<double>& scores;
  const std::vector<double>& failed_mass;
};

struct MiningResult {
  std::vector<SuspicionScore> scores;  // form order
  std::size_t iterations = 0;
  bool converged = false;
};

/// Sentences failing under ref are dropped; the rest are failed iff hyp fails.
/// Throws InvariantError when ids or forms differ between the runs.
MiningCorpus build_mining_corpus(const std::vector<SentenceRecord>& ref_records,
                                 const std::vector<SentenceRecord>& hyp_records);

/// Treats each record as a sentence, failed iff not analyzable.
MiningCorpus mining_corpus_from_records(const std::vector<SentenceRecord>& records);

/// Throws InvariantError on an empty corpus or invalid params.
MiningResult compute_suspicion(const MiningCorpus& corpus, const MiningParams& params = {},
                               const std::function<void(const MiningIteration&)>& observer = {});

/// Top k by score desc, then failed_sentences desc, then form asc.
std::vector<SuspicionScore> rank_suspects(std::vector<SuspicionScore> scores, std::size_t top_k);

/// `rank TAB form TAB score TAB failed_sentences TAB sample_sentence_id` ("-" when none).
std::string format_suspects(const std::vector<SuspicionScore>& ranked);

/// `sentence_id TAB failed|ok TAB form1,form2,...`
MiningCorpus parse_mining_corpus(std::string_view text);
std::string serialize_mining_corpus(const MiningCorpus& corpus);

/// Sentence records in the same line format (ok = analyzable).
std::vector<SentenceRecord> parse_records(std::string_view text);
std::string serialize_records(const std::vector<SentenceRecord>& records);

}  // namespace lexeval

#endif
