// -*- mode: c++ -*-
// Brute-force reference computations. These never call the code paths they check.
#ifndef LEXEVAL_TESTS_ORACLES_HPP
#define LEXEVAL_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <string>
#include <vector>

#include "lexeval/error_miner.hpp"
#include "lexeval/lexicon.hpp"
#include "lexeval/passage.hpp"

namespace lexeval::oracle {

// ---------------------------------------------------------------- merge

/// Bitmask of frame functions, with base functions at bits 0..3.
inline std::uint32_t function_mask(const LexicalEntry& e) {
  std::uint32_t m = 0;
  for (const auto& s : e.frame) m |= 1u << static_cast<unsigned>(s.function);
  return m;
}

inline bool masks_match(const LexicalEntry& ref, const LexicalEntry& other) {
  if (ref.category != other.category) return false;
  constexpr std::uint32_t kBase = 0b1111;  // Suj, Obj, Obja, Objde
  const auto r = function_mask(ref), o = function_mask(other);
  return (r & kBase) == (o & kBase) && ((r & ~kBase) & ~(o & ~kBase)) == 0;
}

/// Merged entry count under the greedy one-to-one policy, found by
/// enumerating every partial injective assignment ref -> other and keeping
/// the one where each ref entry holds the lowest-index matching other entry
/// not held by an earlier ref entry.
inline std::size_t merged_count(const std::vector<LexicalEntry>& ref, const std::vector<LexicalEntry>& other) {
  const std::size_t nr = ref.size(), no = other.size();
  if (no >= 64) return static_cast<std::size_t>(-1);
  std::vector<std::uint64_t> match(nr, 0);  // bit j set when ref i may pair with other j
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < no; ++j)
      if (masks_match(ref[i], other[j])) match[i] |= std::uint64_t{1} << j;

  // assignment[i] in [0, no] where no means "unmatched"
  std::vector<std::size_t> a(nr, 0);
  std::size_t found = 0, solutions = 0;
  while (true) {
    bool valid = true;
    std::uint64_t held = 0;
    for (std::size_t i = 0; i < nr && valid; ++i) {
      if (a[i] < no) {
        const auto bit = std::uint64_t{1} << a[i];
        valid = (match[i] & bit) && !(held & bit);
        held |= bit;
      }
    }
    if (valid) {
      bool stable = true;
      std::uint64_t taken = 0;
      for (std::size_t i = 0; i < nr && stable; ++i) {
        std::size_t first = no;
        for (std::size_t j = 0; j < no; ++j)
          if ((match[i] >> j & 1) && !(taken >> j & 1)) {
            first = j;
            break;
          }
        stable = a[i] == first;
        if (a[i] < no) taken |= std::uint64_t{1} << a[i];
      }
      if (stable) {
        ++solutions;
        std::size_t matched = 0;
        for (auto x : a) matched += x < no;
        found = nr + no - matched;
      }
    }
    // next assignment in mixed radix (no + 1)
    std::size_t k = 0;
    while (k < nr && a[k] == no) a[k++] = 0;
    if (k == nr) break;
    ++a[k];
  }
  if (solutions != 1) return static_cast<std::size_t>(-1);
  return found;
}

// ---------------------------------------------------------------- matching

/// Maximum one-to-one compatible matching by exhaustive search.
inline std::size_t optimal_constituent_tp(const SentenceAnnotation& gold, const SentenceAnnotation& hyp,
                                          RelaxationMode mode) {
  const auto& g = gold.constituents;
  const auto& h = hyp.constituents;
  auto compatible = [&](std::size_t i, std::size_t j) {
    if (g[i].type != h[j].type) return false;
    switch (mode) {
      case RelaxationMode::Exact: return g[i].start == h[j].start && g[i].end == h[j].end;
      case RelaxationMode::Left: return g[i].start == h[j].start;
      case RelaxationMode::Overlap: return g[i].start < h[j].end && h[j].start < g[i].end;
    }
    return false;
  };
  std::size_t best = 0;
  std::vector<bool> used(h.size(), false);
  auto rec = [&](auto&& self, std::size_t i, std::size_t acc) -> void {
    if (acc + (g.size() - i) <= best) return;
    if (i == g.size()) {
      best = std::max(best, acc);
      return;
    }
    for (std::size_t j = 0; j < h.size(); ++j) {
      if (used[j] || !compatible(i, j)) continue;
      used[j] = true;
      self(self, i + 1, acc + 1);
      used[j] = false;
    }
    self(self, i + 1, acc);
  };
  rec(rec, 0, 0);
  return best;
}

/// Multiset intersection size of relation triples.
inline std::size_t relation_intersection(const std::vector<Relation>& a, const std::vector<Relation>& b) {
  std::map<std::tuple<int, std::size_t, std::size_t>, long> count;
  for (const auto& r : a) ++count[{static_cast<int>(r.type), r.source, r.target}];
  std::map<std::tuple<int, std::size_t, std::size_t>, long> other;
  for (const auto& r : b) ++other[{static_cast<int>(r.type), r.source, r.target}];
  std::size_t total = 0;
  for (const auto& [k, v] : count) {
    const auto it = other.find(k);
    if (it != other.end()) total += static_cast<std::size_t>(std::min(v, it->second));
  }
  return total;
}

// ---------------------------------------------------------------- mining

/// Straightforward string-keyed iteration of the two suspicion equations.
struct BruteForceMining {
  std::map<std::string, double> scores;
  std::size_t iterations = 0;
  bool converged = false;
};

inline BruteForceMining brute_force_suspicion(const MiningCorpus& corpus, double epsilon, std::size_t max_iter) {
  std::map<std::string, double> occ, failed_occ;
  for (const auto& s : corpus.sentences)
    for (const auto& f : s.forms) {
      occ[f] += 1;
      if (s.failed) failed_occ[f] += 1;
    }
  BruteForceMining out;
  for (const auto& [f, n] : occ) out.scores[f] = failed_occ[f] / n;

  auto sorted = corpus.sentences;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.sentence_id < b.sentence_id; });

  for (std::size_t t = 1; t <= max_iter; ++t) {
    std::map<std::string, double> sum;
    for (const auto& [f, _] : occ) sum[f] = 0;
    for (const auto& s : sorted) {
      if (!s.failed) continue;
      double z = 0;
      for (const auto& f : s.forms) z += out.scores[f];
      for (const auto& f : s.forms) sum[f] += z > 0 ? out.scores[f] / z : 1.0 / s.forms.size();
    }
    double delta = 0;
    for (auto& [f, v] : sum) {
      v /= occ[f];
      delta = std::max(delta, std::abs(v - out.scores[f]));
    }
    out.scores = sum;
    out.iterations = t;
    if (delta < epsilon) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace lexeval::oracle

#endif
