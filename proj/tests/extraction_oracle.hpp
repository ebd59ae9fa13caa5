#pragma once

// Quadruple-loop reference for aligned tuple extraction. Test-only.

#include <algorithm>
#include <array>
#include <string>
#include <tuple>
#include <vector>

#include "svcminer/bitext.hpp"
#include "svcminer/extract.hpp"

namespace svcminer::testing {

// (pair_id, l1 verb, l1 noun, l2 verb, l2 noun) as token indices
using TupleRecord = std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::size_t>;

inline bool is_object_arc(const Sentence& s, std::size_t verb, std::size_t noun,
                          const std::set<std::string>& labels, const ExtractionConfig& cfg) {
  const Token& v = s.tokens[verb - 1];
  const Token& n = s.tokens[noun - 1];
  return n.head == v.index && labels.count(n.deprel) == 1 && cfg.verb_pos.count(v.upos) == 1 &&
         cfg.noun_pos.count(n.upos) == 1;
}

inline bool linked(const SentencePair& p, std::size_t a, std::size_t b) {
  for (const auto& l : p.links) {
    if (l.src_index == a && l.tgt_index == b) return true;
  }
  return false;
}

inline std::vector<TupleRecord> brute_force_tuples(const BitextCorpus& corpus,
                                                   const ExtractionConfig& cfg) {
  std::vector<TupleRecord> out;
  for (const auto& p : corpus.pairs) {
    const std::size_t n1 = p.l1_sentence.tokens.size();
    const std::size_t n2 = p.l2_sentence.tokens.size();
    for (std::size_t v1 = 1; v1 <= n1; ++v1) {
      for (std::size_t o1 = 1; o1 <= n1; ++o1) {
        for (std::size_t v2 = 1; v2 <= n2; ++v2) {
          for (std::size_t o2 = 1; o2 <= n2; ++o2) {
            if (is_object_arc(p.l1_sentence, v1, o1, cfg.l1_object_labels, cfg) &&
                is_object_arc(p.l2_sentence, v2, o2, cfg.l2_object_labels, cfg) &&
                linked(p, v1, v2) && linked(p, o1, o2)) {
              out.emplace_back(p.pair_id, v1, o1, v2, o2);
            }
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<TupleRecord> library_tuples(const BitextCorpus& corpus,
                                               const ExtractionConfig& cfg) {
  std::vector<TupleRecord> out;
  for (const auto& p : corpus.pairs) {
    for (const auto& t : extract_aligned_tuples(p, cfg)) {
      out.emplace_back(t.pair_id(), t.l1_verb, t.l1_noun, t.l2_verb, t.l2_noun);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace svcminer::testing
