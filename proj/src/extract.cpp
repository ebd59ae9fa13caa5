#include "svcminer/extract.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace svcminer {

void ExtractionConfig::validate() const {
  if (l1_object_labels.empty() || l2_object_labels.empty() || verb_pos.empty() ||
      noun_pos.empty() || content_pos.empty()) {
    throw std::invalid_argument("extraction config: label and tag sets must be non-empty");
  }
}

std::vector<DepPairInstance> extract_dep_pairs(const Sentence& sentence,
                                               const ExtractionConfig& cfg, Side side) {
  std::vector<DepPairInstance> out;
  const auto& labels = cfg.object_labels(side);
  for (const Token& noun : sentence.tokens) {
    if (noun.head == 0 || !labels.contains(noun.deprel) || !cfg.noun_pos.contains(noun.upos)) {
      continue;
    }
    const Token& verb = sentence.at(noun.head);
    if (!cfg.verb_pos.contains(verb.upos)) continue;
    out.push_back({&sentence, side, verb.index, noun.index});
  }
  return out;
}

std::vector<AlignedTuple> extract_aligned_tuples(const SentencePair& pair,
                                                 const ExtractionConfig& cfg) {
  std::vector<AlignedTuple> out;
  if (pair.links.empty()) return out;
  const auto l1_pairs = extract_dep_pairs(pair.l1_sentence, cfg, Side::kL1);
  if (l1_pairs.empty()) return out;
  const auto l2_pairs = extract_dep_pairs(pair.l2_sentence, cfg, Side::kL2);
  for (const auto& a : l1_pairs) {
    for (const auto& b : l2_pairs) {
      if (pair.has_link(a.verb, b.verb) && pair.has_link(a.noun, b.noun)) {
        out.push_back({&pair, a.verb, a.noun, b.verb, b.noun});
      }
    }
  }
  return out;
}

std::vector<LemmaTuple> aggregate_lemma_tuples(const std::vector<AlignedTuple>& tuples) {
  std::map<LemmaKey, std::size_t> counts;
  for (const auto& t : tuples) {
    ++counts[{t.l1_verb_token().lemma, t.l1_noun_token().lemma, t.l2_verb_token().lemma,
              t.l2_noun_token().lemma}];
  }
  std::vector<LemmaTuple> out;
  out.reserve(counts.size());
  for (auto& [key, freq] : counts) {
    out.push_back({key[0], key[1], key[2], key[3], freq});
  }
  // counts is already in key order, so a stable sort on freq alone suffices
  std::stable_sort(out.begin(), out.end(),
                   [](const LemmaTuple& a, const LemmaTuple& b) { return a.freq > b.freq; });
  return out;
}

std::vector<LemmaPair> extract_alignment_instances(const SentencePair& pair,
                                                   const ExtractionConfig& cfg) {
  std::vector<LemmaPair> out;
  for (const AlignmentLink& link : pair.links) {
    const Token& a = pair.l1_sentence.at(link.src_index);
    const Token& b = pair.l2_sentence.at(link.tgt_index);
    if (cfg.content_pos.contains(a.upos) && cfg.content_pos.contains(b.upos)) {
      out.emplace_back(a.lemma, b.lemma);
    }
  }
  return out;
}

}  // namespace svcminer
