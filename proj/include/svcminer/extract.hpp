#pragma once

// Verb/direct-object instances, their cross-lingual join through alignment
// links, and aggregation to lemma tuples.

#include <array>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "svcminer/bitext.hpp"

namespace svcminer {

enum class Side { kL1, kL2 };

struct ExtractionConfig {
  std::set<std::string> l1_object_labels{"obj", "dobj"};
  std::set<std::string> l2_object_labels{"obj", "dobj"};
  std::set<std::string> verb_pos{"VERB"};
  std::set<std::string> noun_pos{"NOUN"};
  std::set<std::string> content_pos{"NOUN", "VERB", "ADJ", "ADV"};

  const std::set<std::string>& object_labels(Side side) const {
    return side == Side::kL1 ? l1_object_labels : l2_object_labels;
  }
  // Throws std::invalid_argument if any set is empty.
  void validate() const;
};

struct DepPairInstance {
  const Sentence* sentence = nullptr;
  Side side = Side::kL1;
  std::size_t verb = 0;  // token indices, 1-based
  std::size_t noun = 0;

  const Token& verb_token() const { return sentence->at(verb); }
  const Token& noun_token() const { return sentence->at(noun); }
  const std::string& deprel() const { return noun_token().deprel; }
};

struct AlignedTuple {
  const SentencePair* pair = nullptr;
  std::size_t l1_verb = 0;
  std::size_t l1_noun = 0;
  std::size_t l2_verb = 0;
  std::size_t l2_noun = 0;

  const std::string& pair_id() const { return pair->pair_id; }
  const Token& l1_verb_token() const { return pair->l1_sentence.at(l1_verb); }
  const Token& l1_noun_token() const { return pair->l1_sentence.at(l1_noun); }
  const Token& l2_verb_token() const { return pair->l2_sentence.at(l2_verb); }
  const Token& l2_noun_token() const { return pair->l2_sentence.at(l2_noun); }
  const std::string& d1() const { return l1_noun_token().deprel; }
  const std::string& d2() const { return l2_noun_token().deprel; }
};

// (l1 verb, l1 noun, l2 verb, l2 noun)
using LemmaKey = std::array<std::string, 4>;

struct LemmaTuple {
  std::string l1_verb;
  std::string l1_noun;
  std::string l2_verb;
  std::string l2_noun;
  std::size_t freq = 0;

  LemmaKey key() const { return {l1_verb, l1_noun, l2_verb, l2_noun}; }
  bool operator==(const LemmaTuple&) const = default;
};

using LemmaPair = std::pair<std::string, std::string>;

/// Dependents whose head is a verb and whose label is an object label of the
/// given side, in dependent token order.
std::vector<DepPairInstance> extract_dep_pairs(const Sentence& sentence,
                                               const ExtractionConfig& cfg, Side side);

/// Every combination of an L1 and an L2 verb/object instance whose verbs are
/// linked and whose nouns are linked. No deduplication within the pair.
std::vector<AlignedTuple> extract_aligned_tuples(const SentencePair& pair,
                                                 const ExtractionConfig& cfg);

/// Counts distinct lemma 4-tuples. Ordered by descending frequency, then by
/// the four lemmas.
std::vector<LemmaTuple> aggregate_lemma_tuples(const std::vector<AlignedTuple>& tuples);

/// Lemma pairs of the links whose endpoints are both content words, in link
/// order.
std::vector<LemmaPair> extract_alignment_instances(const SentencePair& pair,
                                                   const ExtractionConfig& cfg);

}  // namespace svcminer
