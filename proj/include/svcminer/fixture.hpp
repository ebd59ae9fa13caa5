#pragma once

// Deterministic synthetic German/English bitext with a planted support verb
// construction, a compositional distractor and random filler, plus an
// independent brute-force re-derivation of the expected ranking.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "svcminer/rank.hpp"

namespace svcminer {

// Abstract content of one sentence pair: a verb and its direct object per side.
struct FixtureClause {
  std::string de_verb;
  std::string de_noun;
  std::string en_verb;
  std::string en_noun;
  bool verb_aligned = true;
  bool perfect = false;  // verb-final perfect tense template
  bool adverb = false;   // trailing heute/today, an extra content-word link
};

struct FixtureWordPair {
  std::string de;
  std::string en;
};

struct FixtureSpec {
  std::uint64_t seed = 42;
  std::size_t n_pairs = 200;
  // Noun pair aligned in every occurrence, verb pair aligned in a minority of
  // the verb's occurrences.
  FixtureWordPair planted_verb{"schenken", "pay"};
  FixtureWordPair planted_noun{"Aufmerksamkeit", "attention"};
  // Verb and noun both translated consistently.
  FixtureWordPair distractor_verb{"schreiben", "write"};
  FixtureWordPair distractor_noun{"Brief", "letter"};
  // Malformed lines injected into distinct sentence pairs (0 = clean corpus).
  std::size_t defects = 0;

  // Throws std::invalid_argument if n_pairs < 20.
  void validate() const;
};

struct FixtureDefect {
  std::string file;  // l1.conllu, l2.conllu or align.txt
  std::size_t line = 0;
  std::string kind;
};

struct OracleRow {
  LemmaTuple tuple;
  double cpr_noun = 0.0;
  double cpr_verb = 0.0;
  double q = 0.0;
  double am_y_l1 = 0.0;
  double am_y_l2 = 0.0;
  double r = 0.0;
};

struct FixtureCorpus {
  std::vector<FixtureClause> clauses;     // one per sentence pair, file order
  std::vector<std::string> l1_conllu;     // file lines
  std::vector<std::string> l2_conllu;
  std::vector<std::string> align;
  std::vector<FixtureDefect> defects;
  std::size_t tokens_l1 = 0;
  std::size_t tokens_l2 = 0;
  std::size_t alignment_instances = 0;
  std::size_t aligned_tuples = 0;
  std::size_t distinct_lemma_tuples = 0;
};

FixtureCorpus build_fixture(const FixtureSpec& spec);

/// Expected ranking from the generator's own records, computed by direct
/// counting and the textbook formulas.
std::vector<OracleRow> oracle_ranking(const FixtureCorpus& fixture, const RankingParams& params);

struct FixtureFiles {
  std::filesystem::path l1_conllu;
  std::filesystem::path l2_conllu;
  std::filesystem::path align;
  std::filesystem::path expected_ranking;  // empty when defects were injected
  std::filesystem::path stats;
};

/// Writes l1.conllu, l2.conllu, align.txt, fixture_stats.tsv, defects.tsv when
/// defects were injected and, for a clean
/// corpus, expected_ranking.tsv (default ranking parameters, full precision).
FixtureFiles generate_fixture(const FixtureSpec& spec, const std::filesystem::path& out_dir);

void write_oracle_ranking(std::ostream& out, const std::vector<OracleRow>& rows);
std::vector<OracleRow> read_oracle_ranking(std::istream& in);

}  // namespace svcminer
