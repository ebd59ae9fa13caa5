#pragma once

// Annotated bitext: CoNLL-U sentences, Pharaoh word alignments and the
// positional pairing of the two.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace svcminer {

struct Token {
  std::size_t index = 0;  // 1-based
  std::string surface;
  std::string lemma;
  std::string upos;
  std::string xpos;       // "_" when absent
  std::size_t head = 0;   // 0 = root
  std::string deprel;

  bool operator==(const Token&) const = default;
};

struct Sentence {
  std::string language;
  std::string sentence_id;
  std::vector<Token> tokens;
  // Set on a lenient-mode placeholder for a block that failed validation.
  // The slot is kept so that positional pairing with the other files holds.
  bool rejected = false;

  std::size_t size() const { return tokens.size(); }
  const Token& at(std::size_t index) const { return tokens.at(index - 1); }

  bool operator==(const Sentence&) const = default;
};

struct AlignmentLink {
  std::size_t src_index = 0;  // 1-based, L1
  std::size_t tgt_index = 0;  // 1-based, L2

  auto operator<=>(const AlignmentLink&) const = default;
};

// Sorted by (src, tgt), no duplicates.
using LinkSet = std::vector<AlignmentLink>;

struct SentencePair {
  std::string pair_id;
  Sentence l1_sentence;
  Sentence l2_sentence;
  LinkSet links;

  bool has_link(std::size_t src, std::size_t tgt) const;
  bool operator==(const SentencePair&) const = default;
};

struct BitextCorpus {
  std::string l1;
  std::string l2;
  std::vector<SentencePair> pairs;

  bool operator==(const BitextCorpus&) const = default;
};

enum class ParseMode { kLenient, kStrict };

struct Diagnostic {
  std::string source;  // file name or stream label
  std::size_t line = 0;
  std::string message;

  std::string to_string() const;
};

// Thrown in strict mode, and for defects that no mode can recover from.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(Diagnostic diag);
  const Diagnostic& diagnostic() const { return diag_; }

 private:
  Diagnostic diag_;
};

struct ConlluResult {
  std::vector<Sentence> sentences;
  std::vector<Diagnostic> diagnostics;
};

/// Reads CoNLL-U sentences. Multiword-token ranges ("3-4") and empty nodes
/// ("3.1") are skipped. A lemma of "_" falls back to the surface form.
///
/// In lenient mode a malformed block is reported (one diagnostic per bad line)
/// and kept as a rejected placeholder; in strict mode the first defect throws
/// FormatError.
ConlluResult parse_conllu(std::istream& in, const std::string& language,
                          ParseMode mode = ParseMode::kLenient,
                          const std::string& source = "<conllu>");

struct AlignmentResult {
  std::vector<LinkSet> link_sets;
  std::vector<Diagnostic> diagnostics;
};

/// Reads Pharaoh alignments: one line per sentence pair, 0-based `i-j`
/// tokens. Links come back 1-based, sorted and deduplicated. A malformed
/// token is dropped with a diagnostic (lenient) or throws (strict).
AlignmentResult parse_alignments(std::istream& in,
                                 ParseMode mode = ParseMode::kLenient,
                                 const std::string& source = "<align>");

struct AssembleResult {
  BitextCorpus corpus;
  std::vector<Diagnostic> diagnostics;
  std::size_t dropped_pairs = 0;  // pairs with a rejected sentence on either side
};

/// Pairs the three streams positionally. Throws std::invalid_argument on a
/// length mismatch. Links outside the sentence lengths are dropped with a
/// diagnostic (lenient) or throw FormatError (strict). Diagnostics report the
/// 1-based alignment line of the offending pair.
AssembleResult assemble_bitext(std::vector<Sentence> l1_sents,
                               std::vector<Sentence> l2_sents,
                               std::vector<LinkSet> link_sets,
                               ParseMode mode = ParseMode::kLenient,
                               const std::string& align_source = "<align>");

void write_conllu(std::ostream& out, const std::vector<Sentence>& sentences);
void write_alignments(std::ostream& out, const std::vector<LinkSet>& link_sets);

}  // namespace svcminer
