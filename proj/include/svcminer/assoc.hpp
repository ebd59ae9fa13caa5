#pragma once

// Contingency tables over co-occurrence instances and the six association
// measures computed from them.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "svcminer/bitext.hpp"
#include "svcminer/extract.hpp"

namespace svcminer {

struct ContingencyTable {
  std::uint64_t o11 = 0;
  std::uint64_t o12 = 0;
  std::uint64_t o21 = 0;
  std::uint64_t o22 = 0;

  std::uint64_t n() const { return o11 + o12 + o21 + o22; }
  std::uint64_t r1() const { return o11 + o12; }
  std::uint64_t c1() const { return o11 + o21; }
  double e11() const {
    return static_cast<double>(r1()) * static_cast<double>(c1()) / static_cast<double>(n());
  }

  bool operator==(const ContingencyTable&) const = default;
};

enum class Measure { kOE, kMI, kLocalMI, kZScore, kTScore, kSimpleLL };

inline constexpr std::array<Measure, 6> kAllMeasures = {
    Measure::kOE, Measure::kMI, Measure::kLocalMI, Measure::kZScore, Measure::kTScore,
    Measure::kSimpleLL};

/// CLI spelling: oe, mi, local-mi, z-score, t-score, simple-ll.
std::string_view measure_name(Measure m);
std::optional<Measure> parse_measure(std::string_view name);

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// OE = O/E, MI = log2(O/E), local-MI = O log2(O/E), z = (O-E)/sqrt(E),
/// t = (O-E)/sqrt(O), simple-ll = 2(O ln(O/E) - (O-E)). Requires o11 >= 1.
double score(const ContingencyTable& table, Measure measure);

using TableMap = std::map<LemmaPair, ContingencyTable>;

struct PairHash {
  std::size_t operator()(const LemmaPair& p) const noexcept;
};

// Co-occurrence accumulator. Merging is addition, so partitions of an
// instance list can be counted independently.
class PairCounter {
 public:
  void add(const std::string& a, const std::string& b, std::uint64_t count = 1);
  void add_all(const std::vector<LemmaPair>& instances);
  void merge(const PairCounter& other);

  std::uint64_t total() const { return total_; }
  bool empty() const { return total_ == 0; }

  // Throws DomainError when no instance was counted.
  TableMap tables() const;

 private:
  std::unordered_map<LemmaPair, std::uint64_t, PairHash> joint_;
  std::unordered_map<std::string, std::uint64_t> rows_;
  std::unordered_map<std::string, std::uint64_t> cols_;
  std::uint64_t total_ = 0;
};

/// Tables for every observed pair of the instance list. Throws DomainError on
/// an empty list.
TableMap build_tables(const std::vector<LemmaPair>& instances);

struct ScoreContext {
  enum class Kind { kIntralingual, kInterlingual };
  Kind kind = Kind::kIntralingual;
  std::string language;       // intralingual side, or L1 for interlingual
  std::string other_language; // L2 for interlingual

  static ScoreContext intralingual(std::string lang) { return {Kind::kIntralingual, std::move(lang), {}}; }
  static ScoreContext interlingual(std::string l1, std::string l2) {
    return {Kind::kInterlingual, std::move(l1), std::move(l2)};
  }
  std::string label() const;
};

enum class Orientation { kForward, kReverse };

class ScoreTable {
 public:
  struct Entry {
    ContingencyTable table;
    double score = 0.0;
  };

  ScoreTable(ScoreContext context, Measure measure, const TableMap& tables);

  const ScoreContext& context() const { return context_; }
  Measure measure() const { return measure_; }
  const std::map<LemmaPair, Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  // Interlingual keys are (L1 lemma, L2 lemma). kReverse takes the arguments
  // as (L2 lemma, L1 lemma) and answers from the same entry.
  const Entry* find(const std::string& a, const std::string& b,
                    Orientation orientation = Orientation::kForward) const;

 private:
  ScoreContext context_;
  Measure measure_;
  std::map<LemmaPair, Entry> entries_;
};

/// Verb/object lemma instances of one side across the corpus.
std::vector<LemmaPair> intralingual_instances(const BitextCorpus& corpus,
                                              const ExtractionConfig& cfg, Side side);
/// Content-word alignment lemma instances across the corpus.
std::vector<LemmaPair> interlingual_instances(const BitextCorpus& corpus,
                                              const ExtractionConfig& cfg);

ScoreTable intralingual_scores(const BitextCorpus& corpus, const ExtractionConfig& cfg,
                               Side side, Measure measure);
ScoreTable interlingual_scores(const BitextCorpus& corpus, const ExtractionConfig& cfg,
                               Measure measure);

}  // namespace svcminer
