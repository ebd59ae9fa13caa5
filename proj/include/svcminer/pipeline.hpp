#pragma once

// End-to-end orchestration: files in, ranked TSV out.

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "svcminer/assoc.hpp"
#include "svcminer/bitext.hpp"
#include "svcminer/extract.hpp"
#include "svcminer/rank.hpp"

namespace svcminer {

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInputFormat = 2;
inline constexpr int kEmptyUniverse = 3;
}  // namespace exit_code

struct PipelineConfig {
  std::string l1 = "de";
  std::string l2 = "en";
  std::filesystem::path conllu1;
  std::filesystem::path conllu2;
  std::filesystem::path align;
  ExtractionConfig extraction;
  RankingParams ranking;
  std::filesystem::path out_dir = ".";
  ParseMode mode = ParseMode::kLenient;
  bool dump_tuples = false;
  bool dump_scores = false;
  std::size_t jobs = 1;

  // Throws std::invalid_argument.
  void validate() const;
};

// A failure tagged with the pipeline stage and the process exit code it maps to.
class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, int exit_code, const std::string& message);
  const std::string& stage() const { return stage_; }
  int exit_code() const { return exit_code_; }

 private:
  std::string stage_;
  int exit_code_;
};

struct LoadedCorpus {
  BitextCorpus corpus;
  std::vector<Diagnostic> diagnostics;
  std::size_t dropped_pairs = 0;
};

/// Reads and pairs the three input files. Missing files and strict-mode
/// format errors throw PipelineError.
LoadedCorpus load_corpus(const PipelineConfig& config);

// Everything the statistics stage needs from one pass over the corpus.
struct CorpusExtraction {
  std::vector<AlignedTuple> tuples;
  PairCounter intra_l1;
  PairCounter intra_l2;
  PairCounter inter;
  std::size_t tokens_l1 = 0;
  std::size_t tokens_l2 = 0;
};

/// Per-pair extraction fanned out over `jobs` workers and merged in corpus
/// order. The result does not depend on `jobs`.
CorpusExtraction extract_corpus(const BitextCorpus& corpus, const ExtractionConfig& cfg,
                                std::size_t jobs);

struct StageStats {
  std::size_t sentence_pairs = 0;
  std::size_t tokens_l1 = 0;
  std::size_t tokens_l2 = 0;
  std::size_t dep_pairs_l1 = 0;
  std::size_t dep_pairs_l2 = 0;
  std::size_t alignment_instances = 0;
  std::size_t aligned_tuples = 0;
  std::size_t distinct_lemma_tuples = 0;

  bool operator==(const StageStats&) const = default;
};

StageStats stage_stats(const BitextCorpus& corpus, const ExtractionConfig& cfg,
                       std::size_t jobs = 1);
void write_stats(std::ostream& out, const StageStats& stats);

struct PipelineResult {
  StageStats stats;
  std::vector<Diagnostic> diagnostics;
  std::vector<RankedCandidate> ranked;
  std::vector<std::filesystem::path> written;
};

/// Runs ingest, extraction, scoring and ranking and writes ranked.tsv (plus
/// the requested dumps) into config.out_dir. Stage counts go to `log`.
PipelineResult run_pipeline(const PipelineConfig& config, std::ostream& log);

void write_ranked(std::ostream& out, const std::vector<RankedCandidate>& ranked);
void write_tuples(std::ostream& out, const std::vector<AlignedTuple>& tuples);
void write_scores(std::ostream& out, const ScoreTable& table);

}  // namespace svcminer
