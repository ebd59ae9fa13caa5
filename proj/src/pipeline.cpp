#include "svcminer/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace svcminer {

namespace {

namespace fs = std::filesystem;

std::ifstream open_input(const fs::path& path) {
  if (!fs::exists(path)) {
    throw PipelineError("ingest", exit_code::kInputFormat,
                        fmt::format("input file not found: {}", path.string()));
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw PipelineError("ingest", exit_code::kInputFormat,
                        fmt::format("cannot open input file: {}", path.string()));
  }
  return in;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw PipelineError("output", exit_code::kInputFormat,
                        fmt::format("cannot write {}", path.string()));
  }
  return out;
}

// %.6g-style numbers for all TSV output.
std::string num(double v) { return fmt::format("{:.6g}", v); }

struct Chunk {
  std::vector<AlignedTuple> tuples;
  PairCounter intra_l1;
  PairCounter intra_l2;
  PairCounter inter;
  std::size_t tokens_l1 = 0;
  std::size_t tokens_l2 = 0;
};

void extract_range(const BitextCorpus& corpus, const ExtractionConfig& cfg, std::size_t begin,
                   std::size_t end, Chunk& chunk) {
  for (std::size_t i = begin; i < end; ++i) {
    const SentencePair& pair = corpus.pairs[i];
    chunk.tokens_l1 += pair.l1_sentence.size();
    chunk.tokens_l2 += pair.l2_sentence.size();
    for (const auto& dep : extract_dep_pairs(pair.l1_sentence, cfg, Side::kL1)) {
      chunk.intra_l1.add(dep.verb_token().lemma, dep.noun_token().lemma);
    }
    for (const auto& dep : extract_dep_pairs(pair.l2_sentence, cfg, Side::kL2)) {
      chunk.intra_l2.add(dep.verb_token().lemma, dep.noun_token().lemma);
    }
    chunk.inter.add_all(extract_alignment_instances(pair, cfg));
    auto tuples = extract_aligned_tuples(pair, cfg);
    chunk.tuples.insert(chunk.tuples.end(), tuples.begin(), tuples.end());
  }
}

}  // namespace

void PipelineConfig::validate() const {
  if (l1.empty() || l2.empty()) throw std::invalid_argument("language codes must be non-empty");
  if (l1 == l2) throw std::invalid_argument("--l1 and --l2 must differ");
  if (jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
  extraction.validate();
  ranking.validate();
}

PipelineError::PipelineError(std::string stage, int exit_code, const std::string& message)
    : std::runtime_error(fmt::format("[{}] {}", stage, message)),
      stage_(std::move(stage)),
      exit_code_(exit_code) {}

LoadedCorpus load_corpus(const PipelineConfig& config) {
  auto in1 = open_input(config.conllu1);
  auto in2 = open_input(config.conllu2);
  auto in3 = open_input(config.align);
  LoadedCorpus loaded;
  try {
    auto s1 = parse_conllu(in1, config.l1, config.mode, config.conllu1.string());
    auto s2 = parse_conllu(in2, config.l2, config.mode, config.conllu2.string());
    auto links = parse_alignments(in3, config.mode, config.align.string());
    for (auto* diags : {&s1.diagnostics, &s2.diagnostics, &links.diagnostics}) {
      loaded.diagnostics.insert(loaded.diagnostics.end(), diags->begin(), diags->end());
    }
    auto assembled = assemble_bitext(std::move(s1.sentences), std::move(s2.sentences),
                                     std::move(links.link_sets), config.mode,
                                     config.align.string());
    loaded.diagnostics.insert(loaded.diagnostics.end(), assembled.diagnostics.begin(),
                              assembled.diagnostics.end());
    loaded.corpus = std::move(assembled.corpus);
    loaded.corpus.l1 = config.l1;
    loaded.corpus.l2 = config.l2;
    loaded.dropped_pairs = assembled.dropped_pairs;
  } catch (const FormatError& e) {
    throw PipelineError("ingest", exit_code::kInputFormat, e.what());
  } catch (const std::invalid_argument& e) {
    throw PipelineError("ingest", exit_code::kInputFormat, e.what());
  }
  return loaded;
}

CorpusExtraction extract_corpus(const BitextCorpus& corpus, const ExtractionConfig& cfg,
                                std::size_t jobs) {
  const std::size_t n = corpus.pairs.size();
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
  std::vector<Chunk> chunks(jobs);
  const std::size_t per_chunk = (n + jobs - 1) / jobs;
  if (jobs == 1) {
    extract_range(corpus, cfg, 0, n, chunks[0]);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) {
      std::size_t begin = std::min(n, j * per_chunk);
      std::size_t end = std::min(n, begin + per_chunk);
      workers.emplace_back(
          [&corpus, &cfg, begin, end, &chunk = chunks[j]] { extract_range(corpus, cfg, begin, end, chunk); });
    }
  }
  CorpusExtraction out;
  for (Chunk& chunk : chunks) {
    out.tuples.insert(out.tuples.end(), chunk.tuples.begin(), chunk.tuples.end());
    out.intra_l1.merge(chunk.intra_l1);
    out.intra_l2.merge(chunk.intra_l2);
    out.inter.merge(chunk.inter);
    out.tokens_l1 += chunk.tokens_l1;
    out.tokens_l2 += chunk.tokens_l2;
  }
  return out;
}

namespace {

StageStats stats_from(const BitextCorpus& corpus, const CorpusExtraction& ex,
                      std::size_t distinct) {
  StageStats s;
  s.sentence_pairs = corpus.pairs.size();
  s.tokens_l1 = ex.tokens_l1;
  s.tokens_l2 = ex.tokens_l2;
  s.dep_pairs_l1 = ex.intra_l1.total();
  s.dep_pairs_l2 = ex.intra_l2.total();
  s.alignment_instances = ex.inter.total();
  s.aligned_tuples = ex.tuples.size();
  s.distinct_lemma_tuples = distinct;
  return s;
}

void log_stats(std::ostream& log, const StageStats& s, const std::string& l1,
               const std::string& l2) {
  fmt::print(log, "[extract] {} sentence pairs, {} {} tokens, {} {} tokens\n", s.sentence_pairs,
             s.tokens_l1, l1, s.tokens_l2, l2);
  fmt::print(log, "[extract] {} {} verb-object pairs, {} {} verb-object pairs\n", s.dep_pairs_l1,
             l1, s.dep_pairs_l2, l2);
  fmt::print(log, "[extract] {} content-word alignment instances\n", s.alignment_instances);
  fmt::print(log, "[extract] {} aligned tuples, {} distinct lemma tuples\n", s.aligned_tuples,
             s.distinct_lemma_tuples);
}

}  // namespace

StageStats stage_stats(const BitextCorpus& corpus, const ExtractionConfig& cfg,
                       std::size_t jobs) {
  auto ex = extract_corpus(corpus, cfg, jobs);
  return stats_from(corpus, ex, aggregate_lemma_tuples(ex.tuples).size());
}

void write_stats(std::ostream& out, const StageStats& s) {
  out << "stage\tcount\n"
      << "sentence_pairs\t" << s.sentence_pairs << '\n'
      << "tokens_l1\t" << s.tokens_l1 << '\n'
      << "tokens_l2\t" << s.tokens_l2 << '\n'
      << "dep_pairs_l1\t" << s.dep_pairs_l1 << '\n'
      << "dep_pairs_l2\t" << s.dep_pairs_l2 << '\n'
      << "alignment_instances\t" << s.alignment_instances << '\n'
      << "aligned_tuples\t" << s.aligned_tuples << '\n'
      << "distinct_lemma_tuples\t" << s.distinct_lemma_tuples << '\n';
}

PipelineResult run_pipeline(const PipelineConfig& config, std::ostream& log) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw PipelineError("config", exit_code::kUsage, e.what());
  }
  PipelineResult result;

  LoadedCorpus loaded = load_corpus(config);
  for (const auto& d : loaded.diagnostics) fmt::print(log, "[ingest] warning: {}\n", d.to_string());
  fmt::print(log, "[ingest] {} sentence pairs read, {} dropped, {} diagnostics\n",
             loaded.corpus.pairs.size(), loaded.dropped_pairs, loaded.diagnostics.size());
  result.diagnostics = std::move(loaded.diagnostics);
  const BitextCorpus& corpus = loaded.corpus;

  CorpusExtraction ex = extract_corpus(corpus, config.extraction, config.jobs);
  std::vector<LemmaTuple> lemma_tuples = aggregate_lemma_tuples(ex.tuples);
  result.stats = stats_from(corpus, ex, lemma_tuples.size());
  log_stats(log, result.stats, config.l1, config.l2);

  TableMap intra1;
  TableMap intra2;
  TableMap inter;
  try {
    intra1 = ex.intra_l1.tables();
    intra2 = ex.intra_l2.tables();
    inter = ex.inter.tables();
  } catch (const DomainError& e) {
    throw PipelineError("stats", exit_code::kEmptyUniverse, e.what());
  }

  fs::create_directories(config.out_dir);
  const auto& p = config.ranking;
  ScoreTable inter_x(ScoreContext::interlingual(config.l1, config.l2), p.x, inter);
  ScoreTable intra1_y(ScoreContext::intralingual(config.l1), p.y, intra1);
  ScoreTable intra2_y(ScoreContext::intralingual(config.l2), p.y, intra2);

  try {
    result.ranked = rank_candidates(lemma_tuples, p, {inter_x, intra1_y, intra2_y});
  } catch (const ConsistencyError& e) {
    throw PipelineError("rank", exit_code::kInputFormat, e.what());
  }
  fmt::print(log, "[rank] {} candidates with f >= {}\n", result.ranked.size(), p.min_freq);

  auto ranked_path = config.out_dir / "ranked.tsv";
  {
    auto out = open_output(ranked_path);
    write_ranked(out, result.ranked);
  }
  result.written.push_back(ranked_path);

  if (config.dump_tuples) {
    auto path = config.out_dir / "tuples.tsv";
    auto out = open_output(path);
    write_tuples(out, ex.tuples);
    result.written.push_back(path);
  }
  if (config.dump_scores) {
    struct Universe {
      ScoreContext context;
      const TableMap& tables;
    };
    const Universe universes[] = {{ScoreContext::intralingual(config.l1), intra1},
                                  {ScoreContext::intralingual(config.l2), intra2},
                                  {ScoreContext::interlingual(config.l1, config.l2), inter}};
    for (const auto& u : universes) {
      for (Measure m : kAllMeasures) {
        auto path = config.out_dir / fmt::format("scores.{}.{}.tsv", u.context.label(), measure_name(m));
        auto out = open_output(path);
        write_scores(out, ScoreTable(u.context, m, u.tables));
        result.written.push_back(path);
      }
    }
  }
  for (const auto& path : result.written) fmt::print(log, "[output] wrote {}\n", path.string());
  return result;
}

void write_ranked(std::ostream& out, const std::vector<RankedCandidate>& ranked) {
  out << "rank\tl1_verb\tl1_noun\tl2_verb\tl2_noun\tfreq\tcpr_noun\tcpr_verb\tq\tam_y_l1\tam_y_"
         "l2\tr\n";
  std::size_t rank = 0;
  for (const auto& c : ranked) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", ++rank, c.tuple.l1_verb,
               c.tuple.l1_noun, c.tuple.l2_verb, c.tuple.l2_noun, c.tuple.freq, num(c.cpr_noun),
               num(c.cpr_verb), num(c.q), num(c.am_y_l1), num(c.am_y_l2), num(c.r));
  }
}

void write_tuples(std::ostream& out, const std::vector<AlignedTuple>& tuples) {
  out << "pair_id\tl1_verb_lemma\tl1_noun_lemma\tl2_verb_lemma\tl2_noun_lemma\td1\td2\n";
  for (const auto& t : tuples) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}\n", t.pair_id(), t.l1_verb_token().lemma,
               t.l1_noun_token().lemma, t.l2_verb_token().lemma, t.l2_noun_token().lemma, t.d1(),
               t.d2());
  }
}

void write_scores(std::ostream& out, const ScoreTable& table) {
  out << "lemma_a\tlemma_b\to11\to12\to21\to22\te11\tmeasure\tscore\n";
  const auto name = measure_name(table.measure());
  for (const auto& [key, e] : table.entries()) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", key.first, key.second, e.table.o11,
               e.table.o12, e.table.o21, e.table.o22, num(e.table.e11()), name, num(e.score));
  }
}

}  // namespace svcminer
