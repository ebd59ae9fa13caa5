#include "svcminer/assoc.hpp"

#include <cmath>
#include <functional>

#include <fmt/format.h>

namespace svcminer {

namespace {

struct MeasureSpelling {
  Measure measure;
  std::string_view name;
};

constexpr std::array<MeasureSpelling, 6> kSpellings = {{
    {Measure::kOE, "oe"},
    {Measure::kMI, "mi"},
    {Measure::kLocalMI, "local-mi"},
    {Measure::kZScore, "z-score"},
    {Measure::kTScore, "t-score"},
    {Measure::kSimpleLL, "simple-ll"},
}};

}  // namespace

std::string_view measure_name(Measure m) {
  for (const auto& s : kSpellings) {
    if (s.measure == m) return s.name;
  }
  return "?";
}

std::optional<Measure> parse_measure(std::string_view name) {
  for (const auto& s : kSpellings) {
    if (s.name == name) return s.measure;
  }
  return std::nullopt;
}

namespace {

// (1 + x) ln(1 + x) - x, without cancellation near x = 0.
double excess_entropy(double x) {
  if (std::fabs(x) >= 0.1) return (1.0 + x) * std::log1p(x) - x;
  double sum = 0.0;
  double power = x * x;
  for (int k = 2; k < 40; ++k) {
    const double term = power / (k * (k - 1.0));
    sum += (k % 2 == 0) ? term : -term;
    if (std::fabs(term) <= 1e-18 * std::fabs(sum)) break;
    power *= x;
  }
  return sum;
}

}  // namespace

double score(const ContingencyTable& table, Measure measure) {
  if (table.o11 == 0) {
    throw DomainError("association measure undefined for an unobserved pair (o11 = 0)");
  }
  const double o = static_cast<double>(table.o11);
  const double e = table.e11();
  switch (measure) {
    case Measure::kOE:
      return o / e;
    case Measure::kMI:
      return std::log2(o / e);
    case Measure::kLocalMI:
      return o * std::log2(o / e);
    case Measure::kZScore:
      return (o - e) / std::sqrt(e);
    case Measure::kTScore:
      return (o - e) / std::sqrt(o);
    case Measure::kSimpleLL:
      return 2.0 * e * excess_entropy((o - e) / e);
  }
  throw std::invalid_argument("unknown measure");
}

std::size_t PairHash::operator()(const LemmaPair& p) const noexcept {
  std::size_t h = std::hash<std::string>{}(p.first);
  return h ^ (std::hash<std::string>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

void PairCounter::add(const std::string& a, const std::string& b, std::uint64_t count) {
  joint_[{a, b}] += count;
  rows_[a] += count;
  cols_[b] += count;
  total_ += count;
}

void PairCounter::add_all(const std::vector<LemmaPair>& instances) {
  for (const auto& [a, b] : instances) add(a, b);
}

void PairCounter::merge(const PairCounter& other) {
  for (const auto& [key, count] : other.joint_) joint_[key] += count;
  for (const auto& [key, count] : other.rows_) rows_[key] += count;
  for (const auto& [key, count] : other.cols_) cols_[key] += count;
  total_ += other.total_;
}

TableMap PairCounter::tables() const {
  if (total_ == 0) throw DomainError("empty instance universe: sample size is zero");
  TableMap out;
  for (const auto& [key, o11] : joint_) {
    ContingencyTable t;
    t.o11 = o11;
    t.o12 = rows_.at(key.first) - o11;
    t.o21 = cols_.at(key.second) - o11;
    t.o22 = total_ - t.o11 - t.o12 - t.o21;
    out.emplace(key, t);
  }
  return out;
}

TableMap build_tables(const std::vector<LemmaPair>& instances) {
  PairCounter counter;
  counter.add_all(instances);
  return counter.tables();
}

std::string ScoreContext::label() const {
  if (kind == Kind::kIntralingual) return "intra-" + language;
  return fmt::format("inter-{}-{}", language, other_language);
}

ScoreTable::ScoreTable(ScoreContext context, Measure measure, const TableMap& tables)
    : context_(std::move(context)), measure_(measure) {
  for (const auto& [key, table] : tables) {
    entries_.emplace_hint(entries_.end(), key, Entry{table, score(table, measure)});
  }
}

const ScoreTable::Entry* ScoreTable::find(const std::string& a, const std::string& b,
                                          Orientation orientation) const {
  LemmaPair key = orientation == Orientation::kForward ? LemmaPair{a, b} : LemmaPair{b, a};
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<LemmaPair> intralingual_instances(const BitextCorpus& corpus,
                                              const ExtractionConfig& cfg, Side side) {
  std::vector<LemmaPair> out;
  for (const auto& pair : corpus.pairs) {
    const Sentence& sent = side == Side::kL1 ? pair.l1_sentence : pair.l2_sentence;
    for (const auto& dep : extract_dep_pairs(sent, cfg, side)) {
      out.emplace_back(dep.verb_token().lemma, dep.noun_token().lemma);
    }
  }
  return out;
}

std::vector<LemmaPair> interlingual_instances(const BitextCorpus& corpus,
                                              const ExtractionConfig& cfg) {
  std::vector<LemmaPair> out;
  for (const auto& pair : corpus.pairs) {
    auto inst = extract_alignment_instances(pair, cfg);
    out.insert(out.end(), std::make_move_iterator(inst.begin()),
               std::make_move_iterator(inst.end()));
  }
  return out;
}

ScoreTable intralingual_scores(const BitextCorpus& corpus, const ExtractionConfig& cfg,
                               Side side, Measure measure) {
  const std::string& lang = side == Side::kL1 ? corpus.l1 : corpus.l2;
  return ScoreTable(ScoreContext::intralingual(lang), measure,
                    build_tables(intralingual_instances(corpus, cfg, side)));
}

ScoreTable interlingual_scores(const BitextCorpus& corpus, const ExtractionConfig& cfg,
                               Measure measure) {
  return ScoreTable(ScoreContext::interlingual(corpus.l1, corpus.l2), measure,
                    build_tables(interlingual_instances(corpus, cfg)));
}

}  // namespace svcminer
