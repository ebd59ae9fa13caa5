#include "svcminer/rank.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace svcminer {

std::vector<double> cumulative_percentile_ranks(std::span<const double> scores) {
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<double> out;
  out.reserve(scores.size());
  for (double s : scores) {
    auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), s) - sorted.begin();
    out.push_back(static_cast<double>(at_or_below) / n);
  }
  return out;
}

PercentileTable::PercentileTable(const ScoreTable& scores) : source_(&scores) {
  if (scores.empty()) throw std::invalid_argument("cumulative percentile rank of an empty table");
  std::vector<double> values;
  values.reserve(scores.size());
  for (const auto& [key, entry] : scores.entries()) values.push_back(entry.score);
  auto ranks = cumulative_percentile_ranks(values);
  std::size_t i = 0;
  for (const auto& [key, entry] : scores.entries()) cpr_.emplace_hint(cpr_.end(), key, ranks[i++]);
}

const double* PercentileTable::find(const std::string& a, const std::string& b,
                                    Orientation orientation) const {
  LemmaPair key = orientation == Orientation::kForward ? LemmaPair{a, b} : LemmaPair{b, a};
  auto it = cpr_.find(key);
  return it == cpr_.end() ? nullptr : &it->second;
}

PercentileTable compute_cpr(const ScoreTable& scores) { return PercentileTable(scores); }

void RankingParams::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0)) throw std::invalid_argument("alpha and beta must be >= 0");
  if (!(alpha + beta > 0.0)) throw std::invalid_argument("alpha + beta must be > 0");
  if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
  if (min_freq < 1) throw std::invalid_argument("min-freq must be >= 1");
}

QRatio compute_q(const LemmaTuple& tuple, const PercentileTable& cprs, double delta) {
  const double* noun = cprs.find(tuple.l1_noun, tuple.l2_noun);
  // The verb pair is written L2-first in the ratio; under symmetric
  // interlingual association it is the same entry as (l1 verb, l2 verb).
  const double* verb = cprs.find(tuple.l2_verb, tuple.l1_verb, Orientation::kReverse);
  if (noun == nullptr || verb == nullptr) {
    throw ConsistencyError(fmt::format(
        "tuple ({}, {}, {}, {}) has no interlingual score for its {} pair", tuple.l1_verb,
        tuple.l1_noun, tuple.l2_verb, tuple.l2_noun, noun == nullptr ? "noun" : "verb"));
  }
  return {*noun, *verb, q_ratio(*noun, *verb, delta)};
}

RankedCandidate compute_r(const LemmaTuple& tuple, const QRatio& q, const ScoreTable& intra_l1,
                          const ScoreTable& intra_l2, const RankingParams& params) {
  const auto* l1 = intra_l1.find(tuple.l1_verb, tuple.l1_noun);
  const auto* l2 = intra_l2.find(tuple.l2_verb, tuple.l2_noun);
  if (l1 == nullptr || l2 == nullptr) {
    throw ConsistencyError(fmt::format("tuple ({}, {}, {}, {}) has no intralingual score on {}",
                                       tuple.l1_verb, tuple.l1_noun, tuple.l2_verb, tuple.l2_noun,
                                       l1 == nullptr ? "L1" : "L2"));
  }
  RankedCandidate c;
  c.tuple = tuple;
  c.cpr_noun = q.cpr_noun;
  c.cpr_verb = q.cpr_verb;
  c.q = q.q;
  c.am_y_l1 = l1->score;
  c.am_y_l2 = l2->score;
  c.r = (params.alpha * c.am_y_l1 + params.beta * c.am_y_l2) * c.q;
  return c;
}

double ranking_key(double r) {
  if (r == 0.0 || !std::isfinite(r)) return r;
  const double scale = std::pow(10.0, 11 - static_cast<int>(std::floor(std::log10(std::fabs(r)))));
  return std::round(r * scale) / scale;
}

std::vector<RankedCandidate> rank_candidates(const std::vector<LemmaTuple>& tuples,
                                             const RankingParams& params,
                                             const RankingTables& tables) {
  params.validate();
  std::vector<RankedCandidate> out;
  if (tuples.empty()) return out;
  const PercentileTable cprs = compute_cpr(tables.interlingual);
  for (const auto& tuple : tuples) {
    if (tuple.freq < params.min_freq) continue;
    out.push_back(compute_r(tuple, compute_q(tuple, cprs, params.delta), tables.intra_l1,
                            tables.intra_l2, params));
  }
  std::sort(out.begin(), out.end(), [](const RankedCandidate& a, const RankedCandidate& b) {
    const double ka = ranking_key(a.r);
    const double kb = ranking_key(b.r);
    if (ka != kb) return ka > kb;
    if (a.tuple.freq != b.tuple.freq) return a.tuple.freq > b.tuple.freq;
    return a.tuple.key() < b.tuple.key();
  });
  return out;
}

}  // namespace svcminer
