#pragma once

// Percentile normalisation of interlingual scores and the q/r ranking of
// lemma tuples.

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "svcminer/assoc.hpp"
#include "svcminer/extract.hpp"

namespace svcminer {

// A lemma tuple whose pairs are missing from a score table: the tables were
// built from a different corpus or configuration than the tuples.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// For each score, the fraction of all scores that are <= it, in input order.
std::vector<double> cumulative_percentile_ranks(std::span<const double> scores);

class PercentileTable {
 public:
  explicit PercentileTable(const ScoreTable& scores);

  const ScoreTable& source() const { return *source_; }
  std::size_t size() const { return cpr_.size(); }
  const std::map<LemmaPair, double>& values() const { return cpr_; }

  // nullptr when the pair was never observed
  const double* find(const std::string& a, const std::string& b,
                     Orientation orientation = Orientation::kForward) const;

 private:
  const ScoreTable* source_;
  std::map<LemmaPair, double> cpr_;
};

/// cpr(p) = |{p' : score(p') <= score(p)}| / |table|. Throws
/// std::invalid_argument on an empty table.
PercentileTable compute_cpr(const ScoreTable& scores);

struct RankingParams {
  Measure x = Measure::kLocalMI;  // interlingual
  Measure y = Measure::kOE;       // intralingual
  double alpha = 1.0;
  double beta = 1.0;
  double delta = 1.0;
  std::size_t min_freq = 2;

  // Throws std::invalid_argument on negative weights, alpha + beta == 0,
  // delta <= 0 or min_freq == 0.
  void validate() const;
};

struct QRatio {
  double cpr_noun = 0.0;
  double cpr_verb = 0.0;
  double q = 0.0;
};

inline double q_ratio(double cpr_noun, double cpr_verb, double delta) {
  return (delta + cpr_noun) / (delta + cpr_verb);
}

/// q from the noun pair (l1 noun, l2 noun) and the verb pair (l1 verb, l2 verb).
QRatio compute_q(const LemmaTuple& tuple, const PercentileTable& cprs, double delta);

struct RankedCandidate {
  LemmaTuple tuple;
  double cpr_noun = 0.0;
  double cpr_verb = 0.0;
  double q = 0.0;
  double am_y_l1 = 0.0;
  double am_y_l2 = 0.0;
  double r = 0.0;
};

RankedCandidate compute_r(const LemmaTuple& tuple, const QRatio& q, const ScoreTable& intra_l1,
                          const ScoreTable& intra_l2, const RankingParams& params);

struct RankingTables {
  const ScoreTable& interlingual;  // measure x
  const ScoreTable& intra_l1;      // measure y
  const ScoreTable& intra_l2;      // measure y
};

/// r rounded to 12 significant digits. Values that are equal in exact
/// arithmetic but differ in the last bits compare as ties when ordering.
double ranking_key(double r);

/// Drops tuples below min_freq, scores the rest, and orders them by r (as
/// ranking_key), then frequency, then lemmas.
std::vector<RankedCandidate> rank_candidates(const std::vector<LemmaTuple>& tuples,
                                             const RankingParams& params,
                                             const RankingTables& tables);

}  // namespace svcminer
