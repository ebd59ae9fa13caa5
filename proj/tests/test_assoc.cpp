#include <doctest.h>

#include <cmath>
#include <random>

#include "measure_oracle.hpp"
#include "svcminer/assoc.hpp"
#include "test_support.hpp"

using namespace svcminer;
using namespace svcminer::testing;

namespace {

ContingencyTable table(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  return {a, b, c, d};
}

}  // namespace

TEST_CASE("table construction by hand count") {
  auto t = build_tables({{"a", "x"}, {"a", "y"}, {"b", "x"}});
  REQUIRE(t.size() == 3);
  const auto& ax = t.at({"a", "x"});
  CHECK(ax == table(1, 1, 1, 0));
  CHECK(ax.n() == 3);
  CHECK(ax.e11() == doctest::Approx(4.0 / 3.0));
  CHECK_FALSE(t.contains({"b", "y"}));

  auto single = build_tables({{"a", "x"}});
  CHECK(single.at({"a", "x"}) == table(1, 0, 0, 0));
  CHECK(single.at({"a", "x"}).e11() == 1.0);

  auto twice = build_tables({{"a", "x"}, {"a", "x"}});
  CHECK(twice.at({"a", "x"}) == table(2, 0, 0, 0));
  CHECK(twice.at({"a", "x"}).e11() == 2.0);
  CHECK(score(twice.at({"a", "x"}), Measure::kOE) == 1.0);

  CHECK_THROWS_AS(build_tables({}), DomainError);
}

TEST_CASE("measure values from hand arithmetic") {
  // n = 100, r1 = 10, c1 = 20, e11 = 2
  auto t = table(4, 6, 16, 74);
  CHECK(t.e11() == 2.0);
  CHECK(score(t, Measure::kOE) == doctest::Approx(2.0));
  CHECK(score(t, Measure::kMI) == doctest::Approx(1.0));
  CHECK(score(t, Measure::kLocalMI) == doctest::Approx(4.0));
  CHECK(score(t, Measure::kZScore) == doctest::Approx(1.4142135623730951));
  CHECK(score(t, Measure::kTScore) == doctest::Approx(1.0));
  CHECK(score(t, Measure::kSimpleLL) == doctest::Approx(1.5451774444795623));  // 2(4 ln 2 - 2)

  auto u = table(2, 0, 0, 2);
  CHECK(u.e11() == 1.0);
  CHECK(score(u, Measure::kOE) == doctest::Approx(2.0));
  CHECK(score(u, Measure::kMI) == doctest::Approx(1.0));
  CHECK(score(u, Measure::kLocalMI) == doctest::Approx(2.0));
  CHECK(score(u, Measure::kZScore) == doctest::Approx(1.0));
  CHECK(score(u, Measure::kTScore) == doctest::Approx(0.7071067811865476));
  CHECK(score(u, Measure::kSimpleLL) == doctest::Approx(0.7725887222397811));  // 2(2 ln 2 - 1)

  auto indep = table(1, 1, 1, 1);
  CHECK(score(indep, Measure::kOE) == 1.0);
  for (Measure m : {Measure::kMI, Measure::kLocalMI, Measure::kZScore, Measure::kTScore,
                    Measure::kSimpleLL}) {
    CHECK(score(indep, m) == 0.0);
  }
}

TEST_CASE("unobserved pair is a domain error") {
  CHECK_THROWS_AS(score(table(0, 3, 4, 5), Measure::kMI), DomainError);
}

TEST_CASE("measure names") {
  for (Measure m : kAllMeasures) CHECK(parse_measure(measure_name(m)) == m);
  CHECK(parse_measure("local-mi") == Measure::kLocalMI);
  CHECK_FALSE(parse_measure("dice").has_value());
}

TEST_CASE("measures agree with a direct transcription") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::uint64_t> cell(1, 1'000'000);
  for (int i = 0; i < 1000; ++i) {
    auto t = table(cell(rng), cell(rng), cell(rng), cell(rng));
    for (Measure m : kAllMeasures) {
      double want = oracle_score(t.o11, t.o12, t.o21, t.o22, m);
      CHECK(within_relative(score(t, m), want, 1e-9));
    }
  }
}

TEST_CASE("simple-ll keeps precision close to independence") {
  auto t = table(529539, 315955, 917535, 547140);
  double want = oracle_score(t.o11, t.o12, t.o21, t.o22, Measure::kSimpleLL);
  CHECK(want > 0.0);
  CHECK(within_relative(score(t, Measure::kSimpleLL), want, 1e-11));
  auto nudged = table(1'000'001, 1'000'000, 1'000'000, 1'000'000);
  CHECK(within_relative(score(nudged, Measure::kSimpleLL),
                        oracle_score(1'000'001, 1'000'000, 1'000'000, 1'000'000, Measure::kSimpleLL),
                        1e-9));
}

TEST_CASE("independence point") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint64_t> f(1, 1000);
  for (int i = 0; i < 500; ++i) {
    std::uint64_t a = f(rng), b = f(rng), c = f(rng), d = f(rng);
    auto t = table(a * c, a * d, b * c, b * d);  // o11 o22 == o12 o21
    REQUIRE(t.e11() == static_cast<double>(t.o11));
    CHECK(std::fabs(score(t, Measure::kOE) - 1.0) <= 1e-12);
    for (Measure m : {Measure::kMI, Measure::kLocalMI, Measure::kZScore, Measure::kTScore,
                      Measure::kSimpleLL}) {
      CHECK(std::fabs(score(t, m)) <= 1e-12);
    }
  }
}

TEST_CASE("measures increase with o11 at fixed marginals") {
  // Moving one unit into o11 keeps r1, c1 and n: o12, o21 shrink and o22 grows.
  // local-MI and simple-ll are one-sided: increasing only where o11 >= e11.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> f(1, 500);
  for (int i = 0; i < 300; ++i) {
    auto t = table(f(rng), f(rng), f(rng), f(rng));
    if (t.o12 == 0 || t.o21 == 0) continue;
    auto up = table(t.o11 + 1, t.o12 - 1, t.o21 - 1, t.o22 + 1);
    REQUIRE(up.e11() == t.e11());
    for (Measure m : kAllMeasures) {
      const bool one_sided = m == Measure::kLocalMI || m == Measure::kSimpleLL;
      if (one_sided && static_cast<double>(t.o11) < t.e11()) continue;
      CHECK(score(up, m) > score(t, m));
    }
  }
}

TEST_CASE("marginals and partitioned counting") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> w(0, 6);
  std::vector<LemmaPair> inst;
  for (int i = 0; i < 2000; ++i) {
    inst.emplace_back("a" + std::to_string(w(rng)), "b" + std::to_string(w(rng) % 4));
  }
  auto whole = build_tables(inst);
  std::uint64_t o11_sum = 0;
  for (const auto& [key, t] : whole) {
    CHECK(t.n() == inst.size());
    CHECK(t.o11 >= 1);
    CHECK(t.o11 <= std::min(t.r1(), t.c1()));
    o11_sum += t.o11;
  }
  CHECK(o11_sum == inst.size());

  for (std::size_t parts : {2u, 3u, 7u}) {
    std::vector<PairCounter> counters(parts);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      counters[(i * 31) % parts].add(inst[i].first, inst[i].second);
    }
    PairCounter merged;
    for (auto it = counters.rbegin(); it != counters.rend(); ++it) merged.merge(*it);
    CHECK(merged.tables() == whole);
  }
}

TEST_CASE("intralingual scores") {
  std::vector<SentencePair> pairs;
  for (int i = 0; i < 3; ++i) pairs.push_back(clause("treffen", "Entscheidung", "take", "decision", true, i));
  pairs.push_back(clause("spielen", "Rolle", "play", "role", false, 3));
  auto corpus = corpus_of(pairs);
  ExtractionConfig cfg;
  auto de = intralingual_scores(corpus, cfg, Side::kL1, Measure::kOE);
  CHECK(de.context().label() == "intra-de");
  CHECK(de.find("spielen", "Rolle")->score == doctest::Approx(4.0));
  CHECK(de.find("spielen", "Rolle")->table.e11() == doctest::Approx(0.25));
  CHECK(de.find("treffen", "Entscheidung")->score == doctest::Approx(4.0 / 3.0));
  CHECK(de.find("treffen", "Entscheidung")->table.e11() == doctest::Approx(2.25));

  auto only = corpus_of({clause("a", "b", "c", "d")});
  CHECK(intralingual_scores(only, cfg, Side::kL2, Measure::kOE).find("c", "d")->score == 1.0);

  auto none = corpus_of({make_pair(make_sentence("de", "x", {{"gehen", "VERB", 0, "root"}}),
                                   make_sentence("en", "y", {{"go", "VERB", 0, "root"}}),
                                   {{1, 1}})});
  CHECK_THROWS_AS(intralingual_scores(none, cfg, Side::kL1, Measure::kOE), DomainError);
}

TEST_CASE("interlingual scores") {
  ExtractionConfig cfg;
  // Entscheidung/decision always aligned together; the verbs scatter.
  std::vector<SentencePair> pairs = {
      clause("treffen", "Entscheidung", "make", "decision", true, 1),
      clause("treffen", "Entscheidung", "take", "decision", true, 2),
      clause("treffen", "Auswahl", "make", "choice", true, 3),
      clause("machen", "Fehler", "make", "mistake", true, 4),
  };
  auto corpus = corpus_of(pairs);
  auto oe = interlingual_scores(corpus, cfg, Measure::kOE);
  CHECK(oe.context().label() == "inter-de-en");
  // universe of 8 links; Entscheidung row 2, decision column 2, joint 2
  const auto* e = oe.find("Entscheidung", "decision");
  REQUIRE(e != nullptr);
  CHECK(e->table == table(2, 0, 0, 6));
  CHECK(e->score == doctest::Approx(4.0));
  // treffen row 3, make column 3, joint 2: 2 / (9/8)
  CHECK(oe.find("treffen", "make")->score == doctest::Approx(16.0 / 9.0));
  CHECK(oe.find("decision", "Entscheidung", Orientation::kReverse) == e);
  CHECK(oe.find("decision", "Entscheidung") == nullptr);

  auto single = corpus_of({make_pair(make_sentence("de", "x", {{"Haus", "NOUN", 0, "root"}}),
                                     make_sentence("en", "y", {{"house", "NOUN", 0, "root"}}),
                                     {{1, 1}})});
  CHECK(interlingual_scores(single, cfg, Measure::kOE).find("Haus", "house")->score == 1.0);
}
