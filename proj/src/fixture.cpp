#include "svcminer/fixture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace svcminer {

namespace {

namespace fs = std::filesystem;

struct Verb {
  std::string de;
  std::string de_participle;
  std::string en;
  std::string en_participle;
};

struct Noun {
  std::string de;
  std::string de_article;
  std::string en;
};

const std::vector<Verb> kPoolVerbs = {
    {"lesen", "gelesen", "read", "read"},       {"kaufen", "gekauft", "buy", "bought"},
    {"sehen", "gesehen", "see", "seen"},        {"finden", "gefunden", "find", "found"},
    {"brauchen", "gebraucht", "need", "needed"},
};

const std::vector<Noun> kPoolNouns = {
    {"Buch", "das", "book"},      {"Haus", "das", "house"},   {"Auto", "das", "car"},
    {"Bild", "das", "picture"},   {"Plan", "den", "plan"},    {"Rechnung", "die", "bill"},
    {"Preis", "den", "price"},    {"Blume", "die", "flower"},
};

// Inflection for the special vocabulary; unknown lemmas inflect as themselves.
const std::map<std::string, std::string> kParticiples = {
    {"schenken", "geschenkt"}, {"pay", "paid"},           {"give", "given"},
    {"zahlen", "gezahlt"},     {"schreiben", "geschrieben"}, {"write", "written"},
    {"zulassen", "zugelassen"}, {"make", "made"},         {"bekämpfen", "bekämpft"},
    {"reduce", "reduced"},
};

const std::map<std::string, std::string> kArticles = {
    {"Aufmerksamkeit", "die"}, {"Brief", "den"}, {"Ausnahme", "eine"},
    {"Arbeitslosigkeit", "die"},
};

std::string participle(const std::string& lemma) {
  for (const auto& v : kPoolVerbs) {
    if (v.de == lemma) return v.de_participle;
    if (v.en == lemma) return v.en_participle;
  }
  auto it = kParticiples.find(lemma);
  return it == kParticiples.end() ? lemma : it->second;
}

std::string article(const std::string& noun) {
  for (const auto& n : kPoolNouns) {
    if (n.de == noun) return n.de_article;
  }
  auto it = kArticles.find(noun);
  return it == kArticles.end() ? "die" : it->second;
}

std::size_t share(std::size_t n, std::size_t percent, std::size_t floor) {
  return std::max(floor, (n * percent + 50) / 100);
}

struct ConlluToken {
  std::string form;
  std::string lemma;
  std::string upos;
  std::size_t head;
  std::string deprel;
};

struct RenderedPair {
  std::vector<ConlluToken> de;
  std::vector<ConlluToken> en;
  std::vector<std::pair<std::size_t, std::size_t>> links;  // 1-based
};

RenderedPair render(const FixtureClause& c, bool extra_det_link) {
  RenderedPair p;
  if (!c.perfect) {
    p.de = {{"Wir", "_", "PRON", 2, "nsubj"},
            {c.de_verb, c.de_verb, "VERB", 0, "root"},
            {article(c.de_noun), "der", "DET", 4, "det"},
            {c.de_noun, c.de_noun, "NOUN", 2, "obj"}};
    p.en = {{"We", "we", "PRON", 2, "nsubj"},
            {c.en_verb, c.en_verb, "VERB", 0, "root"},
            {"the", "the", "DET", 4, "det"},
            {c.en_noun, c.en_noun, "NOUN", 2, "obj"}};
    p.links = {{1, 1}, {3, 3}, {4, 4}};
    if (c.verb_aligned) p.links.emplace_back(2, 2);
    if (extra_det_link) p.links.emplace_back(3, 4);
    if (c.adverb) {
      p.de.push_back({"heute", "heute", "ADV", 2, "advmod"});
      p.en.push_back({"today", "today", "ADV", 2, "advmod"});
      p.links.emplace_back(5, 5);
    }
  } else {
    p.de = {{"Wir", "_", "PRON", 5, "nsubj"},
            {"haben", "haben", "AUX", 5, "aux"},
            {article(c.de_noun), "der", "DET", 4, "det"},
            {c.de_noun, c.de_noun, "NOUN", 5, "obj"},
            {participle(c.de_verb), c.de_verb, "VERB", 0, "root"}};
    p.en = {{"We", "we", "PRON", 3, "nsubj"},
            {"have", "have", "AUX", 3, "aux"},
            {participle(c.en_verb), c.en_verb, "VERB", 0, "root"},
            {"the", "the", "DET", 5, "det"},
            {c.en_noun, c.en_noun, "NOUN", 3, "obj"}};
    p.links = {{1, 1}, {2, 2}, {3, 4}, {4, 5}};
    if (c.verb_aligned) p.links.emplace_back(5, 3);
  }
  std::sort(p.links.begin(), p.links.end());
  return p;
}

std::string token_line(std::size_t index, const ConlluToken& t) {
  return fmt::format("{}\t{}\t{}\t{}\t_\t_\t{}\t{}\t_\t_", index, t.form, t.lemma, t.upos, t.head,
                     t.deprel);
}

// --- brute-force oracle -------------------------------------------------
// Plain loops over the generator records. Shares no code with the
// extraction, statistics or ranking modules.

using Pair = std::pair<std::string, std::string>;

struct OracleTable {
  double o11, r1, c1, n;
};

OracleTable count_table(const std::vector<Pair>& universe, const Pair& p) {
  double o11 = 0, r1 = 0, c1 = 0;
  for (const auto& inst : universe) {
    if (inst.first == p.first) r1 += 1;
    if (inst.second == p.second) c1 += 1;
    if (inst == p) o11 += 1;
  }
  return {o11, r1, c1, static_cast<double>(universe.size())};
}

double oracle_measure(const OracleTable& t, Measure m) {
  const double o = t.o11;
  const double e = t.r1 * t.c1 / t.n;
  const double ln2 = std::log(2.0);
  switch (m) {
    case Measure::kOE: return o / e;
    case Measure::kMI: return std::log(o / e) / ln2;
    case Measure::kLocalMI: return o * (std::log(o) - std::log(e)) / ln2;
    case Measure::kZScore: return (o - e) / std::sqrt(e);
    case Measure::kTScore: return (o - e) / std::sqrt(o);
    case Measure::kSimpleLL: return 2.0 * (o * std::log(o / e) - o + e);
  }
  return 0.0;
}

std::map<Pair, double> oracle_scores(const std::vector<Pair>& universe, Measure m) {
  std::map<Pair, double> out;
  for (const auto& p : universe) {
    if (!out.contains(p)) out[p] = oracle_measure(count_table(universe, p), m);
  }
  return out;
}

std::map<Pair, double> oracle_cpr(const std::map<Pair, double>& scores) {
  std::map<Pair, double> out;
  for (const auto& [p, s] : scores) {
    double at_or_below = 0;
    for (const auto& [p2, s2] : scores) {
      if (s2 <= s) at_or_below += 1;
    }
    out[p] = at_or_below / static_cast<double>(scores.size());
  }
  return out;
}

std::string num17(double v) { return fmt::format("{:.17g}", v); }

// Ordering key: r printed to 12 significant digits.
double oracle_order_key(double r) { return std::stod(fmt::format("{:.11e}", r)); }

}  // namespace

void FixtureSpec::validate() const {
  if (n_pairs < 20) throw std::invalid_argument("fixture needs at least 20 sentence pairs");
  if (defects > n_pairs) throw std::invalid_argument("more defects than sentence pairs");
}

FixtureCorpus build_fixture(const FixtureSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  auto pick = [&rng](std::size_t size) {
    return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
  };
  const std::size_t n = spec.n_pairs;
  const std::size_t planted = share(n, 6, 2);
  const std::size_t planted_unaligned = share(n, 2, 1);
  const std::size_t planted_verb_other = share(n, 6, 2);  // planted L1 verb, other L2 verb
  const std::size_t planted_verb_other_src = share(n, 6, 2);  // other L1 verb, planted L2 verb
  const std::size_t distractor = share(n, 3, 2);
  const std::size_t distractor_verb_other = share(n, 6, 2);
  const std::size_t distractor_noun_other = share(n, 6, 2);

  std::vector<FixtureClause> clauses;
  auto pool_noun = [&] { return kPoolNouns[pick(kPoolNouns.size())]; };
  auto pool_verb = [&] { return kPoolVerbs[pick(kPoolVerbs.size())]; };

  const auto& pv = spec.planted_verb;
  const auto& pn = spec.planted_noun;
  const auto& dv = spec.distractor_verb;
  const auto& dn = spec.distractor_noun;
  for (std::size_t i = 0; i < planted; ++i) clauses.push_back({pv.de, pn.de, pv.en, pn.en, true});
  for (std::size_t i = 0; i < planted_unaligned; ++i) {
    clauses.push_back({pv.de, pn.de, pv.en, pn.en, false});
  }
  for (std::size_t i = 0; i < planted_verb_other; ++i) {
    auto noun = pool_noun();
    clauses.push_back({pv.de, noun.de, "give", noun.en, true});
  }
  for (std::size_t i = 0; i < planted_verb_other_src; ++i) {
    auto noun = pool_noun();
    clauses.push_back({"zahlen", noun.de, pv.en, noun.en, true});
  }
  for (std::size_t i = 0; i < distractor; ++i) clauses.push_back({dv.de, dn.de, dv.en, dn.en, true});
  for (std::size_t i = 0; i < distractor_verb_other; ++i) {
    auto noun = pool_noun();
    clauses.push_back({dv.de, noun.de, dv.en, noun.en, true});
  }
  for (std::size_t i = 0; i < distractor_noun_other; ++i) {
    auto verb = pool_verb();
    clauses.push_back({verb.de, dn.de, verb.en, dn.en, true});
  }
  clauses.push_back({"zulassen", "Ausnahme", "make", "exception", true});
  clauses.push_back({"bekämpfen", "Arbeitslosigkeit", "reduce", "unemployment", true});
  if (clauses.size() > n) throw std::logic_error("fixture quota exceeds pair count");
  while (clauses.size() < n) {
    auto verb = pool_verb();
    auto noun = pool_noun();
    clauses.push_back({verb.de, noun.de, verb.en, noun.en, true});
  }
  std::shuffle(clauses.begin(), clauses.end(), rng);

  FixtureCorpus fx;
  std::vector<bool> extra_det(n);
  for (std::size_t k = 0; k < n; ++k) {
    FixtureClause& c = clauses[k];
    c.perfect = pick(3) == 0;
    c.adverb = !c.perfect && pick(4) == 0;
    extra_det[k] = !c.perfect && pick(10) == 0;
  }

  // defect slots: distinct pairs, kinds in rotation
  std::map<std::size_t, std::size_t> defect_kind;
  if (spec.defects > 0) {
    std::vector<std::size_t> slots(n);
    for (std::size_t k = 0; k < n; ++k) slots[k] = k;
    std::shuffle(slots.begin(), slots.end(), rng);
    for (std::size_t i = 0; i < spec.defects; ++i) defect_kind[slots[i]] = i % 3;
  }

  std::set<std::array<std::string, 4>> distinct;
  for (std::size_t k = 0; k < n; ++k) {
    const FixtureClause& c = clauses[k];
    RenderedPair r = render(c, extra_det[k]);
    auto kind = defect_kind.find(k);

    fx.l1_conllu.push_back(fmt::format("# sent_id = de-{:04}", k + 1));
    for (std::size_t i = 0; i < r.de.size(); ++i) {
      std::string line = token_line(i + 1, r.de[i]);
      if (kind != defect_kind.end() && kind->second == 0 && r.de[i].upos == "NOUN") {
        line = line.substr(0, line.rfind('\t'));
        fx.defects.push_back({"l1.conllu", fx.l1_conllu.size() + 1, "column count"});
      }
      fx.l1_conllu.push_back(std::move(line));
    }
    fx.l1_conllu.emplace_back();

    fx.l2_conllu.push_back(fmt::format("# sent_id = en-{:04}", k + 1));
    for (std::size_t i = 0; i < r.en.size(); ++i) {
      ConlluToken tok = r.en[i];
      if (kind != defect_kind.end() && kind->second == 1 && tok.upos == "NOUN") {
        tok.head = 99;
        fx.defects.push_back({"l2.conllu", fx.l2_conllu.size() + 1, "head out of range"});
      }
      fx.l2_conllu.push_back(token_line(i + 1, tok));
    }
    fx.l2_conllu.emplace_back();

    std::string links;
    for (const auto& [a, b] : r.links) {
      if (!links.empty()) links += ' ';
      links += fmt::format("{}-{}", a - 1, b - 1);
    }
    if (kind != defect_kind.end() && kind->second == 2) {
      links.replace(0, links.find(' '), "0:0");
      fx.defects.push_back({"align.txt", fx.align.size() + 1, "malformed alignment pair"});
    }
    fx.align.push_back(std::move(links));

    fx.tokens_l1 += r.de.size();
    fx.tokens_l2 += r.en.size();
    fx.alignment_instances += (c.verb_aligned ? 1 : 0) + 1 + (c.adverb ? 1 : 0);
    if (c.verb_aligned) {
      ++fx.aligned_tuples;
      distinct.insert({c.de_verb, c.de_noun, c.en_verb, c.en_noun});
    }
  }
  fx.distinct_lemma_tuples = distinct.size();
  fx.clauses = std::move(clauses);
  return fx;
}

std::vector<OracleRow> oracle_ranking(const FixtureCorpus& fixture, const RankingParams& params) {
  std::vector<Pair> intra_de;
  std::vector<Pair> intra_en;
  std::vector<Pair> inter;
  std::map<std::array<std::string, 4>, std::size_t> freq;
  for (const auto& c : fixture.clauses) {
    intra_de.emplace_back(c.de_verb, c.de_noun);
    intra_en.emplace_back(c.en_verb, c.en_noun);
    if (c.verb_aligned) inter.emplace_back(c.de_verb, c.en_verb);
    inter.emplace_back(c.de_noun, c.en_noun);
    if (c.adverb) inter.emplace_back("heute", "today");
    if (c.verb_aligned) ++freq[{c.de_verb, c.de_noun, c.en_verb, c.en_noun}];
  }
  const auto cpr = oracle_cpr(oracle_scores(inter, params.x));
  const auto am_de = oracle_scores(intra_de, params.y);
  const auto am_en = oracle_scores(intra_en, params.y);

  std::vector<OracleRow> rows;
  for (const auto& [key, f] : freq) {
    if (f < params.min_freq) continue;
    OracleRow row;
    row.tuple = {key[0], key[1], key[2], key[3], f};
    row.cpr_noun = cpr.at({key[1], key[3]});
    row.cpr_verb = cpr.at({key[0], key[2]});
    row.q = (params.delta + row.cpr_noun) / (params.delta + row.cpr_verb);
    row.am_y_l1 = am_de.at({key[0], key[1]});
    row.am_y_l2 = am_en.at({key[2], key[3]});
    row.r = (params.alpha * row.am_y_l1 + params.beta * row.am_y_l2) * row.q;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const OracleRow& a, const OracleRow& b) {
    const double ka = oracle_order_key(a.r);
    const double kb = oracle_order_key(b.r);
    if (ka != kb) return ka > kb;
    if (a.tuple.freq != b.tuple.freq) return a.tuple.freq > b.tuple.freq;
    return a.tuple.key() < b.tuple.key();
  });
  return rows;
}

void write_oracle_ranking(std::ostream& out, const std::vector<OracleRow>& rows) {
  out << "rank\tl1_verb\tl1_noun\tl2_verb\tl2_noun\tfreq\tcpr_noun\tcpr_verb\tq\tam_y_l1\tam_y_"
         "l2\tr\n";
  std::size_t rank = 0;
  for (const auto& row : rows) {
    fmt::print(out, "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n", ++rank, row.tuple.l1_verb,
               row.tuple.l1_noun, row.tuple.l2_verb, row.tuple.l2_noun, row.tuple.freq,
               num17(row.cpr_noun), num17(row.cpr_verb), num17(row.q), num17(row.am_y_l1),
               num17(row.am_y_l2), num17(row.r));
  }
}

std::vector<OracleRow> read_oracle_ranking(std::istream& in) {
  std::vector<OracleRow> rows;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, '\t')) cols.push_back(col);
    if (cols.size() != 12) throw std::runtime_error("expected ranking row with 12 columns: " + line);
    OracleRow row;
    row.tuple = {cols[1], cols[2], cols[3], cols[4], std::stoul(cols[5])};
    row.cpr_noun = std::stod(cols[6]);
    row.cpr_verb = std::stod(cols[7]);
    row.q = std::stod(cols[8]);
    row.am_y_l1 = std::stod(cols[9]);
    row.am_y_l2 = std::stod(cols[10]);
    row.r = std::stod(cols[11]);
    rows.push_back(std::move(row));
  }
  return rows;
}

FixtureFiles generate_fixture(const FixtureSpec& spec, const fs::path& out_dir) {
  FixtureCorpus fx = build_fixture(spec);
  fs::create_directories(out_dir);
  FixtureFiles files{out_dir / "l1.conllu", out_dir / "l2.conllu", out_dir / "align.txt", {},
                     out_dir / "fixture_stats.tsv"};
  auto dump = [](const fs::path& path, const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    for (const auto& line : lines) out << line << '\n';
  };
  dump(files.l1_conllu, fx.l1_conllu);
  dump(files.l2_conllu, fx.l2_conllu);
  dump(files.align, fx.align);
  {
    std::ofstream out(files.stats, std::ios::binary);
    out << "stage\tcount\n"
        << "sentence_pairs\t" << fx.clauses.size() << '\n'
        << "tokens_l1\t" << fx.tokens_l1 << '\n'
        << "tokens_l2\t" << fx.tokens_l2 << '\n'
        << "dep_pairs_l1\t" << fx.clauses.size() << '\n'
        << "dep_pairs_l2\t" << fx.clauses.size() << '\n'
        << "alignment_instances\t" << fx.alignment_instances << '\n'
        << "aligned_tuples\t" << fx.aligned_tuples << '\n'
        << "distinct_lemma_tuples\t" << fx.distinct_lemma_tuples << '\n';
  }
  if (!fx.defects.empty()) {
    std::ofstream out(out_dir / "defects.tsv", std::ios::binary);
    out << "file\tline\tkind\n";
    for (const auto& d : fx.defects) out << d.file << '\t' << d.line << '\t' << d.kind << '\n';
  }
  if (spec.defects == 0) {
    files.expected_ranking = out_dir / "expected_ranking.tsv";
    std::ofstream out(files.expected_ranking, std::ios::binary);
    write_oracle_ranking(out, oracle_ranking(fx, RankingParams{}));
  }
  return files;
}

}  // namespace svcminer
