#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "svcminer/bitext.hpp"

namespace svcminer::testing {

struct Tok {
  std::string form;
  std::string upos;
  std::size_t head;
  std::string deprel;
  std::string lemma = {};  // empty: same as form
};

inline Sentence make_sentence(const std::string& lang, const std::string& id,
                              std::initializer_list<Tok> toks) {
  Sentence s;
  s.language = lang;
  s.sentence_id = id;
  std::size_t i = 0;
  for (const auto& t : toks) {
    Token tok;
    tok.index = ++i;
    tok.surface = t.form;
    tok.lemma = t.lemma.empty() ? t.form : t.lemma;
    tok.upos = t.upos;
    tok.xpos = "_";
    tok.head = t.head;
    tok.deprel = t.deprel;
    s.tokens.push_back(std::move(tok));
  }
  return s;
}

inline SentencePair make_pair(Sentence l1, Sentence l2, LinkSet links) {
  SentencePair p;
  p.pair_id = l1.sentence_id + "|" + l2.sentence_id;
  p.l1_sentence = std::move(l1);
  p.l2_sentence = std::move(l2);
  std::sort(links.begin(), links.end());
  p.links = std::move(links);
  return p;
}

// Two-token clause: verb (root) and its object noun, linked as given.
inline SentencePair clause(const std::string& dv, const std::string& dn, const std::string& ev,
                           const std::string& en, bool verb_link = true, std::size_t n = 0) {
  auto id = std::to_string(n);
  LinkSet links{{2, 2}};
  if (verb_link) links.push_back({1, 1});
  return make_pair(make_sentence("de", "de" + id, {{dv, "VERB", 0, "root"}, {dn, "NOUN", 1, "obj"}}),
                   make_sentence("en", "en" + id, {{ev, "VERB", 0, "root"}, {en, "NOUN", 1, "obj"}}),
                   links);
}

inline BitextCorpus corpus_of(std::vector<SentencePair> pairs) {
  BitextCorpus c;
  c.l1 = "de";
  c.l2 = "en";
  c.pairs = std::move(pairs);
  return c;
}

// Random annotated pair: each token gets a random tag, head and label from
// small inventories so that object arcs and links collide often.
inline SentencePair random_pair(std::mt19937_64& rng, std::size_t id) {
  static const std::vector<std::string> tags = {"VERB", "VERB", "NOUN", "NOUN", "DET", "ADJ", "PRON"};
  static const std::vector<std::string> labels = {"obj", "obj", "dobj", "nsubj", "det", "iobj"};
  static const std::vector<std::string> lemmas = {"a", "b", "c", "d", "e", "f"};
  auto pick = [&rng](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto sentence = [&](const std::string& lang) {
    Sentence s;
    s.language = lang;
    s.sentence_id = lang + std::to_string(id);
    std::size_t n = 1 + pick(7);
    for (std::size_t i = 1; i <= n; ++i) {
      Token t;
      t.index = i;
      t.lemma = lemmas[pick(lemmas.size())] + lang;
      t.surface = t.lemma;
      t.upos = tags[pick(tags.size())];
      t.xpos = "_";
      do {
        t.head = pick(n + 1);
      } while (t.head == i);
      t.deprel = t.head == 0 ? "root" : labels[pick(labels.size())];
      s.tokens.push_back(std::move(t));
    }
    return s;
  };
  // Half the time, force a verb/object arc so tuples are common.
  auto plant = [&](Sentence& s) -> std::pair<std::size_t, std::size_t> {
    if (s.size() < 2 || pick(2) == 0) return {0, 0};
    std::size_t v = 1 + pick(s.size()), n;
    do {
      n = 1 + pick(s.size());
    } while (n == v);
    s.tokens[v - 1].upos = "VERB";
    s.tokens[n - 1].upos = "NOUN";
    s.tokens[n - 1].head = v;
    s.tokens[n - 1].deprel = labels[pick(3)];
    return {v, n};
  };
  Sentence a = sentence("de");
  Sentence b = sentence("en");
  auto [av, an] = plant(a);
  auto [bv, bn] = plant(b);
  LinkSet links;
  std::size_t nlinks = pick(a.size() * b.size() + 1);
  for (std::size_t k = 0; k < nlinks; ++k) links.push_back({1 + pick(a.size()), 1 + pick(b.size())});
  if (av != 0 && bv != 0) {
    if (pick(4) != 0) links.push_back({av, bv});
    if (pick(4) != 0) links.push_back({an, bn});
  }
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
  return make_pair(std::move(a), std::move(b), std::move(links));
}

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("svcminer-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(++counter));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace svcminer::testing
