#include "svcminer/bitext.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string_view>

#include <fmt/format.h>

namespace svcminer {

namespace {

bool parse_index(std::string_view text, std::size_t& value) {
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      cols.push_back(line.substr(start));
      return cols;
    }
    cols.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::string_view trim(std::string_view s) {
  const auto* ws = " \t";
  std::size_t b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

class ConlluReader {
 public:
  ConlluReader(const std::string& language, ParseMode mode, const std::string& source)
      : language_(language), mode_(mode), source_(source) {}

  ConlluResult read(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      chomp(line);
      if (line.empty()) {
        flush();
        continue;
      }
      in_block_ = true;
      if (line.front() == '#') {
        comment(line);
      } else {
        token_line(line, lineno);
      }
    }
    flush();
    return std::move(result_);
  }

 private:
  void report(std::size_t line, std::string message) {
    Diagnostic diag{source_, line, std::move(message)};
    if (mode_ == ParseMode::kStrict) throw FormatError(std::move(diag));
    result_.diagnostics.push_back(std::move(diag));
    block_failed_ = true;
  }

  void comment(std::string_view line) {
    std::string_view body = trim(line.substr(1));
    std::size_t eq = body.find('=');
    if (eq == std::string_view::npos) return;
    if (trim(body.substr(0, eq)) == "sent_id") sent_id_ = std::string(trim(body.substr(eq + 1)));
  }

  void token_line(std::string_view line, std::size_t lineno) {
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      report(lineno, fmt::format("expected 10 tab-separated columns, found {}", cols.size()));
      return;
    }
    std::string_view id = cols[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) {
      return;  // multiword token range or empty node
    }
    Token tok;
    if (!parse_index(id, tok.index) || tok.index == 0) {
      report(lineno, fmt::format("invalid token ID '{}'", id));
      return;
    }
    if (!parse_index(cols[6], tok.head)) {
      report(lineno, fmt::format("invalid HEAD '{}'", cols[6]));
      return;
    }
    tok.surface = cols[1];
    tok.lemma = cols[2] == "_" ? tok.surface : std::string(cols[2]);
    tok.upos = cols[3];
    tok.xpos = cols[4];
    tok.deprel = cols[7];
    if (tok.deprel.empty()) {
      report(lineno, "empty DEPREL");
      return;
    }
    tokens_.push_back(std::move(tok));
    lines_.push_back(lineno);
  }

  void validate() {
    const std::size_t n = tokens_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Token& tok = tokens_[i];
      if (tok.index != i + 1) {
        report(lines_[i], fmt::format("token ID {} out of sequence, expected {}", tok.index, i + 1));
        return;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Token& tok = tokens_[i];
      if (tok.head > n) {
        report(lines_[i], fmt::format("HEAD {} out of range for sentence of {} tokens", tok.head, n));
      } else if (tok.head == tok.index) {
        report(lines_[i], fmt::format("token {} is its own head", tok.index));
      }
    }
  }

  void flush() {
    if (!in_block_) return;
    ++block_count_;
    if (!block_failed_) validate();
    bool has_content = !tokens_.empty() || block_failed_;
    if (has_content) {
      Sentence sent;
      sent.language = language_;
      sent.sentence_id = sent_id_.empty() ? std::to_string(block_count_) : sent_id_;
      if (block_failed_) {
        sent.rejected = true;
      } else {
        sent.tokens = std::move(tokens_);
      }
      result_.sentences.push_back(std::move(sent));
    }
    tokens_.clear();
    lines_.clear();
    sent_id_.clear();
    block_failed_ = false;
    in_block_ = false;
  }

  const std::string& language_;
  ParseMode mode_;
  const std::string& source_;
  ConlluResult result_;

  std::vector<Token> tokens_;
  std::vector<std::size_t> lines_;
  std::string sent_id_;
  std::size_t block_count_ = 0;
  bool block_failed_ = false;
  bool in_block_ = false;
};

}  // namespace

bool SentencePair::has_link(std::size_t src, std::size_t tgt) const {
  return std::binary_search(links.begin(), links.end(), AlignmentLink{src, tgt});
}

std::string Diagnostic::to_string() const {
  return fmt::format("{}:{}: {}", source, line, message);
}

FormatError::FormatError(Diagnostic diag)
    : std::runtime_error(diag.to_string()), diag_(std::move(diag)) {}

ConlluResult parse_conllu(std::istream& in, const std::string& language, ParseMode mode,
                          const std::string& source) {
  return ConlluReader(language, mode, source).read(in);
}

AlignmentResult parse_alignments(std::istream& in, ParseMode mode, const std::string& source) {
  AlignmentResult result;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    chomp(line);
    LinkSet links;
    std::istringstream fields(line);
    std::string item;
    while (fields >> item) {
      std::string_view sv(item);
      std::size_t dash = sv.find('-');
      std::size_t src = 0;
      std::size_t tgt = 0;
      if (dash == std::string_view::npos || !parse_index(sv.substr(0, dash), src) ||
          !parse_index(sv.substr(dash + 1), tgt)) {
        Diagnostic diag{source, lineno, fmt::format("malformed alignment pair '{}'", item)};
        if (mode == ParseMode::kStrict) throw FormatError(std::move(diag));
        result.diagnostics.push_back(std::move(diag));
        continue;
      }
      links.push_back({src + 1, tgt + 1});
    }
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    result.link_sets.push_back(std::move(links));
  }
  return result;
}

AssembleResult assemble_bitext(std::vector<Sentence> l1_sents, std::vector<Sentence> l2_sents,
                               std::vector<LinkSet> link_sets, ParseMode mode,
                               const std::string& align_source) {
  if (l1_sents.size() != l2_sents.size() || l1_sents.size() != link_sets.size()) {
    throw std::invalid_argument(fmt::format(
        "sentence pairing mismatch: {} L1 sentences, {} L2 sentences, {} alignment lines",
        l1_sents.size(), l2_sents.size(), link_sets.size()));
  }
  AssembleResult result;
  if (!l1_sents.empty()) {
    result.corpus.l1 = l1_sents.front().language;
    result.corpus.l2 = l2_sents.front().language;
    if (result.corpus.l1 == result.corpus.l2) {
      throw std::invalid_argument("both sides of the bitext carry language '" +
                                  result.corpus.l1 + "'");
    }
  }
  result.corpus.pairs.reserve(l1_sents.size());
  for (std::size_t k = 0; k < l1_sents.size(); ++k) {
    Sentence& s1 = l1_sents[k];
    Sentence& s2 = l2_sents[k];
    if (s1.language != result.corpus.l1 || s2.language != result.corpus.l2) {
      throw std::invalid_argument(fmt::format("pair {} has inconsistent languages {}/{}", k + 1,
                                              s1.language, s2.language));
    }
    if (s1.rejected || s2.rejected) {
      ++result.dropped_pairs;
      continue;
    }
    SentencePair pair;
    pair.pair_id = s1.sentence_id + "|" + s2.sentence_id;
    for (const AlignmentLink& link : link_sets[k]) {
      if (link.src_index < 1 || link.src_index > s1.size() || link.tgt_index < 1 ||
          link.tgt_index > s2.size()) {
        Diagnostic diag{align_source, k + 1,
                        fmt::format("link {}-{} out of range for sentence lengths {}/{}",
                                    link.src_index - 1, link.tgt_index - 1, s1.size(), s2.size())};
        if (mode == ParseMode::kStrict) throw FormatError(std::move(diag));
        result.diagnostics.push_back(std::move(diag));
        continue;
      }
      pair.links.push_back(link);
    }
    std::sort(pair.links.begin(), pair.links.end());
    pair.links.erase(std::unique(pair.links.begin(), pair.links.end()), pair.links.end());
    pair.l1_sentence = std::move(s1);
    pair.l2_sentence = std::move(s2);
    result.corpus.pairs.push_back(std::move(pair));
  }
  return result;
}

void write_conllu(std::ostream& out, const std::vector<Sentence>& sentences) {
  for (const Sentence& sent : sentences) {
    out << "# sent_id = " << sent.sentence_id << '\n';
    for (const Token& tok : sent.tokens) {
      out << tok.index << '\t' << tok.surface << '\t' << tok.lemma << '\t' << tok.upos << '\t'
          << (tok.xpos.empty() ? "_" : tok.xpos) << "\t_\t" << tok.head << '\t' << tok.deprel
          << "\t_\t_\n";
    }
    out << '\n';
  }
}

void write_alignments(std::ostream& out, const std::vector<LinkSet>& link_sets) {
  for (const LinkSet& links : link_sets) {
    bool first = true;
    for (const AlignmentLink& link : links) {
      if (!first) out << ' ';
      out << link.src_index - 1 << '-' << link.tgt_index - 1;
      first = false;
    }
    out << '\n';
  }
}

}  // namespace svcminer
