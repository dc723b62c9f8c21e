// Tagged-corpus data model and file I/O: the vertical form<TAB>tag format,
// deterministic train/test splitting and contiguous balanced fold plans.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combitag/errors.hpp"

namespace combitag {

// Forms, tags and annotation values share one symbol alphabet: non-empty
// byte strings without tab or newline characters.
inline bool valid_symbol(const std::string& s) {
  if (s.empty())
    return false;
  for (char c : s)
    if (c == '\t' || c == '\n' || c == '\r')
      return false;
  return true;
}

struct TaggedToken {
  std::string form;
  std::string tag;
  bool operator==(const TaggedToken&) const = default;
};

using Sentence = std::vector<TaggedToken>;

struct Corpus {
  std::string tagset_name;
  std::vector<Sentence> sentences;

  std::size_t token_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences)
      n += s.size();
    return n;
  }
  bool empty() const { return sentences.empty(); }
  bool operator==(const Corpus&) const = default;
};

// Per-sentence fold assignment, indices in [0, fold_count).
struct FoldPlan {
  std::size_t fold_count = 0;
  std::vector<std::size_t> assignment;
};

namespace detail {

inline bool utf8_continuation(unsigned char b) { return (b & 0xC0) == 0x80; }

// Suffixes of 1..max_len whole UTF-8 characters, shortest first.
inline std::vector<std::string> utf8_suffixes(const std::string& word,
                                              std::size_t max_len) {
  std::vector<std::string> out;
  std::size_t pos = word.size();
  while (pos > 0 && out.size() < max_len) {
    --pos;
    while (pos > 0 && utf8_continuation(static_cast<unsigned char>(word[pos])))
      --pos;
    out.push_back(word.substr(pos));
  }
  return out;
}

// The word split into whole UTF-8 characters.
inline std::vector<std::string> utf8_chars(const std::string& word) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos < word.size()) {
    std::size_t end = pos + 1;
    while (end < word.size() &&
           utf8_continuation(static_cast<unsigned char>(word[end])))
      ++end;
    out.push_back(word.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

// Shared row scanner for the vertical two-column formats. Returns one
// vector of (left, right) pairs per sentence. Runs of blank lines act
// as one sentence boundary; trailing blank lines are ignored.
inline std::vector<std::vector<std::pair<std::string, std::string>>>
parse_rows(const std::string& text, const char* left_name,
           const char* right_name) {
  std::vector<std::vector<std::pair<std::string, std::string>>> sentences;
  std::vector<std::pair<std::string, std::string>> current;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    if (pos == text.size() && line_no > 0 && text.back() == '\n')
      break; // no trailing fragment after final newline
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos)
      eol = text.size();
    ++line_no;
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) {
      if (!current.empty()) {
        sentences.push_back(std::move(current));
        current.clear();
      }
      continue;
    }
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError(line_no, std::string("expected ") + left_name +
                                    "<TAB>" + right_name);
    if (line.find('\t', tab + 1) != std::string::npos)
      throw ParseError(line_no, "more than two columns");
    std::string left = line.substr(0, tab);
    std::string right = line.substr(tab + 1);
    if (left.empty())
      throw ParseError(line_no, std::string("empty ") + left_name + " field");
    if (right.empty())
      throw ParseError(line_no, std::string("empty ") + right_name + " field");
    if (!valid_symbol(left) || !valid_symbol(right))
      throw ParseError(line_no, "illegal control character in field");
    current.emplace_back(std::move(left), std::move(right));
  }
  if (!current.empty())
    sentences.push_back(std::move(current));
  return sentences;
}

// Fully specified Fisher-Yates so shuffles are reproducible across
// standard library implementations.
template <typename Rng>
inline std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i)
    idx[i] = i;
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(idx[i - 1], idx[j]);
  }
  return idx;
}

} // namespace detail

inline Corpus parse_vertical(const std::string& text,
                             std::string tagset_name = "") {
  Corpus corpus;
  corpus.tagset_name = std::move(tagset_name);
  auto rows = detail::parse_rows(text, "form", "tag");
  for (auto& row : rows) {
    Sentence sent;
    sent.reserve(row.size());
    for (auto& [form, tag] : row)
      sent.push_back({std::move(form), std::move(tag)});
    corpus.sentences.push_back(std::move(sent));
  }
  if (corpus.sentences.empty())
    throw EmptyCorpusError("input contains no sentences");
  return corpus;
}

inline std::string write_vertical(const Corpus& corpus) {
  std::string out;
  for (const auto& sent : corpus.sentences) {
    for (const auto& tok : sent) {
      out += tok.form;
      out += '\t';
      out += tok.tag;
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

// Sentence-level split: train takes the largest prefix of the (optionally
// shuffled) sentence order whose token count stays within
// train_fraction * total tokens; the rest is test. Sentences keep their
// corpus order inside each part.
inline std::pair<Corpus, Corpus>
split_train_test(const Corpus& corpus, double train_fraction,
                 std::optional<std::uint64_t> shuffle_seed = {}) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw ConfigError("train fraction must lie in (0,1)");
  const std::size_t n = corpus.sentences.size();
  if (n < 2)
    throw SplitError("corpus too small to give both parts >= 1 sentence");

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  if (shuffle_seed) {
    std::uint64_t state = *shuffle_seed;
    auto rng = [&state]() {
      // splitmix64 step
      state += 0x9e3779b97f4a7c15ull;
      std::uint64_t z = state;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
      return z ^ (z >> 31);
    };
    order = detail::shuffled_indices(n, rng);
  }

  // Small slack absorbs binary representation error in fraction * total.
  const double budget =
      train_fraction * static_cast<double>(corpus.token_count()) + 1e-9;
  std::vector<bool> in_train(n, false);
  std::size_t taken_tokens = 0;
  std::size_t taken = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t len = corpus.sentences[order[i]].size();
    if (static_cast<double>(taken_tokens + len) > budget)
      break;
    in_train[order[i]] = true;
    taken_tokens += len;
    ++taken;
  }
  if (taken == 0 || taken == n)
    throw SplitError("split leaves one part empty");

  Corpus train{corpus.tagset_name, {}}, test{corpus.tagset_name, {}};
  for (std::size_t i = 0; i < n; ++i)
    (in_train[i] ? train : test).sentences.push_back(corpus.sentences[i]);
  return {std::move(train), std::move(test)};
}

// Contiguous balanced assignment: sentence order preserved, fold sizes
// differ by at most one.
inline FoldPlan make_folds(const Corpus& corpus, std::size_t n) {
  if (n < 2)
    throw ConfigError("fold count must be >= 2");
  const std::size_t s = corpus.sentences.size();
  if (s < n)
    throw FoldError("fewer sentences than folds");
  FoldPlan plan;
  plan.fold_count = n;
  plan.assignment.reserve(s);
  const std::size_t base = s / n, rem = s % n;
  for (std::size_t fold = 0; fold < n; ++fold) {
    std::size_t size = base + (fold < rem ? 1 : 0);
    for (std::size_t i = 0; i < size; ++i)
      plan.assignment.push_back(fold);
  }
  return plan;
}

inline std::set<std::string> vocabulary(const Corpus& corpus) {
  std::set<std::string> vocab;
  for (const auto& sent : corpus.sentences)
    for (const auto& tok : sent)
      vocab.insert(tok.form);
  return vocab;
}

inline void check_fold_plan(const Corpus& corpus, const FoldPlan& plan) {
  if (plan.assignment.size() != corpus.sentences.size())
    throw FoldError("fold plan does not match corpus sentence count");
}

// Sentences assigned to the given fold, in corpus order.
inline Corpus fold_part(const Corpus& corpus, const FoldPlan& plan,
                        std::size_t fold) {
  check_fold_plan(corpus, plan);
  Corpus part{corpus.tagset_name, {}};
  for (std::size_t i = 0; i < plan.assignment.size(); ++i)
    if (plan.assignment[i] == fold)
      part.sentences.push_back(corpus.sentences[i]);
  return part;
}

// Sentences of every fold except the given one, in corpus order.
inline Corpus fold_complement(const Corpus& corpus, const FoldPlan& plan,
                              std::size_t fold) {
  check_fold_plan(corpus, plan);
  Corpus part{corpus.tagset_name, {}};
  for (std::size_t i = 0; i < plan.assignment.size(); ++i)
    if (plan.assignment[i] != fold)
      part.sentences.push_back(corpus.sentences[i]);
  return part;
}

} // namespace combitag
