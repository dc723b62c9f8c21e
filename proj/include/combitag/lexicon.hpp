// Ambiguity-class lexicon: maps a word form to the sorted set of its
// coarse lexical categories, emitted as one joined symbol per token.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "combitag/annotation.hpp"
#include "combitag/corpus.hpp"
#include "combitag/errors.hpp"

namespace combitag {

// Sentinel for forms without an entry. Real categories may not use it.
inline constexpr const char* kUnknownCategory = "UNKNOWN";

class Lexicon {
public:
  using Entries = std::map<std::string, std::vector<std::string>>;

  Lexicon() = default;

  // Categories per form are deduplicated and sorted; input order is
  // irrelevant to the result.
  static Lexicon build(
      const std::vector<std::pair<std::string, std::string>>& pairs,
      std::string name = "lexicon") {
    Lexicon lex;
    lex.name_ = std::move(name);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [form, category] = pairs[i];
      if (!valid_symbol(form))
        throw DataError(i, "invalid form");
      if (!valid_symbol(category))
        throw DataError(i, "invalid category");
      if (category == kUnknownCategory)
        throw DataError(i, "category name UNKNOWN is reserved");
      lex.entries_[form].push_back(category);
    }
    for (auto& [form, cats] : lex.entries_) {
      std::sort(cats.begin(), cats.end());
      cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
    }
    return lex;
  }

  // Joined sorted categories, or UNKNOWN for absent forms.
  std::string lookup(const std::string& form) const {
    auto it = entries_.find(form);
    if (it == entries_.end())
      return kUnknownCategory;
    std::string joined = it->second.front();
    for (std::size_t i = 1; i < it->second.size(); ++i) {
      joined += '|';
      joined += it->second[i];
    }
    return joined;
  }

  AnnotationColumn annotate(const Corpus& corpus) const {
    AnnotationColumn column{name_, {}};
    column.values.reserve(corpus.token_count());
    for (const auto& sent : corpus.sentences)
      for (const auto& tok : sent)
        column.values.push_back(lookup(tok.form));
    return column;
  }

  const Entries& entries() const { return entries_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return entries_.size(); }
  bool operator==(const Lexicon& other) const {
    return entries_ == other.entries_;
  }

private:
  Entries entries_;
  std::string name_ = "lexicon";
};

// Lexicon file: form<TAB>category per line, duplicates allowed, blank
// lines skipped.
inline Lexicon parse_lexicon(const std::string& text,
                             std::string name = "lexicon") {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos)
      eol = text.size();
    ++line_no;
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty())
      continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos)
      throw ParseError(line_no, "expected form<TAB>category");
    std::string form = line.substr(0, tab);
    std::string category = line.substr(tab + 1);
    if (form.empty() || category.empty())
      throw ParseError(line_no, "empty field");
    pairs.emplace_back(std::move(form), std::move(category));
  }
  return Lexicon::build(pairs, std::move(name));
}

// Canonical form: entries by form, categories in sorted order.
inline std::string write_lexicon(const Lexicon& lexicon) {
  std::string out;
  for (const auto& [form, cats] : lexicon.entries())
    for (const auto& cat : cats) {
      out += form;
      out += '\t';
      out += cat;
      out += '\n';
    }
  return out;
}

} // namespace combitag
