// One prediction per corpus token from one named source, plus the aligned
// form<TAB>value column file format used to exchange predictions with
// external tools.
#pragma once

#include <string>
#include <vector>

#include "combitag/corpus.hpp"
#include "combitag/errors.hpp"

namespace combitag {

struct AnnotationColumn {
  std::string source_name;
  std::vector<std::string> values;

  std::size_t size() const { return values.size(); }
  bool operator==(const AnnotationColumn&) const = default;
};

// Reads a form<TAB>value file whose rows and sentence boundaries must
// mirror the corpus exactly. Any divergence reports the first mismatching
// global token position.
inline AnnotationColumn load_external_column(const Corpus& corpus,
                                             const std::string& text,
                                             const std::string& source_name) {
  auto rows = detail::parse_rows(text, "form", "value");
  AnnotationColumn column{source_name, {}};
  column.values.reserve(corpus.token_count());
  std::size_t position = 0;
  const std::size_t n_sents = corpus.sentences.size();
  for (std::size_t s = 0; s < n_sents || s < rows.size(); ++s) {
    if (s >= n_sents || s >= rows.size())
      throw AlignmentError(position, "sentence counts differ");
    const Sentence& sent = corpus.sentences[s];
    const auto& row = rows[s];
    for (std::size_t i = 0; i < sent.size() || i < row.size(); ++i) {
      if (i >= row.size())
        throw AlignmentError(position, "missing token in column file");
      if (i >= sent.size())
        throw AlignmentError(position, "extra token in column file");
      if (row[i].first != sent[i].form)
        throw AlignmentError(position, "form mismatch: corpus has '" +
                                           sent[i].form + "', file has '" +
                                           row[i].first + "'");
      column.values.push_back(row[i].second);
      ++position;
    }
  }
  return column;
}

// Inverse of load_external_column: writes the column next to its corpus.
inline std::string write_column(const Corpus& corpus,
                                const AnnotationColumn& column) {
  if (column.values.size() != corpus.token_count())
    throw AlignmentError(
        std::min(column.values.size(), corpus.token_count()),
        "column length does not match corpus token count");
  std::string out;
  std::size_t position = 0;
  for (const auto& sent : corpus.sentences) {
    for (const auto& tok : sent) {
      out += tok.form;
      out += '\t';
      out += column.values[position++];
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

} // namespace combitag
