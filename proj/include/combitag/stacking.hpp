// The combi-bootstrap protocol: build leak-free level-1 training cases by
// n-fold cross-validation of the internal taggers, attach the always-
// available resource columns (word, lexicon, external predictions), train
// the IB1 combiner and tag the test set.
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combitag/annotation.hpp"
#include "combitag/corpus.hpp"
#include "combitag/errors.hpp"
#include "combitag/eval.hpp"
#include "combitag/lexicon.hpp"
#include "combitag/mbl.hpp"
#include "combitag/taggers.hpp"

namespace combitag {

enum class SourceKind { internal_tagger, lexicon, external_column, word };

struct SourceSpec {
  std::string name;
  SourceKind kind = SourceKind::word;
  TaggerTrainer trainer;         // internal_tagger only
  Lexicon lexicon;               // lexicon only
  std::string train_column_text; // external_column: file aligned with train
  std::string test_column_text;  // external_column: file aligned with test
};

struct ExperimentPlan {
  Corpus train;
  Corpus test;
  std::vector<SourceSpec> sources; // feature order = declaration order
  std::size_t folds = 9;
  mbl::ClassifierConfig combiner;
  std::uint64_t seed = 0;
};

struct ExperimentResult {
  AnnotationColumn predictions; // combiner output over the test corpus
  EvalReport report;
  std::vector<EvalReport> source_reports;  // each raw column scored as-is
  std::vector<AnnotationColumn> train_columns; // per source, over train
  std::vector<AnnotationColumn> test_columns;  // per source, over test
  std::vector<mbl::TrainingCase> level1_cases;
  std::vector<mbl::TrainingCase> test_cases;
};

inline void check_sources(const std::vector<SourceSpec>& sources) {
  std::set<std::string> names;
  for (const auto& s : sources) {
    if (!valid_symbol(s.name))
      throw ConfigError("invalid source name");
    if (!names.insert(s.name).second)
      throw ConfigError("duplicate source name: " + s.name);
    if (s.kind == SourceKind::internal_tagger && !s.trainer)
      throw ConfigError("source " + s.name + " has no tagger trainer");
  }
}

// Cross-validated column over the training corpus: for each fold the
// tagger is trained on the other folds only and tags that fold, so no
// feature value ever comes from a model that saw its own sentence.
// Lexicon, word and external sources are evaluated directly.
inline AnnotationColumn level1_source_column(const Corpus& train,
                                             const SourceSpec& source,
                                             const FoldPlan& folds) {
  switch (source.kind) {
  case SourceKind::word: {
    AnnotationColumn column{source.name, {}};
    for (const auto& sent : train.sentences)
      for (const auto& tok : sent)
        column.values.push_back(tok.form);
    return column;
  }
  case SourceKind::lexicon: {
    AnnotationColumn column = source.lexicon.annotate(train);
    column.source_name = source.name;
    return column;
  }
  case SourceKind::external_column:
    return load_external_column(train, source.train_column_text, source.name);
  case SourceKind::internal_tagger:
    break;
  }

  check_fold_plan(train, folds);
  AnnotationColumn column{source.name, {}};
  column.values.assign(train.token_count(), "");
  // token offset of each sentence in corpus order
  std::vector<std::size_t> offsets(train.sentences.size());
  std::size_t offset = 0;
  for (std::size_t i = 0; i < train.sentences.size(); ++i) {
    offsets[i] = offset;
    offset += train.sentences[i].size();
  }
  for (std::size_t fold = 0; fold < folds.fold_count; ++fold) {
    Corpus held_out = fold_part(train, folds, fold);
    if (held_out.empty())
      continue;
    std::unique_ptr<Tagger> tagger =
        source.trainer(fold_complement(train, folds, fold));
    AnnotationColumn predicted = tagger->tag(held_out);
    std::size_t next = 0;
    for (std::size_t i = 0; i < train.sentences.size(); ++i) {
      if (folds.assignment[i] != fold)
        continue;
      for (std::size_t j = 0; j < train.sentences[i].size(); ++j)
        column.values[offsets[i] + j] = predicted.values[next++];
    }
  }
  return column;
}

// Test-side column: internal taggers are retrained once on the full
// training corpus; other sources are evaluated directly on test.
inline AnnotationColumn test_source_column(const Corpus& train,
                                           const Corpus& test,
                                           const SourceSpec& source) {
  switch (source.kind) {
  case SourceKind::word: {
    AnnotationColumn column{source.name, {}};
    for (const auto& sent : test.sentences)
      for (const auto& tok : sent)
        column.values.push_back(tok.form);
    return column;
  }
  case SourceKind::lexicon: {
    AnnotationColumn column = source.lexicon.annotate(test);
    column.source_name = source.name;
    return column;
  }
  case SourceKind::external_column:
    return load_external_column(test, source.test_column_text, source.name);
  case SourceKind::internal_tagger:
    break;
  }
  std::unique_ptr<Tagger> tagger = source.trainer(train);
  AnnotationColumn column = tagger->tag(test);
  column.source_name = source.name;
  return column;
}

// Stitch per-source columns into stacked cases, one per token in corpus
// order; the target is the token's gold tag.
inline std::vector<mbl::TrainingCase>
assemble_cases(const Corpus& corpus,
               const std::vector<AnnotationColumn>& columns) {
  for (const auto& col : columns)
    if (col.values.size() != corpus.token_count())
      throw AlignmentError(std::min(col.values.size(), corpus.token_count()),
                           "column '" + col.source_name +
                               "' does not match corpus length");
  std::vector<mbl::TrainingCase> cases;
  cases.reserve(corpus.token_count());
  std::size_t position = 0;
  for (const auto& sent : corpus.sentences)
    for (const auto& tok : sent) {
      mbl::TrainingCase c;
      c.features.reserve(columns.size());
      for (const auto& col : columns)
        c.features.push_back(col.values[position]);
      c.target = tok.tag;
      cases.push_back(std::move(c));
      ++position;
    }
  return cases;
}

inline std::vector<mbl::TrainingCase>
generate_level1_training(const Corpus& train,
                         const std::vector<SourceSpec>& sources,
                         const FoldPlan& folds) {
  check_sources(sources);
  check_fold_plan(train, folds);
  std::vector<AnnotationColumn> columns;
  columns.reserve(sources.size());
  for (const auto& s : sources)
    columns.push_back(level1_source_column(train, s, folds));
  return assemble_cases(train, columns);
}

inline std::vector<mbl::TrainingCase>
generate_test_cases(const Corpus& train, const Corpus& test,
                    const std::vector<SourceSpec>& sources) {
  check_sources(sources);
  std::vector<AnnotationColumn> columns;
  columns.reserve(sources.size());
  for (const auto& s : sources)
    columns.push_back(test_source_column(train, test, s));
  return assemble_cases(test, columns);
}

inline ExperimentResult run_experiment(const ExperimentPlan& plan) {
  check_sources(plan.sources);
  ExperimentResult result;

  FoldPlan folds = make_folds(plan.train, plan.folds);
  for (const auto& s : plan.sources) {
    result.train_columns.push_back(level1_source_column(plan.train, s, folds));
    result.test_columns.push_back(test_source_column(plan.train, plan.test, s));
  }
  result.level1_cases = assemble_cases(plan.train, result.train_columns);
  result.test_cases = assemble_cases(plan.test, result.test_columns);

  mbl::InstanceBase base = mbl::train(result.level1_cases, plan.combiner);

  std::string combined_name = "combi(";
  for (std::size_t i = 0; i < plan.sources.size(); ++i) {
    if (i > 0)
      combined_name += '+';
    combined_name += plan.sources[i].name;
  }
  combined_name += ')';
  result.predictions.source_name = combined_name;
  result.predictions.values.reserve(result.test_cases.size());
  for (const auto& c : result.test_cases)
    result.predictions.values.push_back(
        mbl::classify(base, c.features, plan.combiner).first);

  std::set<std::string> train_vocab = vocabulary(plan.train);
  result.report = accuracy(result.predictions, plan.test, train_vocab);
  for (const auto& col : result.test_columns)
    result.source_reports.push_back(accuracy(col, plan.test, train_vocab));
  return result;
}

} // namespace combitag
