// Level-0 tagger interface shared by the trainable taggers, plus the
// unigram baseline. Each tagger produces one AnnotationColumn per corpus.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "combitag/annotation.hpp"
#include "combitag/corpus.hpp"
#include "combitag/errors.hpp"

namespace combitag {

class Tagger {
public:
  virtual ~Tagger() = default;
  virtual AnnotationColumn tag(const Corpus& corpus) const = 0;
};

// Trains a fresh tagger on the given corpus; stacking calls this once per
// cross-validation fold.
using TaggerTrainer =
    std::function<std::unique_ptr<Tagger>(const Corpus& train)>;

struct UnigramModel {
  std::map<std::string, std::string> best_tag; // word -> modal training tag
  std::string fallback_tag;                    // modal tag of the corpus
};

// Modal tag per word, ties broken lexicographically by tag.
inline UnigramModel train_unigram(const Corpus& train) {
  if (train.empty())
    throw TrainError("cannot train unigram tagger on an empty corpus");
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  std::map<std::string, std::size_t> tag_counts;
  for (const auto& sent : train.sentences)
    for (const auto& tok : sent) {
      ++counts[tok.form][tok.tag];
      ++tag_counts[tok.tag];
    }
  UnigramModel model;
  auto modal = [](const std::map<std::string, std::size_t>& freq) {
    std::string best;
    std::size_t best_count = 0;
    for (const auto& [tag, count] : freq)
      if (count > best_count) { // map order keeps the smallest tag on ties
        best = tag;
        best_count = count;
      }
    return best;
  };
  for (const auto& [word, freq] : counts)
    model.best_tag[word] = modal(freq);
  model.fallback_tag = modal(tag_counts);
  return model;
}

inline AnnotationColumn tag_unigram(const UnigramModel& model,
                                    const Corpus& corpus) {
  AnnotationColumn column{"unigram", {}};
  column.values.reserve(corpus.token_count());
  for (const auto& sent : corpus.sentences)
    for (const auto& tok : sent) {
      auto it = model.best_tag.find(tok.form);
      column.values.push_back(it == model.best_tag.end() ? model.fallback_tag
                                                         : it->second);
    }
  return column;
}

class UnigramTagger : public Tagger {
public:
  explicit UnigramTagger(UnigramModel model) : model_(std::move(model)) {}
  AnnotationColumn tag(const Corpus& corpus) const override {
    return tag_unigram(model_, corpus);
  }
  const UnigramModel& model() const { return model_; }

private:
  UnigramModel model_;
};

inline TaggerTrainer unigram_trainer() {
  return [](const Corpus& train) -> std::unique_ptr<Tagger> {
    return std::make_unique<UnigramTagger>(train_unigram(train));
  };
}

} // namespace combitag
