// Memory-based tagger: one instance base for known words and one for
// unknown words, both queried through the IB1 classifier. Known-word
// features are the two disambiguated left tags, the focus ambitag, the
// focus word and the right neighbor's ambitag; unknown words swap the
// focus ambitag/word for the first letter and the last three letters.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "combitag/annotation.hpp"
#include "combitag/corpus.hpp"
#include "combitag/errors.hpp"
#include "combitag/mbl.hpp"
#include "combitag/taggers.hpp"

namespace combitag {

struct MbtConfig {
  std::size_t rare_threshold = 5; // words this frequent or less also feed the unknown base
  mbl::ClassifierConfig classifier; // defaults: k=1, overlap, no weighting
};

// Placeholder for out-of-sentence context, missing characters and
// unseen right neighbors.
inline constexpr const char* kMbtPad = "_";

struct MbtModel {
  std::map<std::string, std::string> ambitag; // word -> joined sorted gold tags
  mbl::InstanceBase known_base;
  std::optional<mbl::InstanceBase> unknown_base; // absent when no word is rare
  std::string fallback_tag; // modal training tag, used when a base is missing
  MbtConfig config;

  std::string ambitag_or_pad(const std::string& word) const {
    auto it = ambitag.find(word);
    return it == ambitag.end() ? kMbtPad : it->second;
  }
};

namespace detail {

inline mbl::FeatureVector mbt_known_features(const std::string& prev2,
                                             const std::string& prev1,
                                             const std::string& focus_ambitag,
                                             const std::string& word,
                                             const std::string& right_ambitag) {
  return {prev2, prev1, focus_ambitag, word, right_ambitag};
}

// Letters are whole UTF-8 characters; short words pad with "_".
inline mbl::FeatureVector mbt_unknown_features(const std::string& prev2,
                                               const std::string& prev1,
                                               const std::string& word,
                                               const std::string& right_ambitag) {
  std::vector<std::string> chars = utf8_chars(word);
  auto from_end = [&chars](std::size_t k) {
    return chars.size() < k ? std::string(kMbtPad) : chars[chars.size() - k];
  };
  return {prev2,       prev1,       chars.front(), from_end(3),
          from_end(2), from_end(1), right_ambitag};
}

} // namespace detail

inline MbtModel train_mbt(const Corpus& train, const MbtConfig& config = {}) {
  if (train.empty())
    throw TrainError("cannot train MBT tagger on an empty corpus");

  MbtModel model;
  model.config = config;

  std::map<std::string, std::size_t> word_freq;
  std::map<std::string, std::set<std::string>> tag_sets;
  std::map<std::string, std::size_t> tag_counts;
  for (const auto& sent : train.sentences)
    for (const auto& tok : sent) {
      ++word_freq[tok.form];
      tag_sets[tok.form].insert(tok.tag);
      ++tag_counts[tok.tag];
    }
  for (const auto& [word, tags] : tag_sets) {
    std::string joined;
    for (const auto& t : tags) {
      if (!joined.empty())
        joined += '|';
      joined += t;
    }
    model.ambitag[word] = joined;
  }
  {
    std::size_t best = 0;
    for (const auto& [tag, count] : tag_counts)
      if (count > best) {
        model.fallback_tag = tag;
        best = count;
      }
  }

  // Left context uses gold tags at training time; the right neighbor
  // contributes its ambitag, which is what decoding will see.
  std::vector<mbl::TrainingCase> known_cases, unknown_cases;
  for (const auto& sent : train.sentences) {
    for (std::size_t i = 0; i < sent.size(); ++i) {
      std::string prev2 = i >= 2 ? sent[i - 2].tag : kMbtPad;
      std::string prev1 = i >= 1 ? sent[i - 1].tag : kMbtPad;
      std::string right =
          i + 1 < sent.size() ? model.ambitag.at(sent[i + 1].form) : kMbtPad;
      const std::string& word = sent[i].form;
      known_cases.push_back(
          {detail::mbt_known_features(prev2, prev1, model.ambitag.at(word),
                                      word, right),
           sent[i].tag});
      if (word_freq[word] <= config.rare_threshold)
        unknown_cases.push_back(
            {detail::mbt_unknown_features(prev2, prev1, word, right),
             sent[i].tag});
    }
  }
  model.known_base = mbl::train(known_cases, config.classifier);
  if (!unknown_cases.empty())
    model.unknown_base = mbl::train(unknown_cases, config.classifier);
  return model;
}

// Left-to-right decoding; earlier predictions feed the left-context
// features of later tokens.
inline AnnotationColumn tag_mbt(const MbtModel& model, const Corpus& corpus) {
  AnnotationColumn column{"mbt", {}};
  column.values.reserve(corpus.token_count());
  for (const auto& sent : corpus.sentences) {
    std::vector<std::string> predicted;
    predicted.reserve(sent.size());
    for (std::size_t i = 0; i < sent.size(); ++i) {
      std::string prev2 = i >= 2 ? predicted[i - 2] : kMbtPad;
      std::string prev1 = i >= 1 ? predicted[i - 1] : kMbtPad;
      std::string right = i + 1 < sent.size()
                              ? model.ambitag_or_pad(sent[i + 1].form)
                              : kMbtPad;
      const std::string& word = sent[i].form;
      auto focus = model.ambitag.find(word);
      std::string tag;
      if (focus != model.ambitag.end()) {
        tag = mbl::classify(model.known_base,
                            detail::mbt_known_features(
                                prev2, prev1, focus->second, word, right),
                            model.config.classifier)
                  .first;
      } else if (model.unknown_base) {
        tag = mbl::classify(
                  *model.unknown_base,
                  detail::mbt_unknown_features(prev2, prev1, word, right),
                  model.config.classifier)
                  .first;
      } else {
        tag = model.fallback_tag;
      }
      predicted.push_back(tag);
      column.values.push_back(std::move(tag));
    }
  }
  return column;
}

class MbtTagger : public Tagger {
public:
  explicit MbtTagger(MbtModel model) : model_(std::move(model)) {}
  AnnotationColumn tag(const Corpus& corpus) const override {
    return tag_mbt(model_, corpus);
  }
  const MbtModel& model() const { return model_; }

private:
  MbtModel model_;
};

inline TaggerTrainer mbt_trainer(MbtConfig config = {}) {
  return [config](const Corpus& train) -> std::unique_ptr<Tagger> {
    return std::make_unique<MbtTagger>(train_mbt(train, config));
  };
}

} // namespace combitag
