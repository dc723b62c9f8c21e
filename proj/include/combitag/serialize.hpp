// JSON (de)serialization for trained models and instance bases, used by
// the CLI to persist intermediate artifacts. Only this header depends on
// nlohmann/json.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "combitag/errors.hpp"
#include "combitag/hmm.hpp"
#include "combitag/mbl.hpp"
#include "combitag/mbt.hpp"
#include "combitag/taggers.hpp"

namespace combitag {

using nlohmann::json;

inline json to_json(const mbl::ClassifierConfig& config) {
  return {{"k", config.k},
          {"weighting",
           config.weighting == mbl::Weighting::gain_ratio ? "gain_ratio"
                                                          : "none"}};
}

inline mbl::ClassifierConfig classifier_config_from_json(const json& j) {
  mbl::ClassifierConfig config;
  config.k = j.at("k").get<std::size_t>();
  config.weighting = j.at("weighting").get<std::string>() == "gain_ratio"
                         ? mbl::Weighting::gain_ratio
                         : mbl::Weighting::none;
  return config;
}

inline json to_json(const mbl::InstanceBase& base) {
  json cases = json::array();
  for (const auto& c : base.cases()) {
    json row = json::array();
    for (const auto& f : c.features)
      row.push_back(f);
    row.push_back(c.target);
    cases.push_back(std::move(row));
  }
  return {{"cases", std::move(cases)}, {"weights", base.weights()}};
}

inline mbl::InstanceBase instance_base_from_json(const json& j) {
  std::vector<mbl::TrainingCase> cases;
  for (const auto& row : j.at("cases")) {
    mbl::TrainingCase c;
    for (std::size_t i = 0; i + 1 < row.size(); ++i)
      c.features.push_back(row[i].get<std::string>());
    c.target = row.back().get<std::string>();
    cases.push_back(std::move(c));
  }
  return mbl::InstanceBase(std::move(cases),
                           j.at("weights").get<std::vector<double>>());
}

inline json to_json(const UnigramModel& model) {
  return {{"type", "unigram"},
          {"best_tag", model.best_tag},
          {"fallback_tag", model.fallback_tag}};
}

inline UnigramModel unigram_from_json(const json& j) {
  UnigramModel model;
  model.best_tag =
      j.at("best_tag").get<std::map<std::string, std::string>>();
  model.fallback_tag = j.at("fallback_tag").get<std::string>();
  return model;
}

inline json to_json(const HmmModel& model) {
  json bigram = json::array();
  for (const auto& [pair, count] : model.bigram)
    bigram.push_back({pair.first, pair.second, count});
  json trigram = json::array();
  for (const auto& [triple, count] : model.trigram)
    trigram.push_back(
        {std::get<0>(triple), std::get<1>(triple), std::get<2>(triple), count});
  json emission = json::array();
  for (const auto& words : model.emission)
    emission.push_back(words);
  return {{"type", "hmm"},
          {"tags", model.tags},
          {"unigram", model.unigram},
          {"bigram", std::move(bigram)},
          {"trigram", std::move(trigram)},
          {"emission", std::move(emission)},
          {"word_freq", model.word_freq},
          {"lambdas", model.lambdas},
          {"suffix_base", model.suffix_base},
          {"suffix_counts", model.suffix_counts},
          {"suffix_theta", model.suffix_theta},
          {"config",
           {{"max_suffix_len", model.config.max_suffix_len},
            {"rare_word_threshold", model.config.rare_word_threshold},
            {"beam", model.config.beam},
            {"seed", model.config.seed}}}};
}

inline HmmModel hmm_from_json(const json& j) {
  HmmModel model;
  model.tags = j.at("tags").get<std::vector<std::string>>();
  model.unigram = j.at("unigram").get<std::vector<double>>();
  for (const auto& row : j.at("bigram"))
    model.bigram[{row[0].get<int>(), row[1].get<int>()}] =
        row[2].get<double>();
  for (const auto& row : j.at("trigram"))
    model.trigram[{row[0].get<int>(), row[1].get<int>(),
                   row[2].get<int>()}] = row[3].get<double>();
  for (const auto& words : j.at("emission"))
    model.emission.push_back(words.get<std::map<std::string, double>>());
  model.word_freq = j.at("word_freq").get<std::map<std::string, double>>();
  auto lambdas = j.at("lambdas").get<std::vector<double>>();
  if (lambdas.size() != 3)
    throw DataError(0, "hmm model needs exactly three lambdas");
  model.lambdas = {lambdas[0], lambdas[1], lambdas[2]};
  model.suffix_base = j.at("suffix_base").get<std::vector<double>>();
  model.suffix_counts =
      j.at("suffix_counts").get<std::map<std::string, std::vector<double>>>();
  model.suffix_theta = j.at("suffix_theta").get<double>();
  const json& c = j.at("config");
  model.config.max_suffix_len = c.at("max_suffix_len").get<std::size_t>();
  model.config.rare_word_threshold =
      c.at("rare_word_threshold").get<std::size_t>();
  model.config.beam = c.at("beam").get<std::size_t>();
  model.config.seed = c.at("seed").get<std::uint64_t>();
  model.rebuild_derived();
  return model;
}

inline json to_json(const MbtModel& model) {
  json j{{"type", "mbt"},
         {"ambitag", model.ambitag},
         {"known_base", to_json(model.known_base)},
         {"fallback_tag", model.fallback_tag},
         {"config",
          {{"rare_threshold", model.config.rare_threshold},
           {"classifier", to_json(model.config.classifier)}}}};
  if (model.unknown_base)
    j["unknown_base"] = to_json(*model.unknown_base);
  return j;
}

inline MbtModel mbt_from_json(const json& j) {
  MbtModel model;
  model.ambitag = j.at("ambitag").get<std::map<std::string, std::string>>();
  model.known_base = instance_base_from_json(j.at("known_base"));
  if (j.contains("unknown_base"))
    model.unknown_base = instance_base_from_json(j.at("unknown_base"));
  model.fallback_tag = j.at("fallback_tag").get<std::string>();
  const json& c = j.at("config");
  model.config.rare_threshold = c.at("rare_threshold").get<std::size_t>();
  model.config.classifier = classifier_config_from_json(c.at("classifier"));
  return model;
}

// Loads any serialized tagger model and wraps it in the shared interface.
inline std::unique_ptr<Tagger> tagger_from_json(const json& j) {
  std::string type = j.at("type").get<std::string>();
  if (type == "unigram")
    return std::make_unique<UnigramTagger>(unigram_from_json(j));
  if (type == "hmm")
    return std::make_unique<HmmTagger>(hmm_from_json(j));
  if (type == "mbt")
    return std::make_unique<MbtTagger>(mbt_from_json(j));
  throw DataError(0, "unknown model type: " + type);
}

} // namespace combitag
