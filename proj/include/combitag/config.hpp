// Line-oriented `key = value` experiment configuration. Repeated
// `source = name:kind:payload` lines define the stacked feature columns
// in declaration order.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "combitag/errors.hpp"
#include "combitag/hmm.hpp"
#include "combitag/mbl.hpp"
#include "combitag/mbt.hpp"
#include "combitag/stacking.hpp"
#include "combitag/taggers.hpp"

namespace combitag {

struct SourceConfig {
  std::string name;
  SourceKind kind = SourceKind::word;
  std::string engine;       // internal_tagger: hmm | mbt | unigram
  std::string lexicon_path; // lexicon
  std::string train_path;   // external_column, aligned with train
  std::string test_path;    // external_column, aligned with test
};

struct ExperimentConfig {
  std::string train_path;
  std::optional<std::string> test_path; // absent: split train by `fraction`
  double fraction = 0.9;
  bool shuffle = false;
  std::size_t folds = 9;
  mbl::ClassifierConfig combiner; // k = 1, weighting = none
  std::uint64_t seed = 0;
  std::vector<SourceConfig> sources;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos)
    return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

inline SourceConfig parse_source_value(std::size_t line_no,
                                       const std::string& value) {
  SourceConfig src;
  std::size_t c1 = value.find(':');
  if (c1 == std::string::npos)
    throw ConfigError(line_no, "source needs name:kind[:payload]");
  src.name = value.substr(0, c1);
  std::size_t c2 = value.find(':', c1 + 1);
  std::string kind = c2 == std::string::npos
                         ? value.substr(c1 + 1)
                         : value.substr(c1 + 1, c2 - c1 - 1);
  std::string payload = c2 == std::string::npos ? "" : value.substr(c2 + 1);
  if (src.name.empty())
    throw ConfigError(line_no, "empty source name");

  if (kind == "word") {
    src.kind = SourceKind::word;
  } else if (kind == "lexicon") {
    if (payload.empty())
      throw ConfigError(line_no, "lexicon source needs a file path");
    src.kind = SourceKind::lexicon;
    src.lexicon_path = payload;
  } else if (kind == "external" || kind == "external_column") {
    std::size_t comma = payload.find(',');
    if (comma == std::string::npos)
      throw ConfigError(line_no,
                        "external source needs train-path,test-path");
    src.kind = SourceKind::external_column;
    src.train_path = payload.substr(0, comma);
    src.test_path = payload.substr(comma + 1);
    if (src.train_path.empty() || src.test_path.empty())
      throw ConfigError(line_no, "empty path in external source");
  } else if (kind == "internal_tagger" || kind == "hmm" || kind == "mbt" ||
             kind == "unigram") {
    src.kind = SourceKind::internal_tagger;
    src.engine = kind == "internal_tagger" ? payload : kind;
    if (src.engine != "hmm" && src.engine != "mbt" && src.engine != "unigram")
      throw ConfigError(line_no, "unknown tagger engine: " + src.engine);
  } else {
    throw ConfigError(line_no, "unknown source kind: " + kind);
  }
  return src;
}

} // namespace detail

inline TaggerTrainer trainer_for(const std::string& engine) {
  if (engine == "hmm")
    return hmm_trainer();
  if (engine == "mbt")
    return mbt_trainer();
  if (engine == "unigram")
    return unigram_trainer();
  throw ConfigError("unknown tagger engine: " + engine);
}

inline ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::set<std::string> seen;
  bool have_train = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos)
      eol = text.size();
    ++line_no;
    std::string line = detail::trim(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (line.empty() || line[0] == '#')
      continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line_no, "expected key = value");
    std::string key = detail::trim(line.substr(0, eq));
    std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(line_no, "empty key");
    if (value.empty())
      throw ConfigError(line_no, "empty value for key " + key);
    if (key != "source" && !seen.insert(key).second)
      throw ConfigError(line_no, "duplicate key: " + key);

    auto as_unsigned = [&](const std::string& v) -> std::uint64_t {
      try {
        std::size_t used = 0;
        unsigned long long n = std::stoull(v, &used);
        if (used != v.size())
          throw std::invalid_argument(v);
        return n;
      } catch (const std::exception&) {
        throw ConfigError(line_no, "expected a non-negative integer for " + key);
      }
    };

    if (key == "train") {
      config.train_path = value;
      have_train = true;
    } else if (key == "test") {
      config.test_path = value;
    } else if (key == "fraction") {
      try {
        std::size_t used = 0;
        config.fraction = std::stod(value, &used);
        if (used != value.size())
          throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw ConfigError(line_no, "expected a number for fraction");
      }
      if (!(config.fraction > 0.0 && config.fraction < 1.0))
        throw ConfigError(line_no, "fraction must lie in (0,1)");
    } else if (key == "shuffle") {
      if (value == "true") {
        config.shuffle = true;
      } else if (value == "false") {
        config.shuffle = false;
      } else {
        throw ConfigError(line_no, "shuffle must be true or false");
      }
    } else if (key == "folds") {
      config.folds = static_cast<std::size_t>(as_unsigned(value));
    } else if (key == "k") {
      config.combiner.k = static_cast<std::size_t>(as_unsigned(value));
      if (config.combiner.k == 0)
        throw ConfigError(line_no, "k must be >= 1");
    } else if (key == "weighting") {
      if (value == "none") {
        config.combiner.weighting = mbl::Weighting::none;
      } else if (value == "gain_ratio") {
        config.combiner.weighting = mbl::Weighting::gain_ratio;
      } else {
        throw ConfigError(line_no, "weighting must be none or gain_ratio");
      }
    } else if (key == "seed") {
      config.seed = as_unsigned(value);
    } else if (key == "source") {
      config.sources.push_back(detail::parse_source_value(line_no, value));
    } else {
      throw ConfigError(line_no, "unknown key: " + key);
    }
  }
  if (!have_train)
    throw ConfigError("missing required key: train");
  if (config.sources.empty())
    throw ConfigError("at least one source is required");
  std::set<std::string> names;
  for (const auto& s : config.sources)
    if (!names.insert(s.name).second)
      throw ConfigError("duplicate source name: " + s.name);
  return config;
}

} // namespace combitag
