// IB1 memory-based classifier: stores symbolic training cases verbatim and
// classifies by majority over the nearest-neighbor set under the (optionally
// weighted) overlap metric. "k nearest neighbors" means the k smallest
// distinct distance values with all ties included.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "combitag/errors.hpp"

namespace combitag::mbl {

using FeatureVector = std::vector<std::string>;

struct TrainingCase {
  FeatureVector features;
  std::string target;
  bool operator==(const TrainingCase&) const = default;
};

enum class Weighting { none, gain_ratio };

struct ClassifierConfig {
  std::size_t k = 1;
  Weighting weighting = Weighting::none;
};

struct Diagnostics {
  std::size_t neighbor_count = 0;
  std::vector<double> distances; // distinct distances in the neighbor set
};

// Weighted count of mismatching positions. Empty weights mean unit weights.
inline double overlap_distance(const FeatureVector& a, const FeatureVector& b,
                               const std::vector<double>& weights = {}) {
  if (a.size() != b.size())
    throw DimensionError("feature vectors differ in arity");
  if (!weights.empty() && weights.size() != a.size())
    throw DimensionError("weight vector differs in arity");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i])
      d += weights.empty() ? 1.0 : weights[i];
  return d;
}

// Per-feature gain ratio: information gain over split info, log base 2.
// A feature with a single value across all cases gets weight 0.
inline std::vector<double>
gain_ratio_weights(const std::vector<TrainingCase>& cases) {
  const std::size_t n = cases.size();
  const std::size_t arity = cases.front().features.size();
  const double dn = static_cast<double>(n);

  auto entropy = [](const std::map<std::string, std::size_t>& freq,
                    double total) {
    double h = 0.0;
    for (const auto& [value, count] : freq) {
      double p = static_cast<double>(count) / total;
      h -= p * std::log2(p);
    }
    return h;
  };

  std::map<std::string, std::size_t> class_freq;
  for (const auto& c : cases)
    ++class_freq[c.target];
  const double class_entropy = entropy(class_freq, dn);

  std::vector<double> weights(arity, 0.0);
  for (std::size_t f = 0; f < arity; ++f) {
    std::map<std::string, std::map<std::string, std::size_t>> by_value;
    for (const auto& c : cases)
      ++by_value[c.features[f]][c.target];
    double remainder = 0.0, split_info = 0.0;
    for (const auto& [value, targets] : by_value) {
      std::size_t count = 0;
      for (const auto& [t, ct] : targets)
        count += ct;
      double p = static_cast<double>(count) / dn;
      remainder += p * entropy(targets, static_cast<double>(count));
      split_info -= p * std::log2(p);
    }
    if (split_info > 0.0)
      weights[f] = std::max(class_entropy - remainder, 0.0) / split_info;
  }
  return weights;
}

class InstanceBase {
public:
  InstanceBase() = default;
  InstanceBase(std::vector<TrainingCase> cases, std::vector<double> weights)
      : cases_(std::move(cases)), weights_(std::move(weights)) {
    arity_ = cases_.empty() ? 0 : cases_.front().features.size();
    for (const auto& c : cases_)
      ++class_freq_[c.target];
  }

  const std::vector<TrainingCase>& cases() const { return cases_; }
  const std::map<std::string, std::size_t>& class_freq() const {
    return class_freq_;
  }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t arity() const { return arity_; }
  std::size_t size() const { return cases_.size(); }

private:
  std::vector<TrainingCase> cases_;
  std::map<std::string, std::size_t> class_freq_;
  std::vector<double> weights_; // empty = unit weights
  std::size_t arity_ = 0;
};

inline InstanceBase train(const std::vector<TrainingCase>& cases,
                          const ClassifierConfig& config = {}) {
  if (cases.empty())
    throw TrainError("no training cases");
  const std::size_t arity = cases.front().features.size();
  for (const auto& c : cases)
    if (c.features.size() != arity)
      throw DimensionError("mixed arity in training cases");
  std::vector<double> weights;
  if (config.weighting == Weighting::gain_ratio)
    weights = gain_ratio_weights(cases);
  return InstanceBase(cases, std::move(weights));
}

// Single pass over the stored cases keeping per-target tallies for the k
// smallest distinct distances seen so far. Majority ties break on global
// class frequency, then on the lexicographically smallest class symbol.
inline std::pair<std::string, Diagnostics>
classify(const InstanceBase& base, const FeatureVector& query,
         const ClassifierConfig& config = {}) {
  if (query.size() != base.arity())
    throw DimensionError("query arity does not match instance base");
  const std::size_t k = config.k == 0 ? 1 : config.k;

  std::map<double, std::map<std::string, std::size_t>> nearest;
  for (const auto& c : base.cases()) {
    double d = overlap_distance(query, c.features, base.weights());
    if (nearest.size() == k) {
      auto worst = std::prev(nearest.end());
      if (d > worst->first)
        continue;
    }
    ++nearest[d][c.target];
    if (nearest.size() > k)
      nearest.erase(std::prev(nearest.end()));
  }

  std::map<std::string, std::size_t> votes;
  Diagnostics diag;
  for (const auto& [distance, targets] : nearest) {
    diag.distances.push_back(distance);
    for (const auto& [target, count] : targets) {
      votes[target] += count;
      diag.neighbor_count += count;
    }
  }

  const auto& global = base.class_freq();
  auto global_freq = [&global](const std::string& t) {
    auto it = global.find(t);
    return it == global.end() ? std::size_t{0} : it->second;
  };
  std::string winner;
  std::size_t best_votes = 0, best_global = 0;
  for (const auto& [target, count] : votes) {
    std::size_t g = global_freq(target);
    if (winner.empty() || count > best_votes ||
        (count == best_votes && g > best_global)) {
      // map order makes this the lexicographically smallest on full ties
      winner = target;
      best_votes = count;
      best_global = g;
    }
  }
  return {winner, diag};
}

// Case file: one case per line, tab-separated feature values, last column
// is the target; every line must have the same column count.
inline std::vector<TrainingCase> read_cases(const std::string& text) {
  std::vector<TrainingCase> cases;
  std::size_t line_no = 0, columns = 0;
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
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (fields.size() < 2)
      throw ParseError(line_no, "a case needs at least one feature and a target");
    if (columns == 0)
      columns = fields.size();
    else if (fields.size() != columns)
      throw ParseError(line_no, "column count differs from previous lines");
    for (const auto& f : fields)
      if (f.empty())
        throw ParseError(line_no, "empty field");
    TrainingCase c;
    c.target = std::move(fields.back());
    fields.pop_back();
    c.features = std::move(fields);
    cases.push_back(std::move(c));
  }
  return cases;
}

inline std::string write_cases(const std::vector<TrainingCase>& cases) {
  std::string out;
  for (const auto& c : cases) {
    for (const auto& f : c.features) {
      out += f;
      out += '\t';
    }
    out += c.target;
    out += '\n';
  }
  return out;
}

} // namespace combitag::mbl
