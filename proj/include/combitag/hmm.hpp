// Trigram HMM tagger: maximum-likelihood trigram transitions smoothed by
// deleted interpolation, word-given-tag emissions, suffix-based tag
// guessing for unknown words, and Viterbi decoding over (previous,
// current) tag-pair states with an optional top-b beam.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "combitag/annotation.hpp"
#include "combitag/corpus.hpp"
#include "combitag/errors.hpp"
#include "combitag/taggers.hpp"

namespace combitag {

struct HmmConfig {
  std::size_t max_suffix_len = 10;   // longest suffix kept for unknown words
  std::size_t rare_word_threshold = 10; // words this frequent or less feed suffix stats
  std::size_t beam = 5;              // states kept per position; 0 = unlimited
  std::uint64_t seed = 0;            // reserved; training and decoding are deterministic
};

// Counts are stored as doubles so models can also be built directly with
// real-valued counts. Sequences are padded with two begin markers and one
// end marker whose ids live outside the tag inventory, so they can never
// collide with data tags.
struct HmmModel {
  std::vector<std::string> tags; // sorted inventory; index = tag id
  std::vector<double> unigram;   // size tags.size()+2, all occurrences incl. padding
  std::map<std::pair<int, int>, double> bigram;
  std::map<std::tuple<int, int, int>, double> trigram;
  std::vector<std::map<std::string, double>> emission; // per tag: word -> count
  std::map<std::string, double> word_freq;
  std::array<double, 3> lambdas{1.0, 0.0, 0.0}; // unigram, bigram, trigram
  std::vector<double> suffix_base;              // per-tag counts over rare tokens
  std::map<std::string, std::vector<double>> suffix_counts; // suffix -> per-tag counts
  double suffix_theta = 0.0;
  HmmConfig config;

  // derived sums; call rebuild_derived() after filling counts by hand
  std::map<int, double> bigram_ctx;
  std::map<std::pair<int, int>, double> trigram_ctx;
  double event_total = 0.0; // successor events: real tags + end marker
  double token_total = 0.0; // real tag occurrences

  int begin_id() const { return static_cast<int>(tags.size()); }
  int end_id() const { return static_cast<int>(tags.size()) + 1; }

  int tag_id(const std::string& tag) const {
    auto it = std::lower_bound(tags.begin(), tags.end(), tag);
    if (it == tags.end() || *it != tag)
      return -1;
    return static_cast<int>(it - tags.begin());
  }

  void rebuild_derived() {
    bigram_ctx.clear();
    trigram_ctx.clear();
    for (const auto& [pair, count] : bigram)
      bigram_ctx[pair.first] += count;
    for (const auto& [triple, count] : trigram)
      trigram_ctx[{std::get<0>(triple), std::get<1>(triple)}] += count;
    event_total = 0.0;
    token_total = 0.0;
    for (std::size_t t = 0; t < tags.size(); ++t)
      token_total += unigram[t];
    event_total = token_total + unigram[end_id()];
  }

  // Interpolated P(next | prev2, prev1), renormalized over the lambda mass
  // of the estimates whose conditioning context was observed, so every
  // conditional sums to 1 over {real tags, end marker}.
  double transition_prob(int prev2, int prev1, int next) const {
    double used = 0.0, p = 0.0;
    if (event_total > 0.0) {
      used += lambdas[0];
      p += lambdas[0] * unigram[next] / event_total;
    }
    auto bc = bigram_ctx.find(prev1);
    if (bc != bigram_ctx.end() && bc->second > 0.0) {
      used += lambdas[1];
      auto it = bigram.find({prev1, next});
      if (it != bigram.end())
        p += lambdas[1] * it->second / bc->second;
    }
    auto tc = trigram_ctx.find({prev2, prev1});
    if (tc != trigram_ctx.end() && tc->second > 0.0) {
      used += lambdas[2];
      auto it = trigram.find({prev2, prev1, next});
      if (it != trigram.end())
        p += lambdas[2] * it->second / tc->second;
    }
    return used > 0.0 ? p / used : 0.0;
  }

  bool known_word(const std::string& word) const {
    auto it = word_freq.find(word);
    return it != word_freq.end() && it->second > 0.0;
  }

  // Maximum-likelihood P(word | tag) for training words.
  double emission_prob(int tag, const std::string& word) const {
    if (unigram[tag] <= 0.0)
      return 0.0;
    auto it = emission[tag].find(word);
    if (it == emission[tag].end())
      return 0.0;
    return it->second / unigram[tag];
  }

  // P(tag | longest observed suffix of word) by successive abstraction:
  // each level mixes the suffix's maximum-likelihood estimate with the
  // next shorter level, weighted by theta. Suffix lengths count whole
  // UTF-8 characters. Sums to 1 over the inventory.
  std::vector<double> suffix_distribution(const std::string& word) const {
    const std::size_t n_tags = tags.size();
    std::vector<double> dist(n_tags, 0.0);
    double base_total = 0.0;
    for (double c : suffix_base)
      base_total += c;
    if (base_total > 0.0)
      for (std::size_t t = 0; t < n_tags; ++t)
        dist[t] = suffix_base[t] / base_total;
    else
      for (std::size_t t = 0; t < n_tags; ++t)
        dist[t] = 1.0 / static_cast<double>(n_tags);
    for (const auto& suffix :
         detail::utf8_suffixes(word, config.max_suffix_len)) {
      auto it = suffix_counts.find(suffix);
      if (it == suffix_counts.end())
        break; // longer suffixes can only be rarer
      double total = 0.0;
      for (double c : it->second)
        total += c;
      if (total <= 0.0)
        break;
      for (std::size_t t = 0; t < n_tags; ++t) {
        double ml = it->second[t] / total;
        dist[t] = (ml + suffix_theta * dist[t]) / (1.0 + suffix_theta);
      }
    }
    return dist;
  }

  // Emission scores for an unknown word: P(tag | suffix) / P(tag), the
  // Bayesian inversion with the constant P(suffix) dropped.
  std::vector<double> unknown_scores(const std::string& word) const {
    std::vector<double> scores = suffix_distribution(word);
    for (std::size_t t = 0; t < tags.size(); ++t) {
      double p_tag = token_total > 0.0 ? unigram[t] / token_total
                                       : 1.0 / static_cast<double>(tags.size());
      scores[t] = p_tag > 0.0 ? scores[t] / p_tag : 0.0;
    }
    return scores;
  }

  // Tags a word can take at decode time, ascending ids.
  std::vector<int> candidate_tags(const std::string& word) const {
    std::vector<int> out;
    if (known_word(word)) {
      for (std::size_t t = 0; t < tags.size(); ++t)
        if (emission_prob(static_cast<int>(t), word) > 0.0)
          out.push_back(static_cast<int>(t));
    } else {
      auto scores = unknown_scores(word);
      for (std::size_t t = 0; t < tags.size(); ++t)
        if (scores[t] > 0.0)
          out.push_back(static_cast<int>(t));
    }
    return out;
  }
};

namespace detail {

constexpr double kTransitionLogFloor = -1e100;

inline double log_transition(const HmmModel& model, int prev2, int prev1,
                             int next) {
  double p = model.transition_prob(prev2, prev1, next);
  return p > 0.0 ? std::log(p) : kTransitionLogFloor;
}

inline double log_emission(const HmmModel& model, int tag,
                           const std::string& word) {
  double p;
  if (model.known_word(word))
    p = model.emission_prob(tag, word);
  else
    p = model.unknown_scores(word)[static_cast<std::size_t>(tag)];
  return p > 0.0 ? std::log(p)
                 : -std::numeric_limits<double>::infinity();
}

} // namespace detail

// Log score of one complete tag assignment, accumulated left to right in
// the same order the Viterbi recursion accumulates it.
inline double sequence_log_score(const HmmModel& model,
                                 const std::vector<std::string>& words,
                                 const std::vector<int>& tag_ids) {
  if (words.size() != tag_ids.size())
    throw DimensionError("words and tags differ in length");
  double score = 0.0;
  int prev2 = model.begin_id(), prev1 = model.begin_id();
  for (std::size_t i = 0; i < words.size(); ++i) {
    score = score + detail::log_transition(model, prev2, prev1, tag_ids[i]);
    score = score + detail::log_emission(model, tag_ids[i], words[i]);
    prev2 = prev1;
    prev1 = tag_ids[i];
  }
  score = score + detail::log_transition(model, prev2, prev1, model.end_id());
  return score;
}

// Viterbi over (prev, cur) tag-pair states. With beam > 0 only the top
// beam states survive each position, ordered by score then state id.
inline std::vector<int> viterbi(const HmmModel& model,
                                const std::vector<std::string>& words,
                                std::size_t beam) {
  if (words.empty())
    return {};

  struct State {
    int prev2, prev1;
    double score;
    int parent; // index into previous position's state list
  };
  std::vector<std::vector<State>> trellis;

  std::vector<State> current;
  current.push_back({model.begin_id(), model.begin_id(), 0.0, -1});

  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto candidates = model.candidate_tags(words[i]);
    // (prev1, tag) -> index into `next`; keeps the best-scoring entry,
    // first writer winning on exact ties
    std::map<std::pair<int, int>, std::size_t> index;
    std::vector<State> next;
    for (std::size_t s = 0; s < current.size(); ++s) {
      const State& st = current[s];
      for (int t : candidates) {
        double score = st.score +
                       detail::log_transition(model, st.prev2, st.prev1, t);
        score = score + detail::log_emission(model, t, words[i]);
        if (score == -std::numeric_limits<double>::infinity())
          continue;
        auto key = std::make_pair(st.prev1, t);
        auto it = index.find(key);
        if (it == index.end()) {
          index[key] = next.size();
          next.push_back({st.prev1, t, score, static_cast<int>(s)});
        } else if (score > next[it->second].score) {
          next[it->second] = {st.prev1, t, score, static_cast<int>(s)};
        }
      }
    }
    if (next.empty()) {
      // No tag has positive emission mass here; fall back to the first
      // candidate (or tag 0) with floored scores so decoding always
      // produces a full sequence.
      int t = candidates.empty() ? 0 : candidates.front();
      for (std::size_t s = 0; s < current.size(); ++s)
        next.push_back({current[s].prev1, t,
                        current[s].score + detail::kTransitionLogFloor,
                        static_cast<int>(s)});
    }
    if (beam > 0 && next.size() > beam) {
      std::sort(next.begin(), next.end(),
                [](const State& a, const State& b) {
                  if (a.score != b.score)
                    return a.score > b.score;
                  return std::tie(a.prev2, a.prev1) <
                         std::tie(b.prev2, b.prev1);
                });
      next.resize(beam);
    }
    // deterministic state order regardless of pruning
    std::sort(next.begin(), next.end(), [](const State& a, const State& b) {
      return std::tie(a.prev2, a.prev1) < std::tie(b.prev2, b.prev1);
    });
    trellis.push_back(std::move(next));
    current = trellis.back();
  }

  // close with the end-marker transition
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < current.size(); ++s) {
    double total = current[s].score +
                   detail::log_transition(model, current[s].prev2,
                                          current[s].prev1, model.end_id());
    if (total > best_score) {
      best_score = total;
      best = s;
    }
  }

  std::vector<int> result(words.size());
  int idx = static_cast<int>(best);
  for (std::size_t i = words.size(); i-- > 0;) {
    result[i] = trellis[i][static_cast<std::size_t>(idx)].prev1;
    idx = trellis[i][static_cast<std::size_t>(idx)].parent;
  }
  return result;
}

inline HmmModel train_hmm(const Corpus& train, const HmmConfig& config = {}) {
  if (train.empty())
    throw TrainError("cannot train HMM tagger on an empty corpus");

  HmmModel model;
  model.config = config;
  {
    std::set<std::string> tag_set;
    for (const auto& sent : train.sentences)
      for (const auto& tok : sent)
        tag_set.insert(tok.tag);
    model.tags.assign(tag_set.begin(), tag_set.end());
  }
  const int begin = model.begin_id(), end = model.end_id();
  model.unigram.assign(model.tags.size() + 2, 0.0);
  model.emission.assign(model.tags.size(), {});

  for (const auto& sent : train.sentences) {
    std::vector<int> seq;
    seq.reserve(sent.size() + 3);
    seq.push_back(begin);
    seq.push_back(begin);
    for (const auto& tok : sent) {
      int id = model.tag_id(tok.tag);
      seq.push_back(id);
      model.emission[static_cast<std::size_t>(id)][tok.form] += 1.0;
      model.word_freq[tok.form] += 1.0;
    }
    seq.push_back(end);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      model.unigram[static_cast<std::size_t>(seq[i])] += 1.0;
      if (i + 1 < seq.size())
        model.bigram[{seq[i], seq[i + 1]}] += 1.0;
      if (i + 2 < seq.size())
        model.trigram[{seq[i], seq[i + 1], seq[i + 2]}] += 1.0;
    }
  }
  model.rebuild_derived();

  // Deleted interpolation: each trigram's count is credited to the order
  // whose held-out relative frequency is largest; ties favor the more
  // robust lower-order estimate. Zero denominators count as zero.
  {
    double grand_total = 0.0;
    for (double c : model.unigram)
      grand_total += c;
    double l1 = 0.0, l2 = 0.0, l3 = 0.0;
    for (const auto& [triple, f3] : model.trigram) {
      auto [a, b, c] = triple;
      double f2_ab = model.bigram.at({a, b});
      double f2_bc = model.bigram.at({b, c});
      double f1_b = model.unigram[static_cast<std::size_t>(b)];
      double f1_c = model.unigram[static_cast<std::size_t>(c)];
      double c3 = f2_ab - 1.0 > 0.0 ? (f3 - 1.0) / (f2_ab - 1.0) : 0.0;
      double c2 = f1_b - 1.0 > 0.0 ? (f2_bc - 1.0) / (f1_b - 1.0) : 0.0;
      double c1 =
          grand_total - 1.0 > 0.0 ? (f1_c - 1.0) / (grand_total - 1.0) : 0.0;
      if (c1 >= c2 && c1 >= c3)
        l1 += f3;
      else if (c2 >= c3)
        l2 += f3;
      else
        l3 += f3;
    }
    double sum = l1 + l2 + l3;
    if (sum > 0.0)
      model.lambdas = {l1 / sum, l2 / sum, l3 / sum};
  }

  // Suffix statistics over rare words for unknown-word guessing.
  model.suffix_base.assign(model.tags.size(), 0.0);
  const double rare = static_cast<double>(config.rare_word_threshold);
  for (const auto& sent : train.sentences)
    for (const auto& tok : sent) {
      if (model.word_freq[tok.form] > rare)
        continue;
      int id = model.tag_id(tok.tag);
      model.suffix_base[static_cast<std::size_t>(id)] += 1.0;
      for (const auto& suffix :
           detail::utf8_suffixes(tok.form, config.max_suffix_len)) {
        auto& counts = model.suffix_counts[suffix];
        if (counts.empty())
          counts.assign(model.tags.size(), 0.0);
        counts[static_cast<std::size_t>(id)] += 1.0;
      }
    }

  // Theta: standard deviation of the tags' unconditioned maximum-
  // likelihood probabilities.
  if (model.tags.size() > 1 && model.token_total > 0.0) {
    const double mean = 1.0 / static_cast<double>(model.tags.size());
    double var = 0.0;
    for (std::size_t t = 0; t < model.tags.size(); ++t) {
      double p = model.unigram[t] / model.token_total;
      var += (p - mean) * (p - mean);
    }
    model.suffix_theta =
        std::sqrt(var / static_cast<double>(model.tags.size() - 1));
  }

  return model;
}

inline AnnotationColumn tag_hmm(const HmmModel& model, const Corpus& corpus) {
  AnnotationColumn column{"hmm", {}};
  column.values.reserve(corpus.token_count());
  for (const auto& sent : corpus.sentences) {
    std::vector<std::string> words;
    words.reserve(sent.size());
    for (const auto& tok : sent)
      words.push_back(tok.form);
    std::vector<int> ids = viterbi(model, words, model.config.beam);
    for (int id : ids)
      column.values.push_back(model.tags[static_cast<std::size_t>(id)]);
  }
  return column;
}

class HmmTagger : public Tagger {
public:
  explicit HmmTagger(HmmModel model) : model_(std::move(model)) {}
  AnnotationColumn tag(const Corpus& corpus) const override {
    return tag_hmm(model_, corpus);
  }
  const HmmModel& model() const { return model_; }

private:
  HmmModel model_;
};

inline TaggerTrainer hmm_trainer(HmmConfig config = {}) {
  return [config](const Corpus& train) -> std::unique_ptr<Tagger> {
    return std::make_unique<HmmTagger>(train_hmm(train, config));
  };
}

} // namespace combitag
