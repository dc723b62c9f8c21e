// Shared test utilities: deterministic random generators for corpora,
// lexicons and case sets, plus the independent brute-force oracles the
// implementation is checked against.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "combitag/annotation.hpp"
#include "combitag/corpus.hpp"
#include "combitag/hmm.hpp"
#include "combitag/mbl.hpp"
#include "combitag/taggers.hpp"

namespace test_helpers {

// splitmix64: tiny, fully specified, good enough for test data
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, bound)
  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(next() % bound);
  }
  // uniform in [lo, hi]
  std::size_t between(std::size_t lo, std::size_t hi) {
    return lo + below(hi - lo + 1);
  }
  double unit() { // in [0,1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

private:
  std::uint64_t state_;
};

// Symbols may contain anything except tab and newline; include spaces,
// punctuation and a multi-byte character to stress the parsers.
inline std::string random_symbol(Rng& rng, std::size_t max_len = 8) {
  static const std::vector<std::string> pieces = {
      "a", "b", "c", "d", "e", "f", "g", "h", "x", "y", "z", "N", "V",
      "(", ")", ",", " ", "|", "=", "-", "é"};
  std::size_t len = rng.between(1, max_len);
  std::string s;
  for (std::size_t i = 0; i < len; ++i)
    s += pieces[rng.below(pieces.size())];
  // leading/trailing spaces are legal but make weak test data; keep them
  // only sometimes
  if (rng.below(4) != 0) {
    while (!s.empty() && s.front() == ' ')
      s.front() = 'a';
    while (!s.empty() && s.back() == ' ')
      s.back() = 'b';
  }
  return s;
}

inline combitag::Corpus random_corpus(Rng& rng, std::size_t max_sentences = 8,
                                      std::size_t max_tokens = 8) {
  combitag::Corpus corpus;
  std::size_t n = rng.between(1, max_sentences);
  for (std::size_t s = 0; s < n; ++s) {
    combitag::Sentence sent;
    std::size_t len = rng.between(1, max_tokens);
    for (std::size_t t = 0; t < len; ++t)
      sent.push_back({random_symbol(rng), random_symbol(rng, 4)});
    corpus.sentences.push_back(std::move(sent));
  }
  return corpus;
}

inline std::vector<combitag::mbl::TrainingCase>
random_cases(Rng& rng, std::size_t count, std::size_t arity,
             std::size_t alphabet, std::size_t classes) {
  std::vector<combitag::mbl::TrainingCase> cases;
  for (std::size_t i = 0; i < count; ++i) {
    combitag::mbl::TrainingCase c;
    for (std::size_t f = 0; f < arity; ++f)
      c.features.push_back("v" + std::to_string(rng.below(alphabet)));
    c.target = "c" + std::to_string(rng.below(classes));
    cases.push_back(std::move(c));
  }
  return cases;
}

// Independent exhaustive-scan IB1 oracle: compute every distance, sort,
// take the k smallest distinct values, majority-vote with the same tie
// policy (global class frequency, then lexicographically smallest).
inline std::string
oracle_classify(const std::vector<combitag::mbl::TrainingCase>& cases,
                const combitag::mbl::FeatureVector& query, std::size_t k,
                const std::vector<double>& weights) {
  std::vector<double> distances;
  distances.reserve(cases.size());
  for (const auto& c : cases) {
    double d = 0.0;
    for (std::size_t i = 0; i < query.size(); ++i)
      if (query[i] != c.features[i])
        d += weights.empty() ? 1.0 : weights[i];
    distances.push_back(d);
  }
  std::vector<double> distinct = distances;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()),
                 distinct.end());
  if (distinct.size() > k)
    distinct.resize(k);
  double cutoff = distinct.back();

  std::map<std::string, std::size_t> votes, global;
  for (const auto& c : cases)
    ++global[c.target];
  for (std::size_t i = 0; i < cases.size(); ++i)
    if (distances[i] <= cutoff)
      ++votes[cases[i].target];

  std::string best;
  std::size_t best_votes = 0, best_global = 0;
  for (const auto& [target, count] : votes) {
    std::size_t g = global[target];
    if (best.empty() || count > best_votes ||
        (count == best_votes && g > best_global)) {
      best = target;
      best_votes = count;
      best_global = g;
    }
  }
  return best;
}

// Tagger whose output encodes exactly which training sentences its model
// saw, via the sentence-marker form of each training sentence's first
// token. Lets tests verify the no-leakage protocol from the outside.
class ProbeTagger : public combitag::Tagger {
public:
  explicit ProbeTagger(std::string fingerprint)
      : fingerprint_(std::move(fingerprint)) {}
  combitag::AnnotationColumn tag(const combitag::Corpus& corpus) const override {
    combitag::AnnotationColumn col{"probe", {}};
    col.values.assign(corpus.token_count(), fingerprint_);
    return col;
  }

private:
  std::string fingerprint_;
};

inline combitag::TaggerTrainer probe_trainer() {
  return [](const combitag::Corpus& train) -> std::unique_ptr<combitag::Tagger> {
    std::string fingerprint = "+";
    for (const auto& sent : train.sentences) {
      fingerprint += sent.front().form;
      fingerprint += '+';
    }
    return std::make_unique<ProbeTagger>(std::move(fingerprint));
  };
}

// Synthetic bootstrap scenario: a small training corpus in a "new"
// tagset, a test corpus with out-of-vocabulary tokens, and an auxiliary
// external column in a second tagset produced by a fixed deterministic
// mapping from the gold tags plus symbol noise.
struct BootstrapScenario {
  combitag::Corpus train, test;
  std::string aux_train_text, aux_test_text;
};

inline BootstrapScenario
make_bootstrap_scenario(Rng& rng, std::size_t train_tokens,
                        std::size_t test_tokens, double oov_rate,
                        double noise_rate) {
  // many types relative to the token budget: in the bootstrapping regime
  // most words are rare, which is what the combiner must cope with
  const std::size_t n_tags = 10;
  const std::size_t known_types = 900, oov_types = 250;

  auto tag_name = [](std::size_t i) { return "t" + std::to_string(i); };
  auto aux_name = [](std::size_t i) { return "A" + std::to_string(i); };

  auto random_word = [&rng]() {
    std::size_t len = rng.between(3, 8);
    std::string w;
    for (std::size_t i = 0; i < len; ++i)
      w += static_cast<char>('a' + rng.below(26));
    return w;
  };
  std::vector<std::string> known, oov;
  std::map<std::string, std::size_t> true_tag; // word type -> tag index
  while (known.size() < known_types) {
    std::string w = random_word();
    if (true_tag.count(w))
      continue;
    true_tag[w] = rng.below(n_tags);
    known.push_back(w);
  }
  while (oov.size() < oov_types) {
    std::string w = random_word();
    if (true_tag.count(w))
      continue;
    true_tag[w] = rng.below(n_tags);
    oov.push_back(w);
  }

  // mild skew so some known types stay rare enough to feed suffix stats
  auto pick_known = [&]() {
    std::size_t i = rng.below(known.size());
    std::size_t j = rng.below(known.size());
    return known[std::min(i, j)];
  };

  BootstrapScenario scenario;
  while (scenario.train.token_count() < train_tokens) {
    combitag::Sentence sent;
    std::size_t len = rng.between(5, 12);
    for (std::size_t i = 0; i < len; ++i) {
      std::string w = pick_known();
      sent.push_back({w, tag_name(true_tag[w])});
    }
    scenario.train.sentences.push_back(std::move(sent));
  }
  while (scenario.test.token_count() < test_tokens) {
    combitag::Sentence sent;
    std::size_t len = rng.between(5, 12);
    for (std::size_t i = 0; i < len; ++i) {
      std::string w =
          rng.unit() < oov_rate ? oov[rng.below(oov.size())] : pick_known();
      sent.push_back({w, tag_name(true_tag[w])});
    }
    scenario.test.sentences.push_back(std::move(sent));
  }

  // the auxiliary tagger: aux tag i mirrors target tag i, with a fixed
  // rate of tokens flipped to a different aux symbol
  auto aux_column = [&](const combitag::Corpus& corpus) {
    combitag::AnnotationColumn col{"aux", {}};
    for (const auto& sent : corpus.sentences)
      for (const auto& tok : sent) {
        std::size_t i = true_tag[tok.form];
        if (rng.unit() < noise_rate)
          i = (i + 1 + rng.below(n_tags - 1)) % n_tags;
        col.values.push_back(aux_name(i));
      }
    return col;
  };
  scenario.aux_train_text =
      combitag::write_column(scenario.train, aux_column(scenario.train));
  scenario.aux_test_text =
      combitag::write_column(scenario.test, aux_column(scenario.test));
  return scenario;
}

// Exhaustive path maximization over every tag sequence, scored with the
// model's own per-sequence scorer; ties return the lexicographically
// smallest id sequence. Only usable for tiny inventories and sentences.
inline std::vector<int>
oracle_best_sequence(const combitag::HmmModel& model,
                     const std::vector<std::string>& words) {
  const int n_tags = static_cast<int>(model.tags.size());
  std::vector<int> current(words.size(), 0), best;
  double best_score = -std::numeric_limits<double>::infinity();
  while (true) {
    double score = combitag::sequence_log_score(model, words, current);
    if (score > best_score) {
      best_score = score;
      best = current;
    }
    std::size_t pos = 0;
    while (pos < current.size()) {
      if (++current[pos] < n_tags)
        break;
      current[pos] = 0;
      ++pos;
    }
    if (pos == current.size())
      break;
  }
  return best;
}

// Random real-valued-count HMM over a small inventory; continuous counts
// make exact score ties vanishingly unlikely.
inline combitag::HmmModel random_hmm(Rng& rng, std::size_t n_tags,
                                     const std::vector<std::string>& vocab) {
  combitag::HmmModel model;
  for (std::size_t t = 0; t < n_tags; ++t)
    model.tags.push_back("T" + std::to_string(t));
  const int begin = model.begin_id(), end = model.end_id();
  model.unigram.assign(n_tags + 2, 0.0);
  model.emission.assign(n_tags, {});

  auto count = [&rng]() { return 0.5 + 9.5 * rng.unit(); };
  for (std::size_t t = 0; t < n_tags; ++t) {
    model.unigram[t] = count() * 4.0;
    for (const auto& w : vocab)
      if (rng.below(3) != 0) {
        model.emission[t][w] = count();
        model.word_freq[w] += model.emission[t][w];
      }
  }
  model.unigram[static_cast<std::size_t>(begin)] = count() * 4.0;
  model.unigram[static_cast<std::size_t>(end)] = count() * 2.0;

  std::vector<int> contexts;
  for (std::size_t t = 0; t < n_tags; ++t)
    contexts.push_back(static_cast<int>(t));
  contexts.push_back(begin);
  std::vector<int> nexts;
  for (std::size_t t = 0; t < n_tags; ++t)
    nexts.push_back(static_cast<int>(t));
  nexts.push_back(end);

  for (int a : contexts) {
    for (int b : nexts)
      if (rng.below(4) != 0)
        model.bigram[{a, b}] = count();
    for (int b : contexts)
      for (int c : nexts)
        if (rng.below(3) != 0)
          model.trigram[{a, b, c}] = count();
  }
  double l1 = 0.2 + rng.unit(), l2 = 0.2 + rng.unit(), l3 = 0.2 + rng.unit();
  double sum = l1 + l2 + l3;
  model.lambdas = {l1 / sum, l2 / sum, l3 / sum};

  model.suffix_base.assign(n_tags, 0.0);
  for (std::size_t t = 0; t < n_tags; ++t)
    model.suffix_base[t] = count();
  // a couple of one-letter suffixes so unknown words hit the suffix path
  for (char ch : {'q', 'u', 'v'}) {
    auto& counts = model.suffix_counts[std::string(1, ch)];
    counts.assign(n_tags, 0.0);
    for (std::size_t t = 0; t < n_tags; ++t)
      if (rng.below(2) == 0)
        counts[t] = count();
  }
  model.suffix_theta = rng.unit();
  model.rebuild_derived();
  return model;
}

} // namespace test_helpers
