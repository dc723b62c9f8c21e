#include <catch2/catch_amalgamated.hpp>

#include "combitag/mbt.hpp"
#include "helpers.hpp"

using namespace combitag;

TEST_CASE("an unambiguous corpus is re-tagged exactly") {
  test_helpers::Rng rng(404);
  for (int round = 0; round < 10; ++round) {
    // every word gets one fixed tag
    Corpus train;
    std::map<std::string, std::string> lexicon;
    std::size_t n_words = rng.between(3, 10);
    for (std::size_t w = 0; w < n_words; ++w)
      lexicon["w" + std::to_string(w)] = "T" + std::to_string(rng.below(4));
    std::size_t n_sents = rng.between(2, 8);
    for (std::size_t s = 0; s < n_sents; ++s) {
      Sentence sent;
      std::size_t len = rng.between(1, 6);
      for (std::size_t i = 0; i < len; ++i) {
        std::string word = "w" + std::to_string(rng.below(n_words));
        sent.push_back({word, lexicon[word]});
      }
      train.sentences.push_back(std::move(sent));
    }
    MbtModel model = train_mbt(train);
    AnnotationColumn col = tag_mbt(model, train);
    std::size_t pos = 0;
    for (const auto& sent : train.sentences)
      for (const auto& tok : sent)
        REQUIRE(col.values[pos++] == tok.tag);
  }
}

TEST_CASE("one-word corpus yields a single ambitag entry") {
  Corpus train{"", {{{"solo", "X"}}}};
  MbtModel model = train_mbt(train);
  REQUIRE(model.ambitag.size() == 1);
  REQUIRE(model.ambitag.at("solo") == "X");
  REQUIRE_THROWS_AS(train_mbt({"", {}}), TrainError);
}

TEST_CASE("ambitags join the sorted distinct training tags") {
  Corpus train{"",
               {{{"bank", "N"}, {"bank", "WW"}, {"bank", "N"}},
                {{"de", "LID"}}}};
  MbtModel model = train_mbt(train);
  REQUIRE(model.ambitag.at("bank") == "N|WW");
  REQUIRE(model.ambitag.at("de") == "LID");
}

TEST_CASE("known-word cases match the hand enumeration") {
  Corpus train{"",
               {{{"de", "LID"}, {"bank", "N"}, {"staat", "WW"}},
                {{"ik", "VNW"}, {"bank", "WW"}}}};
  MbtModel model = train_mbt(train);

  std::vector<mbl::TrainingCase> expected = {
      {{"_", "_", "LID", "de", "N|WW"}, "LID"},
      {{"_", "LID", "N|WW", "bank", "WW"}, "N"},
      {{"LID", "N", "WW", "staat", "_"}, "WW"},
      {{"_", "_", "VNW", "ik", "N|WW"}, "VNW"},
      {{"_", "VNW", "N|WW", "bank", "_"}, "WW"},
  };
  REQUIRE(model.known_base.cases() == expected);

  // every word here is rare (frequency <= 5), so each token also
  // produces an unknown-word case with letter features
  REQUIRE(model.unknown_base.has_value());
  std::vector<mbl::TrainingCase> expected_unknown = {
      {{"_", "_", "d", "_", "d", "e", "N|WW"}, "LID"},
      {{"_", "LID", "b", "a", "n", "k", "WW"}, "N"},
      {{"LID", "N", "s", "a", "a", "t", "_"}, "WW"},
      {{"_", "_", "i", "_", "i", "k", "N|WW"}, "VNW"},
      {{"_", "VNW", "b", "a", "n", "k", "_"}, "WW"},
  };
  REQUIRE(model.unknown_base->cases() == expected_unknown);
}

TEST_CASE("rare-word threshold controls the unknown base") {
  Corpus train;
  for (int i = 0; i < 7; ++i)
    train.sentences.push_back({{"vaak", "X"}});
  MbtModel no_rare = train_mbt(train); // frequency 7 > default threshold 5
  REQUIRE_FALSE(no_rare.unknown_base.has_value());

  MbtConfig wide;
  wide.rare_threshold = 10;
  MbtModel with_rare = train_mbt(train, wide);
  REQUIRE(with_rare.unknown_base.has_value());
  REQUIRE(with_rare.unknown_base->size() == 7);
}

TEST_CASE("unseen words go through the unknown base") {
  Corpus train{"",
               {{{"de", "LID"}, {"kat", "N"}},
                {{"de", "LID"}, {"hond", "N"}}}};
  MbtModel model = train_mbt(train);
  // "muis" shares the unknown-word letter features' shape with the nouns
  Corpus test{"", {{{"de", "?"}, {"muis", "?"}}}};
  AnnotationColumn col = tag_mbt(model, test);
  REQUIRE(col.values[0] == "LID");
  REQUIRE(col.values[1] == "N");
}

TEST_CASE("empty corpus tags to an empty column") {
  MbtModel model = train_mbt({"", {{{"a", "X"}}}});
  REQUIRE(tag_mbt(model, {"", {}}).values.empty());
}

TEST_CASE("tagging is deterministic") {
  test_helpers::Rng rng(9);
  Corpus train = test_helpers::random_corpus(rng, 8, 6);
  Corpus test = test_helpers::random_corpus(rng, 4, 6);
  MbtModel model = train_mbt(train);
  AnnotationColumn first = tag_mbt(model, test);
  REQUIRE(first.size() == test.token_count());
  for (int i = 0; i < 5; ++i)
    REQUIRE(tag_mbt(model, test) == first);
}
