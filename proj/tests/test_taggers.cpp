#include <catch2/catch_amalgamated.hpp>

#include "combitag/annotation.hpp"
#include "combitag/taggers.hpp"
#include "helpers.hpp"

using namespace combitag;

TEST_CASE("unigram tagger picks the modal tag per word") {
  Corpus train{"", {{{"w", "X"}, {"w", "Y"}, {"w", "X"}, {"n", "N"}}}};
  UnigramModel model = train_unigram(train);
  REQUIRE(model.best_tag.at("w") == "X");

  Corpus test{"", {{{"w", "?"}, {"unseen", "?"}}}};
  AnnotationColumn col = tag_unigram(model, test);
  REQUIRE(col.values == std::vector<std::string>{"X", "X"});
  // global modal tag X backs off unseen words (X appears twice)

  REQUIRE_THROWS_AS(train_unigram({"", {}}), TrainError);
}

TEST_CASE("unigram ties break lexicographically") {
  Corpus train{"", {{{"w", "Y"}, {"w", "X"}, {"a", "N"}, {"b", "N"}}}};
  UnigramModel model = train_unigram(train);
  REQUIRE(model.best_tag.at("w") == "X"); // X and Y tie at one each
  REQUIRE(model.fallback_tag == "N");     // N is the corpus modal tag
}

TEST_CASE("external columns load aligned values") {
  Corpus c{"", {{{"omdat", "VG"}, {"ik", "VNW"}}, {{"sta", "WW"}}}};
  std::string file = "omdat\tConj(onder, metfin)\n"
                     "ik\tPron(per, 1, ev, nom)\n"
                     "\n"
                     "sta\tV(intrans, ott, 1, ev)\n\n";
  AnnotationColumn col = load_external_column(c, file, "w1");
  REQUIRE(col.source_name == "w1");
  REQUIRE(col.values[0] == "Conj(onder, metfin)");
  REQUIRE(col.values.size() == 3);
}

TEST_CASE("external column alignment failures carry the position") {
  Corpus c{"", {{{"a", "X"}, {"b", "Y"}}}};
  try {
    load_external_column(c, "a\tv\n\n", "src");
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    REQUIRE(e.position() == 1); // first missing token
  }
  try {
    load_external_column(c, "a\tv\nwrong\tv\n\n", "src");
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    REQUIRE(e.position() == 1);
  }
  // same tokens, different sentence boundary
  REQUIRE_THROWS_AS(load_external_column(c, "a\tv\n\nb\tv\n\n", "src"),
                    AlignmentError);
  // extra trailing sentence
  REQUIRE_THROWS_AS(load_external_column(c, "a\tv\nb\tv\n\nc\tv\n\n", "src"),
                    AlignmentError);
}

TEST_CASE("loading is the inverse of writing a column") {
  test_helpers::Rng rng(77);
  for (int i = 0; i < 300; ++i) {
    Corpus c = test_helpers::random_corpus(rng);
    AnnotationColumn col{"col", {}};
    for (std::size_t t = 0; t < c.token_count(); ++t)
      col.values.push_back(test_helpers::random_symbol(rng, 6));
    REQUIRE(load_external_column(c, write_column(c, col), "col") == col);
  }
  Corpus c{"", {{{"a", "X"}}}};
  REQUIRE_THROWS_AS(write_column(c, {"col", {"v", "extra"}}),
                    AlignmentError);
}

TEST_CASE("tagger columns always match the corpus token count") {
  test_helpers::Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    Corpus train = test_helpers::random_corpus(rng, 6, 6);
    Corpus test = test_helpers::random_corpus(rng, 6, 6);
    auto tagger = unigram_trainer()(train);
    REQUIRE(tagger->tag(test).size() == test.token_count());
  }
}
