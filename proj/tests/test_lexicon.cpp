#include <catch2/catch_amalgamated.hpp>

#include "combitag/lexicon.hpp"
#include "helpers.hpp"

using namespace combitag;

TEST_CASE("build deduplicates and sorts categories") {
  Lexicon lex = Lexicon::build({{"sta", "werkwoord"},
                                {"sta", "substantief"},
                                {"sta", "werkwoord"}});
  REQUIRE(lex.entries().at("sta") ==
          std::vector<std::string>{"substantief", "werkwoord"});
  REQUIRE(Lexicon::build({}).size() == 0);
  REQUIRE(Lexicon::build({{"klas", "substantief"}}).lookup("klas") ==
          "substantief");
}

TEST_CASE("build is permutation-invariant") {
  std::vector<std::pair<std::string, std::string>> pairs = {
      {"a", "x"}, {"a", "y"}, {"b", "z"}, {"c", "x"}, {"a", "x"}};
  Lexicon forward = Lexicon::build(pairs);
  std::reverse(pairs.begin(), pairs.end());
  REQUIRE(forward == Lexicon::build(pairs));
}

TEST_CASE("build rejects bad records with their index") {
  try {
    Lexicon::build({{"ok", "cat"}, {"", "cat"}});
    FAIL("expected DataError");
  } catch (const DataError& e) {
    REQUIRE(e.record() == 1);
  }
  REQUIRE_THROWS_AS(Lexicon::build({{"w", ""}}), DataError);
  // the sentinel may not be used as a real category
  REQUIRE_THROWS_AS(Lexicon::build({{"w", "UNKNOWN"}}), DataError);
}

TEST_CASE("lookup joins categories and falls back to UNKNOWN") {
  Lexicon lex = Lexicon::build(
      {{"klas", "substantief"}, {"sta", "substantief"}, {"sta", "werkwoord"}});
  REQUIRE(lex.lookup("omdat") == "UNKNOWN");
  REQUIRE(lex.lookup("klas") == "substantief");
  REQUIRE(lex.lookup("sta") == "substantief|werkwoord");
}

TEST_CASE("annotate emits one value per token in corpus order") {
  Lexicon lex = Lexicon::build({{"klas", "substantief"}}, "cel");
  Corpus c{"", {{{"klas", "N"}}}};
  AnnotationColumn col = lex.annotate(c);
  REQUIRE(col.source_name == "cel");
  REQUIRE(col.values == std::vector<std::string>{"substantief"});

  Corpus more{"", {{{"x", "A"}, {"y", "B"}}, {{"z", "C"}}}};
  AnnotationColumn all_unknown = lex.annotate(more);
  REQUIRE(all_unknown.values ==
          std::vector<std::string>{"UNKNOWN", "UNKNOWN", "UNKNOWN"});

  test_helpers::Rng rng(5);
  for (int i = 0; i < 50; ++i) {
    Corpus random = test_helpers::random_corpus(rng);
    REQUIRE(lex.annotate(random).size() == random.token_count());
  }
}

TEST_CASE("lexicon file parse/write are inverse") {
  REQUIRE(parse_lexicon("sta\twerkwoord\nsta\tsubstantief\n").lookup("sta") ==
          "substantief|werkwoord");
  REQUIRE_THROWS_AS(parse_lexicon("no tab here\n"), ParseError);

  test_helpers::Rng rng(17);
  for (int i = 0; i < 300; ++i) {
    std::vector<std::pair<std::string, std::string>> pairs;
    std::size_t n = rng.between(0, 20);
    for (std::size_t p = 0; p < n; ++p) {
      std::string cat = test_helpers::random_symbol(rng, 5);
      if (cat == "UNKNOWN")
        cat = "known";
      pairs.emplace_back(test_helpers::random_symbol(rng, 5), cat);
    }
    Lexicon lex = Lexicon::build(pairs);
    REQUIRE(parse_lexicon(write_lexicon(lex)) == lex);
  }
}
