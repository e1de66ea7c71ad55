#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wikidex/textnorm.hpp"

using namespace wikidex;

TEST_CASE("tokenize splits on non-letters") {
  CHECK(tokenize("Dogs bark; dogs bark.") ==
        std::vector<std::string>{"Dogs", "bark", "dogs", "bark"});
  CHECK(tokenize("a1b2") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize("  \t\n") == std::vector<std::string>{});
  CHECK(tokenize("") == std::vector<std::string>{});
}

TEST_CASE("tokenize keeps single internal hyphens and apostrophes") {
  CHECK(tokenize("rock-and-roll o'clock") ==
        std::vector<std::string>{"rock-and-roll", "o'clock"});
  // Doubled or dangling separators break the token instead.
  CHECK(tokenize("a--b") == std::vector<std::string>{"a", "b"});
  CHECK(tokenize("end- start") == std::vector<std::string>{"end", "start"});
  CHECK(tokenize("dogs-2 bark") == std::vector<std::string>{"dogs", "bark"});
  CHECK(tokenize("-lead trail-") == std::vector<std::string>{"lead", "trail"});
}

TEST_CASE("tokenize handles non-ASCII letters") {
  CHECK(tokenize("café москва 東京") ==
        std::vector<std::string>{"café", "москва", "東京"});
  CHECK(tokenize("12°C") == std::vector<std::string>{"C"});
}

TEST_CASE("suffix stemmer applies the longest rule once") {
  const auto st = SuffixStemmer::from_text("ies\ty\ning\t\ned\t\ns\t\n");
  CHECK(st.apply("studies") == "study");
  CHECK(st.apply("flies") == "fly");
  CHECK(st.apply("running") == "runn");
  CHECK(st.apply("played") == "play");
  CHECK(st.apply("dogs") == "dog");
  // A rule never consumes the whole token; the longest rule that leaves
  // something behind is the one applied.
  CHECK(st.apply("s") == "s");
  CHECK(st.apply("ies") == "ie");  // "ies" is whole-token, "s" is not
  CHECK(st.apply("ing") == "ing");
  // Only one rewrite: the produced form is not re-stemmed.
  CHECK(st.apply("classes") == "classe");
}

TEST_CASE("stemmer file grammar skips comments and blanks") {
  const auto st = SuffixStemmer::from_text("# comment\n\n  ies\ty  \n");
  CHECK_FALSE(st.empty());
  CHECK(st.apply("ponies") == "pony");
  CHECK(SuffixStemmer::from_text("# only comments\n").empty());
  CHECK(SuffixStemmer().apply("dogs") == "dogs");
}

TEST_CASE("stemmer fixture file loads") {
  const auto st = SuffixStemmer::from_file(testutil::fixture("stemmer_en.tsv").string());
  CHECK(st.apply("puppies") == "puppy");
  CHECK(st.apply("barked") == "bark");
}

TEST_CASE("normalize lowercases, stems, and drops short or stop lemmas") {
  auto cfg = make_normalizer("en");
  CHECK(normalize("Dog", cfg) == "dog");
  CHECK(normalize("The", cfg) == std::nullopt);   // stopword
  CHECK(normalize("a", cfg) == std::nullopt);  // too short
  CHECK(normalize("ab", cfg) == "ab");         // exactly at the limit
}

TEST_CASE("minimum length counts code points, not bytes") {
  NormalizerConfig cfg;
  cfg.min_token_len = 3;
  CHECK(normalize("до", cfg) == std::nullopt);  // 2 code points, 4 bytes
  CHECK(normalize("дом", cfg) == "дом");
  cfg.min_token_len = 1;
  CHECK(normalize("é", cfg) == "é");
}

TEST_CASE("stopword entries are folded through the stemmer at load") {
  NormalizerConfig cfg;
  cfg.min_token_len = 2;
  cfg.stemmer = SuffixStemmer::from_text("s\t\n");
  load_stopwords(cfg, "dogs\n# note\n\nCATS\n");
  CHECK(cfg.stopwords.count("dog") == 1);
  CHECK(cfg.stopwords.count("cat") == 1);
  CHECK(cfg.stopwords.count("dogs") == 0);
  // Both surface forms now normalize into the stop set.
  CHECK(normalize("dogs", cfg) == std::nullopt);
  CHECK(normalize("dog", cfg) == std::nullopt);
  CHECK(normalize("dogged", cfg) == "dogged");
}

TEST_CASE("stopword fixture file loads") {
  NormalizerConfig cfg;
  load_stopwords_file(cfg, testutil::fixture("stopwords_extra.txt").string());
  CHECK(cfg.stopwords.count("zumba") == 1);
  CHECK(cfg.stopwords.count("pad") == 1);
  CHECK(cfg.stopwords.size() == 2);
}

TEST_CASE("built-in stopword lists") {
  const auto en = make_normalizer("en");
  CHECK(en.stopwords.count("the") == 1);
  CHECK(en.stopwords.count("while") == 1);
  CHECK(en.stopwords.count("most") == 1);
  CHECK(en.stopwords.count("dog") == 0);
  CHECK(make_normalizer("simple").stopwords == en.stopwords);
  const auto ru = make_normalizer("ru");
  CHECK(ru.stopwords.count("и") == 1);
  CHECK(make_normalizer("xx").stopwords.empty());
}

TEST_CASE("term_frequencies counts retained lemmas") {
  const auto cfg = make_normalizer("en");
  const auto tf = term_frequencies("The dog chases the dogs.", cfg);
  CHECK(tf.counts == std::map<std::string, uint64_t>{
                         {"chases", 1}, {"dog", 1}, {"dogs", 1}});
  CHECK(tf.total_tokens == 3);

  const auto empty = term_frequencies("the a of", cfg);
  CHECK(empty.counts.empty());
  CHECK(empty.total_tokens == 0);
}

TEST_CASE("fold_lemma without lowercasing") {
  NormalizerConfig cfg;
  cfg.lowercase = false;
  CHECK(fold_lemma("Dog", cfg) == "Dog");
  cfg.lowercase = true;
  CHECK(fold_lemma("DoG", cfg) == "dog");
  CHECK(fold_lemma("МОСКВА", cfg) == "москва");
}
