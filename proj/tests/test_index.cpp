#include <cmath>
#include <map>

#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "wikidex/index.hpp"

using namespace wikidex;

namespace {

DocTerms doc(int64_t id, std::string title,
             std::map<std::string, uint64_t> counts) {
  DocTerms d;
  d.article_id = id;
  d.title = std::move(title);
  for (const auto& [lemma, tf] : counts) d.freqs.total_tokens += tf;
  d.freqs.counts = std::move(counts);
  return d;
}

std::vector<DocTerms> sample_docs() {
  return {
      doc(1, "Alpha", {{"red", 3}, {"blue", 1}}),
      doc(2, "Beta", {{"red", 1}, {"blue", 2}, {"green", 1}}),
      doc(3, "Gamma", {{"red", 2}, {"green", 2}, {"yellow", 1}}),
      doc(4, "Delta", {{"zeta", 7}}),
  };
}

bool same_postings(const Index& a, const Index& b) {
  if (a.terms().size() != b.terms().size()) return false;
  for (const auto& rec : a.terms()) {
    const auto other = b.find_term(rec.lemma);
    if (!other) return false;
    const auto& pa = a.postings(rec.term_id);
    const auto& pb = b.postings(*other);
    if (pa.size() != pb.size()) return false;
    for (size_t i = 0; i < pa.size(); ++i) {
      if (pa[i].article_id != pb[i].article_id || pa[i].tf != pb[i].tf) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("index counts and ordering match a direct computation") {
  const auto index = build_index(sample_docs(), {});

  // One term per distinct lemma, identified by lexicographic rank.
  REQUIRE(index.terms().size() == 5);
  const char* expected_order[] = {"blue", "green", "red", "yellow", "zeta"};
  for (size_t i = 0; i < 5; ++i) {
    CHECK(index.terms()[i].lemma == expected_order[i]);
    CHECK(index.terms()[i].term_id == i);
    CHECK(index.find_term(expected_order[i]) == static_cast<uint32_t>(i));
  }

  const auto& red = index.terms()[*index.find_term("red")];
  CHECK(red.corpus_freq == 6);
  CHECK(red.doc_freq == 3);
  const auto& zeta = index.terms()[*index.find_term("zeta")];
  CHECK(zeta.corpus_freq == 7);
  CHECK(zeta.doc_freq == 1);

  // Postings ordered by tf descending, then article id.
  const auto& red_postings = index.postings(red.term_id);
  REQUIRE(red_postings.size() == 3);
  CHECK(red_postings[0].article_id == 1);
  CHECK(red_postings[0].tf == 3);
  CHECK(red_postings[1].article_id == 3);
  CHECK(red_postings[1].tf == 2);
  CHECK(red_postings[2].article_id == 2);
  CHECK(red_postings[2].tf == 1);

  // idf and tf-idf follow the smoothed formulas.
  const double n = 4.0;
  CHECK(index.idf(red.term_id) ==
        Catch::Approx(std::log((n + 1.0) / (3.0 + 1.0)) + 1.0).epsilon(1e-12));
  CHECK(index.idf(zeta.term_id) ==
        Catch::Approx(std::log((n + 1.0) / (1.0 + 1.0)) + 1.0).epsilon(1e-12));
  const auto w = index.tfidf(red.term_id, 1);
  REQUIRE(w.has_value());
  CHECK(*w == Catch::Approx((3.0 / 4.0) * index.idf(red.term_id)).epsilon(1e-12));
  CHECK_FALSE(index.tfidf(red.term_id, 4).has_value());  // pair not stored
  CHECK_FALSE(index.tfidf(99, 1).has_value());

  const auto st = index.stats();
  CHECK(st.article_count == 4);
  CHECK(st.wordform_count == 5);
  CHECK(st.relation_count == 3 + 2 + 2 + 1 + 1);
  CHECK(st.words_in_corpus == 4 + 4 + 5 + 7);

  CHECK(index.article(2)->title == "Beta");
  CHECK(index.article(2)->token_total == 4);
  CHECK(index.article(99) == nullptr);
  CHECK(index.article_by_title("Gamma")->article_id == 3);
  CHECK(index.article_by_title("Nope") == nullptr);
}

TEST_CASE("unknown term lookups") {
  const auto index = build_index(sample_docs(), {});
  CHECK_FALSE(index.find_term("missing").has_value());
  CHECK(index.postings(12345).empty());
  CHECK_THROWS_AS(index.term(12345), UnknownTermError);
}

TEST_CASE("merged partial builders equal a sequential build") {
  const auto docs = sample_docs();
  const auto sequential = build_index(docs, {});

  IndexBuilder left, right;
  left.add_document(docs[3]);
  left.add_document(docs[0]);
  right.add_document(docs[2]);
  right.add_document(docs[1]);
  left.merge(std::move(right));
  const auto merged = std::move(left).finalize({});

  CHECK(same_postings(sequential, merged));
  CHECK(merged.stats().words_in_corpus == sequential.stats().words_in_corpus);
  REQUIRE(merged.articles().size() == 4);
  CHECK(merged.articles()[0].article_id == 1);  // sorted regardless of feed order
  CHECK(merged.articles()[3].article_id == 4);
}

TEST_CASE("posting lists are capped after sorting; frequencies are not") {
  IndexConstraints c;
  c.max_postings_per_term = 2;
  const auto index = build_index(sample_docs(), c);
  const auto red = *index.find_term("red");
  const auto& postings = index.postings(red);
  REQUIRE(postings.size() == 2);
  CHECK(postings[0].article_id == 1);
  CHECK(postings[1].article_id == 3);
  CHECK(index.terms()[red].doc_freq == 3);     // counted before the cap
  CHECK(index.terms()[red].corpus_freq == 6);  // includes dropped postings
  CHECK(index.stats().words_in_corpus == 20);  // unchanged by capping
  CHECK(index.stats().relation_count == 2 + 2 + 2 + 1 + 1);
}

TEST_CASE("capping ties break toward the smaller article id") {
  const std::vector<DocTerms> docs = {
      doc(5, "E", {{"blue", 2}}),
      doc(2, "B", {{"blue", 2}}),
      doc(1, "A", {{"blue", 1}}),
  };
  IndexConstraints c;
  c.max_postings_per_term = 2;
  const auto index = build_index(docs, c);
  const auto& postings = index.postings(*index.find_term("blue"));
  REQUIRE(postings.size() == 2);
  CHECK(postings[0].article_id == 2);
  CHECK(postings[1].article_id == 5);
}

TEST_CASE("rare lemmas fall below the corpus-frequency floor") {
  IndexConstraints c;
  c.min_corpus_freq = 3;
  const auto index = build_index(sample_docs(), c);
  CHECK_FALSE(index.find_term("yellow").has_value());  // corpus_freq 1
  CHECK(index.find_term("blue").has_value());          // corpus_freq 3, kept
  CHECK(index.terms().size() == 4);
  // The retained terms are re-ranked densely.
  for (size_t i = 0; i < index.terms().size(); ++i) {
    CHECK(index.terms()[i].term_id == i);
  }
}

TEST_CASE("a term budget keeps the most frequent lemmas") {
  IndexConstraints c;
  c.max_terms = 2;
  const auto index = build_index(sample_docs(), c);
  REQUIRE(index.terms().size() == 2);   // zeta (7) and red (6)
  CHECK(index.terms()[0].lemma == "red");
  CHECK(index.terms()[1].lemma == "zeta");

  // Frequency ties resolve to the lexicographically smaller lemma.
  c.max_terms = 3;
  const auto three = build_index(sample_docs(), c);
  REQUIRE(three.terms().size() == 3);   // blue and green tie at 3
  CHECK(three.find_term("blue").has_value());
  CHECK_FALSE(three.find_term("green").has_value());
}

TEST_CASE("builder input validation") {
  CHECK_THROWS_AS(build_index({doc(1, "A", {{"x", 1}}), doc(1, "B", {{"y", 1}})}, {}),
                  InputError);

  DocTerms bad;
  bad.article_id = 7;
  bad.freqs.counts = {{"x", 2}};
  bad.freqs.total_tokens = 3;  // disagrees with the counts
  IndexBuilder builder;
  CHECK_THROWS_AS(builder.add_document(bad), InputError);

  CHECK_THROWS_AS(build_index({}, {}), DomainError);  // nothing to index

  IndexConstraints starved;
  starved.min_corpus_freq = 100;
  CHECK_THROWS_AS(build_index(sample_docs(), starved), DomainError);

  IndexConstraints zero;
  zero.max_postings_per_term = 0;
  CHECK_THROWS_AS(build_index(sample_docs(), zero), InputError);
}

TEST_CASE("saved index round-trips and is byte deterministic") {
  testutil::TempDir tmp("index_rt");
  auto docs = sample_docs();
  docs.push_back(doc(9, "We\tird\nname", {{"red", 1}}));
  docs.push_back(doc(10, "Hollow", {}));  // article with no retained lemmas
  IndexConstraints c;
  c.max_postings_per_term = 3;
  c.min_corpus_freq = 1;
  c.max_terms = 10;
  const auto index = build_index(docs, c, "digest123");

  const auto dir_a = tmp / "a";
  const auto dir_b = tmp / "b";
  save_index(index, dir_a);
  const auto loaded = load_index(dir_a);
  save_index(loaded, dir_b);

  CHECK(same_postings(index, loaded));
  CHECK(loaded.source_digest() == "digest123");
  CHECK(loaded.constraints().max_postings_per_term == 3);
  CHECK(loaded.constraints().min_corpus_freq == 1);
  CHECK(loaded.constraints().max_terms == 10);
  CHECK(loaded.article(9)->title == "We\tird\nname");
  CHECK(loaded.article(10)->token_total == 0);
  const auto st = index.stats();
  const auto lt = loaded.stats();
  CHECK(lt.wordform_count == st.wordform_count);
  CHECK(lt.relation_count == st.relation_count);
  CHECK(lt.words_in_corpus == st.words_in_corpus);
  CHECK(lt.article_count == st.article_count);

  for (const char* name :
       {"articles.tsv", "meta.tsv", "postings.tsv", "terms.tsv", "checksums.tsv"}) {
    INFO(name);
    CHECK(testutil::slurp(dir_a / name) == testutil::slurp(dir_b / name));
  }

  // idf survives the round trip (doc_freq and article count intact).
  const auto red = *index.find_term("red");
  CHECK(loaded.idf(*loaded.find_term("red")) ==
        Catch::Approx(index.idf(red)).epsilon(1e-12));
}

TEST_CASE("index loading verifies integrity") {
  testutil::TempDir tmp("index_err");
  const auto dir = tmp / "idx";
  save_index(build_index(sample_docs(), {}), dir);

  SECTION("corrupted table") {
    auto text = testutil::slurp(dir / "postings.tsv");
    text += "0\t1\t1\n";
    testutil::spit(dir / "postings.tsv", text);
    CHECK_THROWS_AS(load_index(dir), ChecksumError);
  }

  SECTION("missing table") {
    std::filesystem::remove(dir / "terms.tsv");
    CHECK_THROWS_AS(load_index(dir), MissingFileError);
  }

  SECTION("missing checksum entry") {
    auto sums = testutil::slurp(dir / "checksums.tsv");
    sums = sums.substr(sums.find('\n') + 1);  // drop the articles.tsv line
    testutil::spit(dir / "checksums.tsv", sums);
    CHECK_THROWS_AS(load_index(dir), ChecksumError);
  }

  SECTION("unsupported format version") {
    auto meta = testutil::slurp(dir / "meta.tsv");
    const auto pos = meta.find("format_version\t1");
    REQUIRE(pos != std::string::npos);
    meta.replace(pos, 16, "format_version\t9");
    testutil::spit(dir / "meta.tsv", meta);
    auto sums = testutil::slurp(dir / "checksums.tsv");
    const auto line = sums.find("meta.tsv\t");
    const auto end = sums.find('\n', line);
    sums.replace(line, end - line, "meta.tsv\t" + detail::digest_string(meta));
    testutil::spit(dir / "checksums.tsv", sums);
    CHECK_THROWS_AS(load_index(dir), FormatVersionError);
  }

  SECTION("metadata disagreeing with tables") {
    auto meta = testutil::slurp(dir / "meta.tsv");
    const auto pos = meta.find("article_count\t4");
    REQUIRE(pos != std::string::npos);
    meta.replace(pos, 15, "article_count\t5");
    testutil::spit(dir / "meta.tsv", meta);
    auto sums = testutil::slurp(dir / "checksums.tsv");
    const auto line = sums.find("meta.tsv\t");
    const auto end = sums.find('\n', line);
    sums.replace(line, end - line, "meta.tsv\t" + detail::digest_string(meta));
    testutil::spit(dir / "checksums.tsv", sums);
    CHECK_THROWS_AS(load_index(dir), InputError);
  }

  SECTION("untouched directory still loads") {
    CHECK_NOTHROW(load_index(dir));
  }
}
