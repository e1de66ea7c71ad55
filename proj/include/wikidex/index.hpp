#ifndef WIKIDEX_INDEX_HPP
#define WIKIDEX_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wikidex/detail/digest.hpp"
#include "wikidex/detail/tsv.hpp"
#include "wikidex/errors.hpp"
#include "wikidex/textnorm.hpp"

namespace wikidex {

// Size knobs for the built index. Postings lists are truncated, but
// corpus-wide frequencies are always computed over the full corpus.
struct IndexConstraints {
  uint64_t max_postings_per_term = 1000;
  uint64_t min_corpus_freq = 1;
  std::optional<uint64_t> max_terms;
};

struct TermRecord {
  uint32_t term_id = 0;  // 0-based lexicographic rank of the lemma
  std::string lemma;
  uint64_t corpus_freq = 0;  // occurrences across all articles, uncapped
  uint64_t doc_freq = 0;     // articles containing the lemma, uncapped
};

struct Posting {
  int64_t article_id = 0;
  uint64_t tf = 0;
};

struct ArticleInfo {
  int64_t article_id = 0;
  std::string title;
  uint64_t token_total = 0;  // retained-lemma count of the article text
};

struct IndexStats {
  uint64_t wordform_count = 0;
  uint64_t relation_count = 0;   // retained postings
  uint64_t words_in_corpus = 0;  // Σ corpus_freq over retained terms
  uint64_t article_count = 0;
};

// One indexable document: an article reduced to lemma frequencies.
struct DocTerms {
  int64_t article_id = 0;
  std::string title;
  TermFreqs freqs;
};

constexpr std::string_view kIndexFormatVersion = "1";

class Index {
 public:
  // ---- queries ------------------------------------------------------

  std::optional<uint32_t> find_term(std::string_view lemma) const {
    const auto it = term_by_lemma_.find(std::string(lemma));
    if (it == term_by_lemma_.end()) return std::nullopt;
    return it->second;
  }

  const TermRecord& term(uint32_t term_id) const {
    if (term_id >= terms_.size()) {
      throw UnknownTermError("unknown term id: " + std::to_string(term_id));
    }
    return terms_[term_id];
  }

  // Smoothed inverse document frequency; strictly positive, equal to 1
  // for a term present in every article.
  double idf(uint32_t term_id) const {
    const auto& rec = term(term_id);
    const double n = static_cast<double>(articles_.size());
    const double df = static_cast<double>(rec.doc_freq);
    return std::log((n + 1.0) / (df + 1.0)) + 1.0;
  }

  // Length-normalized weight of a retained posting; nullopt when the
  // pair is not stored (stored weights are never zero).
  std::optional<double> tfidf(uint32_t term_id, int64_t article_id) const {
    if (term_id >= terms_.size()) return std::nullopt;
    for (const auto& p : postings_[term_id]) {
      if (p.article_id == article_id) {
        const auto* art = article(article_id);
        const double total = art ? static_cast<double>(art->token_total) : 0.0;
        if (total <= 0.0) return std::nullopt;
        return (static_cast<double>(p.tf) / total) * idf(term_id);
      }
    }
    return std::nullopt;
  }

  // Capped postings, tf descending then article_id ascending. Unknown
  // terms yield an empty list.
  const std::vector<Posting>& postings(uint32_t term_id) const {
    static const std::vector<Posting> kEmpty;
    if (term_id >= postings_.size()) return kEmpty;
    return postings_[term_id];
  }

  const ArticleInfo* article(int64_t article_id) const {
    const auto it = article_pos_.find(article_id);
    if (it == article_pos_.end()) return nullptr;
    return &articles_[it->second];
  }

  const ArticleInfo* article_by_title(std::string_view title) const {
    const auto it = article_by_title_.find(std::string(title));
    if (it == article_by_title_.end()) return nullptr;
    return &articles_[it->second];
  }

  // Euclidean norm of the article's stored tf-idf vector; 0 for
  // unknown articles or articles with no retained postings.
  double article_norm(int64_t article_id) const {
    const auto it = article_pos_.find(article_id);
    if (it == article_pos_.end()) return 0.0;
    return norms_[it->second];
  }

  const std::vector<TermRecord>& terms() const { return terms_; }
  const std::vector<ArticleInfo>& articles() const { return articles_; }
  const IndexConstraints& constraints() const { return constraints_; }
  const std::string& source_digest() const { return source_digest_; }

  IndexStats stats() const {
    IndexStats st;
    st.wordform_count = terms_.size();
    st.article_count = articles_.size();
    for (const auto& rec : terms_) st.words_in_corpus += rec.corpus_freq;
    for (const auto& plist : postings_) st.relation_count += plist.size();
    return st;
  }

 private:
  friend class IndexBuilder;
  friend Index load_index(const std::filesystem::path& dir);
  friend void save_index(const Index& index, const std::filesystem::path& dir);

  void rebuild_lookups() {
    term_by_lemma_.clear();
    article_pos_.clear();
    article_by_title_.clear();
    for (const auto& rec : terms_) term_by_lemma_[rec.lemma] = rec.term_id;
    for (size_t i = 0; i < articles_.size(); ++i) {
      article_pos_[articles_[i].article_id] = i;
      article_by_title_.emplace(articles_[i].title, i);
    }
    norms_.assign(articles_.size(), 0.0);
    for (uint32_t t = 0; t < postings_.size(); ++t) {
      const double w_idf = idf(t);
      for (const auto& p : postings_[t]) {
        const auto it = article_pos_.find(p.article_id);
        if (it == article_pos_.end()) continue;
        const double total = static_cast<double>(articles_[it->second].token_total);
        if (total <= 0.0) continue;
        const double w = (static_cast<double>(p.tf) / total) * w_idf;
        norms_[it->second] += w * w;
      }
    }
    for (auto& n : norms_) n = std::sqrt(n);
  }

  std::vector<ArticleInfo> articles_;           // sorted by article_id
  std::vector<TermRecord> terms_;               // sorted by lemma
  std::vector<std::vector<Posting>> postings_;  // aligned with terms_
  IndexConstraints constraints_;
  std::string source_digest_;

  std::unordered_map<std::string, uint32_t> term_by_lemma_;
  std::unordered_map<int64_t, size_t> article_pos_;
  std::unordered_map<std::string, size_t> article_by_title_;
  std::vector<double> norms_;
};

// Mergeable accumulator: feed documents (possibly from several
// workers), merge the partials, then finalize once. The result is
// independent of feeding order and of how documents were partitioned.
class IndexBuilder {
 public:
  void add_document(const DocTerms& doc) {
    uint64_t check = 0;
    for (const auto& [lemma, tf] : doc.freqs.counts) {
      auto& acc = acc_[lemma];
      acc.corpus_freq += tf;
      acc.postings.push_back({doc.article_id, tf});
      check += tf;
    }
    if (check != doc.freqs.total_tokens) {
      throw InputError("inconsistent term frequencies for article " +
                       std::to_string(doc.article_id));
    }
    articles_.push_back({doc.article_id, doc.title, doc.freqs.total_tokens});
  }

  void merge(IndexBuilder&& other) {
    for (auto& [lemma, acc] : other.acc_) {
      auto& mine = acc_[lemma];
      mine.corpus_freq += acc.corpus_freq;
      mine.postings.insert(mine.postings.end(), acc.postings.begin(),
                           acc.postings.end());
    }
    articles_.insert(articles_.end(),
                     std::make_move_iterator(other.articles_.begin()),
                     std::make_move_iterator(other.articles_.end()));
    other.acc_.clear();
    other.articles_.clear();
  }

  Index finalize(const IndexConstraints& constraints,
                 std::string source_digest = {}) && {
    if (constraints.max_postings_per_term < 1 || constraints.min_corpus_freq < 1 ||
        (constraints.max_terms && *constraints.max_terms < 1)) {
      throw InputError("index constraints must be at least 1");
    }
    Index index;
    index.constraints_ = constraints;
    index.source_digest_ = std::move(source_digest);

    index.articles_ = std::move(articles_);
    std::sort(index.articles_.begin(), index.articles_.end(),
              [](const ArticleInfo& a, const ArticleInfo& b) {
                return a.article_id < b.article_id;
              });
    for (size_t i = 1; i < index.articles_.size(); ++i) {
      if (index.articles_[i].article_id == index.articles_[i - 1].article_id) {
        throw InputError("duplicate article id: " +
                         std::to_string(index.articles_[i].article_id));
      }
    }

    // Retention: frequency floor first, then the optional global term
    // budget (highest corpus_freq wins, ties to the smaller lemma).
    std::vector<std::map<std::string, TermAcc>::iterator> keep;
    keep.reserve(acc_.size());
    for (auto it = acc_.begin(); it != acc_.end(); ++it) {
      if (it->second.corpus_freq >= constraints.min_corpus_freq) keep.push_back(it);
    }
    if (constraints.max_terms && keep.size() > *constraints.max_terms) {
      std::sort(keep.begin(), keep.end(), [](const auto& a, const auto& b) {
        if (a->second.corpus_freq != b->second.corpus_freq)
          return a->second.corpus_freq > b->second.corpus_freq;
        return a->first < b->first;
      });
      keep.resize(*constraints.max_terms);
      std::sort(keep.begin(), keep.end(),
                [](const auto& a, const auto& b) { return a->first < b->first; });
    }
    if (keep.empty()) throw DomainError("empty corpus: no terms retained");

    index.terms_.reserve(keep.size());
    index.postings_.reserve(keep.size());
    for (auto& it : keep) {
      TermRecord rec;
      rec.term_id = static_cast<uint32_t>(index.terms_.size());
      rec.lemma = it->first;
      rec.corpus_freq = it->second.corpus_freq;
      rec.doc_freq = it->second.postings.size();
      auto plist = std::move(it->second.postings);
      std::sort(plist.begin(), plist.end(), [](const Posting& a, const Posting& b) {
        if (a.tf != b.tf) return a.tf > b.tf;
        return a.article_id < b.article_id;
      });
      if (plist.size() > constraints.max_postings_per_term) {
        plist.resize(constraints.max_postings_per_term);
      }
      index.terms_.push_back(std::move(rec));
      index.postings_.push_back(std::move(plist));
    }
    acc_.clear();

    index.rebuild_lookups();
    return index;
  }

 private:
  struct TermAcc {
    uint64_t corpus_freq = 0;
    std::vector<Posting> postings;  // one per contributing article
  };
  std::map<std::string, TermAcc> acc_;  // byte order = code-point order
  std::vector<ArticleInfo> articles_;
};

// Sequential build; documents may arrive in any order.
inline Index build_index(const std::vector<DocTerms>& docs,
                         const IndexConstraints& constraints,
                         std::string source_digest = {}) {
  IndexBuilder builder;
  for (const auto& doc : docs) builder.add_document(doc);
  return std::move(builder).finalize(constraints, std::move(source_digest));
}

// ---- persistence ----------------------------------------------------
//
// A saved index is a directory of UTF-8, LF, tab-separated tables:
//   meta.tsv       key/value rows (format_version first)
//   articles.tsv   article_id  title  token_total      (by article_id)
//   terms.tsv      term_id  lemma  corpus_freq  doc_freq  (by term_id)
//   postings.tsv   term_id  article_id  tf  (term_id asc, tf desc, id asc)
//   checksums.tsv  filename  fnv1a64-digest
// Tables are byte-deterministic for a given logical index.

namespace index_detail {

inline const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names = {"articles.tsv", "meta.tsv",
                                                 "postings.tsv", "terms.tsv"};
  return names;
}

}  // namespace index_detail

inline void save_index(const Index& index, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create index directory: " + dir.string());

  const IndexStats st = index.stats();
  std::string meta;
  meta += "format_version\t" + std::string(kIndexFormatVersion) + "\n";
  meta += "article_count\t" + std::to_string(st.article_count) + "\n";
  meta += "wordform_count\t" + std::to_string(st.wordform_count) + "\n";
  meta += "relation_count\t" + std::to_string(st.relation_count) + "\n";
  meta += "words_in_corpus\t" + std::to_string(st.words_in_corpus) + "\n";
  meta += "max_postings_per_term\t" +
          std::to_string(index.constraints().max_postings_per_term) + "\n";
  meta += "min_corpus_freq\t" +
          std::to_string(index.constraints().min_corpus_freq) + "\n";
  meta += "max_terms\t" +
          (index.constraints().max_terms
               ? std::to_string(*index.constraints().max_terms)
               : std::string("none")) +
          "\n";
  meta += "source_corpus_digest\t" + index.source_digest() + "\n";

  std::string articles;
  for (const auto& art : index.articles()) {
    articles += std::to_string(art.article_id);
    articles += '\t';
    articles += detail::tsv_escape(art.title);
    articles += '\t';
    articles += std::to_string(art.token_total);
    articles += '\n';
  }

  std::string terms;
  std::string postings;
  for (const auto& rec : index.terms()) {
    terms += std::to_string(rec.term_id);
    terms += '\t';
    terms += detail::tsv_escape(rec.lemma);
    terms += '\t';
    terms += std::to_string(rec.corpus_freq);
    terms += '\t';
    terms += std::to_string(rec.doc_freq);
    terms += '\n';
    for (const auto& p : index.postings(rec.term_id)) {
      postings += std::to_string(rec.term_id);
      postings += '\t';
      postings += std::to_string(p.article_id);
      postings += '\t';
      postings += std::to_string(p.tf);
      postings += '\n';
    }
  }

  const std::map<std::string, const std::string*> tables = {
      {"articles.tsv", &articles},
      {"meta.tsv", &meta},
      {"postings.tsv", &postings},
      {"terms.tsv", &terms},
  };
  std::string checksums;
  for (const auto& [name, content] : tables) {
    detail::write_file_atomic(dir / name, *content);
    checksums += name + "\t" + detail::digest_string(*content) + "\n";
  }
  detail::write_file_atomic(dir / "checksums.tsv", checksums);
}

inline Index load_index(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;

  // Integrity first: every table must be present and match its digest.
  const std::string checksum_text = detail::read_file(dir / "checksums.tsv");
  std::map<std::string, std::string> expected;
  for (const auto line : detail::split_lines(checksum_text)) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::tsv_fields(line);
    if (fields.size() != 2) throw InputError("malformed checksums.tsv");
    expected[fields[0]] = fields[1];
  }
  std::map<std::string, std::string> contents;
  for (const auto& name : index_detail::table_names()) {
    contents[name] = detail::read_file(dir / name);  // MissingFileError
    const auto it = expected.find(name);
    if (it == expected.end()) {
      throw ChecksumError("no checksum recorded for " + name);
    }
    if (detail::digest_string(contents[name]) != it->second) {
      throw ChecksumError("checksum mismatch for " + name);
    }
  }

  std::map<std::string, std::string> meta;
  for (const auto line : detail::split_lines(contents["meta.tsv"])) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::tsv_fields(line);
    if (fields.size() != 2) throw InputError("malformed meta.tsv");
    meta[fields[0]] = fields[1];
  }
  const auto meta_value = [&](const std::string& key) -> const std::string& {
    const auto it = meta.find(key);
    if (it == meta.end()) throw InputError("meta.tsv missing key: " + key);
    return it->second;
  };
  if (meta_value("format_version") != kIndexFormatVersion) {
    throw FormatVersionError("unsupported index format version: " +
                             meta_value("format_version"));
  }

  const auto meta_u64 = [&](const std::string& key) {
    long long v = 0;
    if (!detail::parse_i64(meta_value(key), v) || v < 0) {
      throw InputError("meta.tsv: bad value for " + key);
    }
    return static_cast<uint64_t>(v);
  };

  Index index;
  index.constraints_.max_postings_per_term = meta_u64("max_postings_per_term");
  index.constraints_.min_corpus_freq = meta_u64("min_corpus_freq");
  if (meta_value("max_terms") != "none") {
    index.constraints_.max_terms = meta_u64("max_terms");
  }
  index.source_digest_ = meta_value("source_corpus_digest");

  for (const auto line : detail::split_lines(contents["articles.tsv"])) {
    const auto fields = detail::tsv_fields(line);
    long long id = 0, total = 0;
    if (fields.size() != 3 || !detail::parse_i64(fields[0], id) ||
        !detail::parse_i64(fields[2], total) || total < 0) {
      throw InputError("malformed articles.tsv row");
    }
    index.articles_.push_back(
        {id, detail::tsv_unescape(fields[1]), static_cast<uint64_t>(total)});
  }

  for (const auto line : detail::split_lines(contents["terms.tsv"])) {
    const auto fields = detail::tsv_fields(line);
    long long tid = 0, cf = 0, df = 0;
    if (fields.size() != 4 || !detail::parse_i64(fields[0], tid) ||
        !detail::parse_i64(fields[2], cf) || !detail::parse_i64(fields[3], df) ||
        tid != static_cast<long long>(index.terms_.size()) || cf < df || df < 1) {
      throw InputError("malformed terms.tsv row");
    }
    TermRecord rec;
    rec.term_id = static_cast<uint32_t>(tid);
    rec.lemma = detail::tsv_unescape(fields[1]);
    rec.corpus_freq = static_cast<uint64_t>(cf);
    rec.doc_freq = static_cast<uint64_t>(df);
    index.terms_.push_back(std::move(rec));
  }
  index.postings_.resize(index.terms_.size());

  for (const auto line : detail::split_lines(contents["postings.tsv"])) {
    const auto fields = detail::tsv_fields(line);
    long long tid = 0, aid = 0, tf = 0;
    if (fields.size() != 3 || !detail::parse_i64(fields[0], tid) ||
        !detail::parse_i64(fields[1], aid) || !detail::parse_i64(fields[2], tf) ||
        tid < 0 || tid >= static_cast<long long>(index.terms_.size()) || tf < 1) {
      throw InputError("malformed postings.tsv row");
    }
    index.postings_[static_cast<size_t>(tid)].push_back(
        {aid, static_cast<uint64_t>(tf)});
  }

  index.rebuild_lookups();

  const IndexStats st = index.stats();
  if (st.article_count != meta_u64("article_count") ||
      st.wordform_count != meta_u64("wordform_count") ||
      st.relation_count != meta_u64("relation_count") ||
      st.words_in_corpus != meta_u64("words_in_corpus")) {
    throw InputError("index metadata disagrees with table contents");
  }
  return index;
}

}  // namespace wikidex

#endif  // WIKIDEX_INDEX_HPP
