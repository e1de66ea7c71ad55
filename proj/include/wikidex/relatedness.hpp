#ifndef WIKIDEX_RELATEDNESS_HPP
#define WIKIDEX_RELATEDNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wikidex/index.hpp"
#include "wikidex/textnorm.hpp"

namespace wikidex {

struct ScoredArticle {
  int64_t article_id = 0;
  double score = 0.0;  // cosine similarity in [0, 1]
};

// A term's concept vector: its retained postings weighted by tf-idf.
// Unknown lemmas yield an empty vector.
inline std::vector<std::pair<int64_t, double>> term_concept_vector(
    const Index& index, std::string_view lemma) {
  std::vector<std::pair<int64_t, double>> out;
  const auto tid = index.find_term(lemma);
  if (!tid) return out;
  const double idf = index.idf(*tid);
  for (const auto& p : index.postings(*tid)) {
    const ArticleInfo* art = index.article(p.article_id);
    if (art == nullptr || art->token_total == 0) continue;
    out.emplace_back(p.article_id,
                     static_cast<double>(p.tf) /
                         static_cast<double>(art->token_total) * idf);
  }
  return out;
}

// Articles most similar to a free text: cosine between the query's
// tf-idf vector and each article's stored vector, accumulated by
// walking only the postings of the query's terms. Articles sharing no
// retained term with the query never appear.
inline std::vector<ScoredArticle> similar_articles(const Index& index,
                                                   std::string_view text,
                                                   const NormalizerConfig& cfg,
                                                   size_t k) {
  const TermFreqs query = term_frequencies(text, cfg);
  if (query.total_tokens == 0) return {};
  const double qlen = static_cast<double>(query.total_tokens);

  std::unordered_map<int64_t, double> dot;
  double qnorm_sq = 0.0;
  for (const auto& [lemma, f] : query.counts) {
    const auto tid = index.find_term(lemma);
    if (!tid) continue;  // out-of-vocabulary query terms carry no weight
    const double idf = index.idf(*tid);
    const double qw = static_cast<double>(f) / qlen * idf;
    qnorm_sq += qw * qw;
    for (const auto& p : index.postings(*tid)) {
      const ArticleInfo* art = index.article(p.article_id);
      if (art == nullptr || art->token_total == 0) continue;
      const double aw = static_cast<double>(p.tf) /
                        static_cast<double>(art->token_total) * idf;
      dot[p.article_id] += qw * aw;
    }
  }
  if (qnorm_sq <= 0.0) return {};
  const double qnorm = std::sqrt(qnorm_sq);

  std::vector<ScoredArticle> scored;
  scored.reserve(dot.size());
  for (const auto& [article_id, d] : dot) {
    const double anorm = index.article_norm(article_id);
    if (anorm <= 0.0) continue;
    const double raw = d / (qnorm * anorm);
    scored.push_back({article_id, std::min(1.0, std::max(0.0, raw))});
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredArticle& a, const ScoredArticle& b) {
              if (a.score != b.score) return a.score > b.score;
              return a.article_id < b.article_id;
            });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace wikidex

#endif  // WIKIDEX_RELATEDNESS_HPP
