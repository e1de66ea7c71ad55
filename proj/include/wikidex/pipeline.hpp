#ifndef WIKIDEX_PIPELINE_HPP
#define WIKIDEX_PIPELINE_HPP

#include <algorithm>
#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wikidex/catgraph.hpp"
#include "wikidex/corpus.hpp"
#include "wikidex/detail/digest.hpp"
#include "wikidex/index.hpp"
#include "wikidex/textnorm.hpp"
#include "wikidex/wikitext.hpp"

namespace wikidex {

struct CorpusBuildCounts {
  uint64_t pages_indexed = 0;
  uint64_t category_pages = 0;
  uint64_t redirects_skipped = 0;
  uint64_t malformed_skipped = 0;
  uint64_t namespaces_dropped = 0;
};

struct CorpusBuild {
  Index index;
  CategoryGraph graph;
  CorpusBuildCounts counts;
};

namespace pipeline_detail {

constexpr size_t kBatchPages = 256;

// Strip + normalize a batch, fanning out across workers. Output slots
// are preassigned, so the result is independent of scheduling.
inline std::vector<DocTerms> process_batch(const std::vector<RawPage>& batch,
                                           const MarkupLangConfig& mcfg,
                                           const NormalizerConfig& ncfg,
                                           unsigned workers) {
  std::vector<DocTerms> out(batch.size());
  const auto work = [&](size_t begin, size_t end) {
    for (size_t i = begin; i < end; ++i) {
      const auto stripped = strip_markup(batch[i].wikitext, mcfg);
      out[i].article_id = batch[i].page_id;
      out[i].title = batch[i].title;
      out[i].freqs = term_frequencies(stripped.plain, ncfg);
    }
  };
  if (workers <= 1 || batch.size() < 2) {
    work(0, batch.size());
    return out;
  }
  const size_t n = std::min<size_t>(workers, batch.size());
  const size_t chunk = (batch.size() + n - 1) / n;
  std::vector<std::thread> threads;
  threads.reserve(n);
  for (size_t t = 0; t < n; ++t) {
    const size_t begin = t * chunk;
    const size_t end = std::min(batch.size(), begin + chunk);
    if (begin >= end) break;
    threads.emplace_back(work, begin, end);
  }
  for (auto& th : threads) th.join();
  return out;
}

}  // namespace pipeline_detail

inline unsigned default_workers() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

// Streams the corpus once, building the category graph and the global
// index together. Redirect pages are counted and excluded entirely;
// category pages feed only the graph. The built index is byte-stable
// on disk for any worker count.
inline CorpusBuild build_corpus_index(const std::string& corpus_path,
                                      const MarkupLangConfig& mcfg,
                                      const NormalizerConfig& ncfg,
                                      const IndexConstraints& constraints,
                                      unsigned workers = default_workers()) {
  auto stream = open_corpus(corpus_path, mcfg);
  CorpusBuild result;
  IndexBuilder builder;
  std::vector<RawPage> batch;

  const auto flush = [&] {
    auto docs = pipeline_detail::process_batch(batch, mcfg, ncfg, workers);
    for (auto& doc : docs) builder.add_document(doc);
    result.counts.pages_indexed += batch.size();
    batch.clear();
  };

  while (auto page = stream->next()) {
    if (page->is_redirect()) {
      ++result.counts.redirects_skipped;
      continue;
    }
    result.graph.add_page(*page, mcfg);
    if (page->is_category()) {
      ++result.counts.category_pages;
      continue;
    }
    batch.push_back(std::move(*page));
    if (batch.size() >= pipeline_detail::kBatchPages) flush();
  }
  flush();

  result.counts.malformed_skipped = stream->skipped_malformed();
  result.counts.namespaces_dropped = stream->dropped_namespaces();
  result.index = std::move(builder).finalize(constraints,
                                             detail::digest_file(corpus_path));
  return result;
}

// Re-derives the per-article term frequencies of every indexable page
// (for building topic indexes out of manifest slices).
inline std::vector<DocTerms> collect_doc_terms(const std::string& corpus_path,
                                               const MarkupLangConfig& mcfg,
                                               const NormalizerConfig& ncfg,
                                               unsigned workers = default_workers()) {
  auto stream = open_corpus(corpus_path, mcfg);
  std::vector<DocTerms> all;
  std::vector<RawPage> batch;
  const auto flush = [&] {
    auto docs = pipeline_detail::process_batch(batch, mcfg, ncfg, workers);
    all.insert(all.end(), std::make_move_iterator(docs.begin()),
               std::make_move_iterator(docs.end()));
    batch.clear();
  };
  while (auto page = stream->next()) {
    if (page->is_redirect() || page->is_category()) continue;
    batch.push_back(std::move(*page));
    if (batch.size() >= pipeline_detail::kBatchPages) flush();
  }
  flush();
  return all;
}

}  // namespace wikidex

#endif  // WIKIDEX_PIPELINE_HPP
