#ifndef WIKIDEX_SUBCORPUS_HPP
#define WIKIDEX_SUBCORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "wikidex/catgraph.hpp"
#include "wikidex/detail/tsv.hpp"
#include "wikidex/errors.hpp"
#include "wikidex/index.hpp"
#include "wikidex/profile.hpp"

namespace wikidex {

// The articles selected for one topic: everything tagged with a topic
// category or any of its subcategories.
struct SubcorpusManifest {
  std::string topic_name;
  std::set<int64_t> article_ids;
  std::string source_digest;
  uint32_t depth = kUnlimitedDepth;
};

inline SubcorpusManifest populate(const Topic& topic, const CategoryGraph& graph,
                                  uint32_t max_depth,
                                  std::string source_digest = {}) {
  if (topic.categories.empty()) {
    throw InputError("topic '" + topic.name + "' has no categories");
  }
  SubcorpusManifest manifest;
  manifest.topic_name = topic.name;
  manifest.source_digest = std::move(source_digest);
  manifest.depth = max_depth;
  manifest.article_ids = graph.articles_under(topic.categories, max_depth);
  return manifest;
}

// Index restricted to the manifest's articles: same build semantics,
// statistics reflect the slice only.
inline Index build_topic_index(const SubcorpusManifest& manifest,
                               const std::vector<DocTerms>& corpus_docs,
                               const IndexConstraints& constraints) {
  if (manifest.article_ids.empty()) {
    throw DomainError("empty subcorpus for topic '" + manifest.topic_name + "'");
  }
  IndexBuilder builder;
  size_t found = 0;
  for (const auto& doc : corpus_docs) {
    if (manifest.article_ids.count(doc.article_id) != 0) {
      builder.add_document(doc);
      ++found;
    }
  }
  if (found == 0) {
    throw DomainError("no manifest article is present in the corpus");
  }
  return std::move(builder).finalize(constraints, manifest.source_digest);
}

// ---- persistence ----------------------------------------------------
//
// manifest.tsv: key/value header rows, then one article_id per line:
//   topic_name <TAB> name
//   source_corpus_digest <TAB> digest
//   depth <TAB> number | unlimited
//   article_count <TAB> number
//   <article_id>

inline void save_manifest(const SubcorpusManifest& manifest,
                          const std::filesystem::path& path) {
  std::string out;
  out += "topic_name\t" + detail::tsv_escape(manifest.topic_name) + "\n";
  out += "source_corpus_digest\t" + manifest.source_digest + "\n";
  out += "depth\t" + (manifest.depth == kUnlimitedDepth
                          ? std::string("unlimited")
                          : std::to_string(manifest.depth)) + "\n";
  out += "article_count\t" + std::to_string(manifest.article_ids.size()) + "\n";
  for (const int64_t id : manifest.article_ids) {
    out += std::to_string(id) + "\n";
  }
  detail::write_file_atomic(path, out);
}

inline SubcorpusManifest load_manifest(const std::filesystem::path& path) {
  const std::string text = detail::read_file(path);
  SubcorpusManifest manifest;
  bool have_name = false;
  for (const auto line : detail::split_lines(text)) {
    if (detail::trim(line).empty()) continue;
    const auto fields = detail::tsv_fields(line);
    if (fields.size() == 1) {
      long long id = 0;
      if (!detail::parse_i64(fields[0], id)) {
        throw InputError("malformed manifest row: " + fields[0]);
      }
      manifest.article_ids.insert(id);
    } else if (fields.size() == 2) {
      if (fields[0] == "topic_name") {
        manifest.topic_name = detail::tsv_unescape(fields[1]);
        have_name = true;
      } else if (fields[0] == "source_corpus_digest") {
        manifest.source_digest = fields[1];
      } else if (fields[0] == "depth") {
        if (fields[1] == "unlimited") {
          manifest.depth = kUnlimitedDepth;
        } else {
          long long d = 0;
          if (!detail::parse_i64(fields[1], d) || d < 0) {
            throw InputError("malformed manifest depth: " + fields[1]);
          }
          manifest.depth = static_cast<uint32_t>(d);
        }
      } else if (fields[0] != "article_count") {
        throw InputError("unknown manifest key: " + fields[0]);
      }
    } else {
      throw InputError("malformed manifest row");
    }
  }
  if (!have_name) throw InputError("manifest has no topic_name");
  return manifest;
}

}  // namespace wikidex

#endif  // WIKIDEX_SUBCORPUS_HPP
