#ifndef WIKIDEX_FILTER_HPP
#define WIKIDEX_FILTER_HPP

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wikidex/detail/text.hpp"
#include "wikidex/detail/xml.hpp"
#include "wikidex/errors.hpp"
#include "wikidex/index.hpp"
#include "wikidex/textnorm.hpp"

namespace wikidex {

// One text arriving from an information source (feed file or text
// drop directory).
struct IncomingItem {
  std::string source_id;
  std::string item_id;  // guid, link, filename, or position
  std::string title;
  std::string body;      // plain text
  std::string published;  // verbatim pubDate when present
};

struct ScoredItem {
  IncomingItem item;
  std::string topic_name;
  double weight = 0.0;
  uint64_t matched_terms = 0;
};

struct FeedParseResult {
  std::vector<IncomingItem> items;
  uint64_t skipped = 0;  // items with neither title nor description
};

namespace filter_detail {

inline std::string clean_fragment(std::string_view raw) {
  return std::string(
      detail::trim(detail::normalize_whitespace(detail::strip_html_tags(raw))));
}

}  // namespace filter_detail

// Minimal RSS 2.0 reader: <rss><channel><item>…. Per item: title,
// description (tag-stripped to plain text), optional guid, link,
// pubDate. item_id prefers guid, then link, then the 1-based position.
// Items with neither title nor description are counted and skipped.
inline FeedParseResult parse_feed(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw InputError("cannot open feed: " + path.string());
  detail::XmlTokenizer tok(in);
  using Kind = detail::XmlTokenizer::Kind;

  FeedParseResult result;
  const std::string source_id = path.filename().string();

  bool saw_root = false;
  bool in_item = false;
  std::string title, description, guid, link, pub_date;
  std::string* capture = nullptr;
  size_t position = 0;

  for (;;) {
    const auto ev = tok.next();
    if (ev.kind == Kind::Eof) break;
    if (!saw_root) {
      if (ev.kind == Kind::StartTag) {
        if (ev.name != "rss") {
          throw InputError("not an RSS document: " + path.string());
        }
        saw_root = true;
      }
      continue;
    }
    if (ev.kind == Kind::StartTag && ev.name == "item" && !ev.self_closing) {
      in_item = true;
      title.clear();
      description.clear();
      guid.clear();
      link.clear();
      pub_date.clear();
      capture = nullptr;
      continue;
    }
    if (!in_item) continue;
    if (ev.kind == Kind::StartTag && !ev.self_closing) {
      if (ev.name == "title") capture = &title;
      else if (ev.name == "description") capture = &description;
      else if (ev.name == "guid") capture = &guid;
      else if (ev.name == "link") capture = &link;
      else if (ev.name == "pubDate") capture = &pub_date;
      else capture = nullptr;
    } else if (ev.kind == Kind::Text) {
      if (capture != nullptr) *capture += ev.text;
    } else if (ev.kind == Kind::EndTag) {
      if (ev.name == "item") {
        in_item = false;
        ++position;
        IncomingItem item;
        item.source_id = source_id;
        item.title = filter_detail::clean_fragment(title);
        item.body = filter_detail::clean_fragment(description);
        if (item.title.empty() && item.body.empty()) {
          ++result.skipped;
          continue;
        }
        const auto g = detail::trim(guid);
        const auto l = detail::trim(link);
        item.item_id = !g.empty() ? std::string(g)
                       : !l.empty() ? std::string(l)
                                    : std::to_string(position);
        item.published = std::string(detail::trim(pub_date));
        result.items.push_back(std::move(item));
      } else {
        capture = nullptr;
      }
    }
  }
  if (!saw_root) throw InputError("not an RSS document: " + path.string());
  return result;
}

// Directory of .txt files: one item per file, filename as item_id,
// first line as title, remainder as body. Unreadable files are
// counted and skipped.
inline FeedParseResult load_text_items(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) {
    throw InputError("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  FeedParseResult result;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    if (!in.is_open()) {
      ++result.skipped;
      continue;
    }
    std::string content((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
    IncomingItem item;
    item.source_id = dir.filename().string();
    item.item_id = file.filename().string();
    const size_t nl = content.find('\n');
    if (nl == std::string::npos) {
      item.title = std::string(detail::trim(content));
    } else {
      item.title = std::string(detail::trim(content.substr(0, nl)));
      item.body = std::string(detail::trim(content.substr(nl + 1)));
    }
    result.items.push_back(std::move(item));
  }
  return result;
}

// Topical weight of a lemma: its relative frequency in the topic
// corpus times the global idf (topic idf when no global index is
// given, or when the lemma is missing there). Zero for lemmas the
// topic index does not know.
inline double term_weight(const Index& topic_index, const Index* global_index,
                          std::string_view lemma) {
  const auto tid = topic_index.find_term(lemma);
  if (!tid) return 0.0;
  const IndexStats st = topic_index.stats();
  if (st.words_in_corpus == 0) return 0.0;
  const double rel = static_cast<double>(topic_index.term(*tid).corpus_freq) /
                     static_cast<double>(st.words_in_corpus);
  double idf = 0.0;
  if (global_index != nullptr) {
    if (const auto gid = global_index->find_term(lemma)) {
      idf = global_index->idf(*gid);
    } else {
      idf = topic_index.idf(*tid);
    }
  } else {
    idf = topic_index.idf(*tid);
  }
  return rel * idf;
}

// Item weight: length-normalized sum of lemma frequencies times their
// topical weights. Title lemmas count title_boost times. Items with no
// retained lemma weigh zero.
inline ScoredItem score_item(const IncomingItem& item, const Index& topic_index,
                             const Index* global_index,
                             const NormalizerConfig& cfg,
                             std::string_view topic_name = {},
                             uint64_t title_boost = 2) {
  ScoredItem scored;
  scored.item = item;
  scored.topic_name = std::string(topic_name);

  TermFreqs freqs = term_frequencies(item.body, cfg);
  const TermFreqs title_freqs = term_frequencies(item.title, cfg);
  for (const auto& [lemma, count] : title_freqs.counts) {
    freqs.counts[lemma] += count * title_boost;
    freqs.total_tokens += count * title_boost;
  }
  if (freqs.total_tokens == 0) return scored;

  double sum = 0.0;
  for (const auto& [lemma, count] : freqs.counts) {
    const double w = term_weight(topic_index, global_index, lemma);
    if (w > 0.0) {
      sum += static_cast<double>(count) * w;
      ++scored.matched_terms;
    }
  }
  scored.weight = sum / static_cast<double>(freqs.total_tokens);
  return scored;
}

// Scores every item and returns them ordered by weight descending,
// ties by item_id ascending; items below min_weight are dropped.
inline std::vector<ScoredItem> rank(const std::vector<IncomingItem>& items,
                                    const Index& topic_index,
                                    const Index* global_index,
                                    const NormalizerConfig& cfg,
                                    std::optional<double> min_weight = {},
                                    std::string_view topic_name = {},
                                    uint64_t title_boost = 2) {
  std::vector<ScoredItem> scored;
  scored.reserve(items.size());
  for (const auto& item : items) {
    auto s = score_item(item, topic_index, global_index, cfg, topic_name,
                        title_boost);
    if (min_weight && s.weight < *min_weight) continue;
    scored.push_back(std::move(s));
  }
  std::sort(scored.begin(), scored.end(),
            [](const ScoredItem& a, const ScoredItem& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.item.item_id < b.item.item_id;
            });
  return scored;
}

}  // namespace wikidex

#endif  // WIKIDEX_FILTER_HPP
