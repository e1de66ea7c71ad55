#ifndef WIKIDEX_CORPUS_HPP
#define WIKIDEX_CORPUS_HPP

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "wikidex/detail/tsv.hpp"
#include "wikidex/detail/xml.hpp"
#include "wikidex/errors.hpp"
#include "wikidex/wikitext.hpp"

namespace wikidex {

// One retained page of a wiki corpus, markup still intact. Only the
// article namespace (0) and the category namespace (14) are retained.
struct RawPage {
  int64_t page_id = 0;
  std::string title;
  int ns = 0;
  std::string wikitext;
  std::optional<std::string> redirect_target;

  bool is_category() const { return ns == 14; }
  bool is_redirect() const { return redirect_target.has_value(); }
};

constexpr int kArticleNamespace = 0;
constexpr int kCategoryNamespace = 14;

// Pull-style page source. next() yields pages in file order until
// nullopt; structurally broken records are counted, not yielded.
class PageStream {
 public:
  virtual ~PageStream() = default;
  virtual std::optional<RawPage> next() = 0;

  // Records that could not be parsed into a page.
  uint64_t skipped_malformed() const { return skipped_; }
  // Well-formed pages discarded for being outside namespaces 0/14.
  uint64_t dropped_namespaces() const { return dropped_; }

 protected:
  uint64_t skipped_ = 0;
  uint64_t dropped_ = 0;
};

namespace corpus_detail {

inline bool title_names_category(std::string_view title,
                                 const MarkupLangConfig& cfg) {
  const size_t colon = title.find(':');
  if (colon == std::string_view::npos || colon == 0) return false;
  return wt_detail::matches_alias(detail::trim(title.substr(0, colon)),
                                  cfg.category_aliases);
}

}  // namespace corpus_detail

// Streaming reader for MediaWiki XML exports. Memory stays bounded by
// the largest single page, not the dump size. A dump whose root
// element never closes raises TruncatedDumpError once the readable
// pages have been yielded.
class XmlDumpStream : public PageStream {
 public:
  XmlDumpStream(std::unique_ptr<std::istream> owned, MarkupLangConfig cfg)
      : owned_(std::move(owned)), tok_(*owned_), cfg_(std::move(cfg)) {}

  XmlDumpStream(std::istream& in, MarkupLangConfig cfg)
      : tok_(in), cfg_(std::move(cfg)) {}

  size_t peak_buffer_bytes() const { return tok_.peak_buffer_bytes(); }

  std::optional<RawPage> next() override {
    using Kind = detail::XmlTokenizer::Kind;
    for (;;) {
      const auto ev = tok_.next();
      if (ev.kind == Kind::Eof) {
        if (root_open_) throw TruncatedDumpError("dump ended before the root element closed");
        return std::nullopt;
      }
      if (ev.kind == Kind::StartTag) {
        if (!root_seen_) {
          root_seen_ = true;
          root_name_ = ev.name;
          root_open_ = !ev.self_closing;
          continue;
        }
        if (ev.name == "page" && !ev.self_closing) {
          auto page = read_page();
          if (page) return page;
          continue;  // malformed or filtered: counters already updated
        }
      } else if (ev.kind == Kind::EndTag && ev.name == root_name_) {
        root_open_ = false;
      }
    }
  }

 private:
  // Consumes events through </page>. Returns nullopt for pages that
  // are malformed or outside the retained namespaces.
  std::optional<RawPage> read_page() {
    using Kind = detail::XmlTokenizer::Kind;
    std::vector<std::string> stack;  // open elements inside <page>
    std::string title, ns_text, id_text, text, redirect_attr;
    bool have_ns = false, redirect_elem = false;
    int revisions_seen = 0;

    for (;;) {
      const auto ev = tok_.next();
      if (ev.kind == Kind::Eof) {
        throw TruncatedDumpError("dump ended inside a page element");
      }
      if (ev.kind == Kind::StartTag) {
        if (ev.name == "redirect") {
          redirect_elem = true;
          if (redirect_attr.empty()) {
            redirect_attr = detail::XmlTokenizer::attr(ev.text, "title");
          }
        }
        if (ev.self_closing) continue;
        if (ev.name == "revision") ++revisions_seen;
        stack.push_back(ev.name);
      } else if (ev.kind == Kind::EndTag) {
        if (ev.name == "page") break;  // also tolerates unclosed children
        if (!stack.empty() && stack.back() == ev.name) stack.pop_back();
      } else if (ev.kind == Kind::Text && !stack.empty()) {
        const std::string& top = stack.back();
        if (stack.size() == 1) {
          if (top == "title") title += ev.text;
          else if (top == "ns") { ns_text += ev.text; have_ns = true; }
          else if (top == "id" && id_text.empty()) id_text = ev.text;
        } else if (stack.size() == 2 && top == "text" &&
                   stack.front() == "revision" && revisions_seen == 1) {
          text += ev.text;
        }
      }
    }

    const auto title_trimmed = detail::trim(title);
    long long id = 0;
    const bool have_id = detail::parse_i64(detail::trim(id_text), id);
    if (title_trimmed.empty() || !have_id) {
      ++skipped_;
      return std::nullopt;
    }

    int ns;
    if (have_ns) {
      long long ns_val = 0;
      if (!detail::parse_i64(detail::trim(ns_text), ns_val)) {
        ++skipped_;
        return std::nullopt;
      }
      ns = static_cast<int>(ns_val);
    } else {
      // Old exports omit <ns>; category pages are still recognizable
      // by their title prefix.
      ns = corpus_detail::title_names_category(title_trimmed, cfg_)
               ? kCategoryNamespace
               : kArticleNamespace;
    }
    if (ns != kArticleNamespace && ns != kCategoryNamespace) {
      ++dropped_;
      return std::nullopt;
    }

    RawPage page;
    page.page_id = id;
    page.title.assign(title_trimmed);
    page.ns = ns;
    page.wikitext = std::move(text);
    if (redirect_elem && !redirect_attr.empty()) {
      page.redirect_target = redirect_attr;
    } else {
      page.redirect_target = detect_redirect(page.wikitext, cfg_);
    }
    return page;
  }

  std::unique_ptr<std::istream> owned_;
  detail::XmlTokenizer tok_;
  MarkupLangConfig cfg_;
  bool root_seen_ = false;
  bool root_open_ = false;
  std::string root_name_;
};

// Reader for the line-delimited JSON corpus form: one object per line
// with integer "id", string "title", integer "ns", string "text" and
// an optional string "redirect". Blank lines are ignored; any other
// unusable line counts as malformed.
class JsonLinesStream : public PageStream {
 public:
  JsonLinesStream(std::unique_ptr<std::istream> owned, MarkupLangConfig cfg)
      : owned_(std::move(owned)), in_(*owned_), cfg_(std::move(cfg)) {}

  JsonLinesStream(std::istream& in, MarkupLangConfig cfg)
      : in_(in), cfg_(std::move(cfg)) {}

  std::optional<RawPage> next() override {
    std::string line;
    while (std::getline(in_, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (detail::trim(line).empty()) continue;
      auto page = parse_line(line);
      if (page) return page;
    }
    return std::nullopt;
  }

 private:
  std::optional<RawPage> parse_line(const std::string& line) {
    const auto j = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded() || !j.is_object() || !j.contains("id") ||
        !j["id"].is_number_integer() || !j.contains("title") ||
        !j["title"].is_string() || !j.contains("ns") ||
        !j["ns"].is_number_integer() || !j.contains("text") ||
        !j["text"].is_string()) {
      ++skipped_;
      return std::nullopt;
    }
    RawPage page;
    page.page_id = j["id"].get<int64_t>();
    page.title = j["title"].get<std::string>();
    page.ns = j["ns"].get<int>();
    page.wikitext = j["text"].get<std::string>();
    if (detail::trim(page.title).empty()) {
      ++skipped_;
      return std::nullopt;
    }
    if (page.ns != kArticleNamespace && page.ns != kCategoryNamespace) {
      ++dropped_;
      return std::nullopt;
    }
    if (j.contains("redirect") && j["redirect"].is_string() &&
        !j["redirect"].get<std::string>().empty()) {
      page.redirect_target = j["redirect"].get<std::string>();
    } else {
      page.redirect_target = detect_redirect(page.wikitext, cfg_);
    }
    return page;
  }

  std::unique_ptr<std::istream> owned_;
  std::istream& in_;
  MarkupLangConfig cfg_;
};

enum class CorpusKind { XmlDump, JsonLines };

// Chooses a reader by file extension, falling back to sniffing the
// first meaningful byte ('<' opens XML).
inline CorpusKind detect_corpus_kind(const std::string& path) {
  const auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           std::string_view(path).substr(path.size() - suffix.size()) == suffix;
  };
  if (ends_with(".xml")) return CorpusKind::XmlDump;
  if (ends_with(".jsonl") || ends_with(".jsonlines") || ends_with(".ndjson") ||
      ends_with(".json")) {
    return CorpusKind::JsonLines;
  }
  std::ifstream probe(path, std::ios::binary);
  char c;
  while (probe.get(c)) {
    if (detail::is_space_ch(c)) continue;
    return c == '<' ? CorpusKind::XmlDump : CorpusKind::JsonLines;
  }
  return CorpusKind::JsonLines;
}

inline std::unique_ptr<PageStream> open_corpus(const std::string& path,
                                               const MarkupLangConfig& cfg) {
  auto file = std::make_unique<std::ifstream>(path, std::ios::binary);
  if (!file->is_open()) throw InputError("cannot open corpus: " + path);
  if (detect_corpus_kind(path) == CorpusKind::XmlDump) {
    return std::make_unique<XmlDumpStream>(std::move(file), cfg);
  }
  return std::make_unique<JsonLinesStream>(std::move(file), cfg);
}

}  // namespace wikidex

#endif  // WIKIDEX_CORPUS_HPP
