#ifndef WIKIDEX_WIKITEXT_HPP
#define WIKIDEX_WIKITEXT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "wikidex/detail/text.hpp"
#include "wikidex/detail/utf8.hpp"

namespace wikidex {

// Language-dependent markup vocabulary: the namespace aliases that mark
// category and media links, and the keywords that open a redirect page.
struct MarkupLangConfig {
  std::vector<std::string> category_aliases{"Category"};
  std::vector<std::string> file_aliases{"File", "Image", "Media"};
  std::vector<std::string> redirect_aliases{"#REDIRECT"};

  static MarkupLangConfig for_language(std::string_view lang) {
    MarkupLangConfig cfg;
    if (lang == "ru") {
      cfg.category_aliases = {"Категория", "Category"};
      cfg.file_aliases = {"Файл", "Изображение", "File", "Image", "Media"};
      cfg.redirect_aliases = {"#REDIRECT", "#ПЕРЕНАПРАВЛЕНИЕ", "#перенапр"};
    }
    // "en", "simple" and unknown languages share the defaults; the
    // canonical English aliases are always recognized.
    return cfg;
  }
};

// Markup-stripped article: plain text plus the page's category
// memberships (namespace prefix removed, first letter upper-cased).
struct CleanDoc {
  int64_t article_id = 0;
  std::string title;
  std::string text;
  std::vector<std::string> categories;
  uint64_t token_estimate = 0;
};

struct StripResult {
  std::string plain;
  std::vector<std::string> categories;
};

namespace wt_detail {

using detail::is_space_ch;
using detail::trim;

inline bool ascii_ci_equal(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    char x = a[i], y = b[i];
    if (x >= 'A' && x <= 'Z') x = static_cast<char>(x + 32);
    if (y >= 'A' && y <= 'Z') y = static_cast<char>(y + 32);
    if (x != y) return false;
  }
  return true;
}

inline bool matches_alias(std::string_view name,
                          const std::vector<std::string>& aliases) {
  for (const auto& alias : aliases) {
    if (ascii_ci_equal(name, alias)) return true;
    if (detail::uppercase_first(name) == detail::uppercase_first(alias)) return true;
  }
  return false;
}

inline std::string remove_comments(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s.compare(i, 4, "<!--") == 0) {
      const size_t close = s.find("-->", i + 4);
      if (close == std::string_view::npos) break;  // unterminated: drop rest
      i = close + 3;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// Deletes open..close spans, nesting-aware. An unbalanced opener
// swallows the rest of the input (open constructs close at end).
inline std::string remove_nested(std::string_view s, std::string_view open,
                                 std::string_view close) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  int depth = 0;
  while (i < s.size()) {
    if (s.compare(i, open.size(), open) == 0) {
      ++depth;
      i += open.size();
    } else if (depth > 0 && s.compare(i, close.size(), close) == 0) {
      --depth;
      i += close.size();
    } else {
      if (depth == 0) out.push_back(s[i]);
      ++i;
    }
  }
  return out;
}

// Scans past a tag that starts at position i ('<' already seen),
// honoring quoted attribute values. Returns one past '>' or npos.
inline size_t tag_end(std::string_view s, size_t i) {
  char quote = 0;
  for (size_t j = i + 1; j < s.size(); ++j) {
    const char c = s[j];
    if (quote != 0) {
      if (c == quote) quote = 0;
    } else if (c == '"' || c == '\'') {
      quote = c;
    } else if (c == '>') {
      return j + 1;
    }
  }
  return std::string_view::npos;
}

inline bool is_ref_open(std::string_view s, size_t i) {
  static constexpr std::string_view kRef = "<ref";
  if (s.size() - i < kRef.size()) return false;
  for (size_t k = 1; k < kRef.size(); ++k) {
    char c = s[i + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    if (c != kRef[k]) return false;
  }
  const size_t after = i + kRef.size();
  if (after >= s.size()) return true;
  const char c = s[after];
  return c == '>' || c == '/' || is_space_ch(c);
}

inline std::string remove_refs(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<' && is_ref_open(s, i)) {
      const size_t open_end = tag_end(s, i);
      if (open_end == std::string_view::npos) break;  // unclosed tag: drop rest
      if (open_end >= 2 && s[open_end - 2] == '/') {  // self-closing <ref .../>
        i = open_end;
        continue;
      }
      // paired: skip through the matching </ref ...>
      size_t j = open_end;
      size_t resume = std::string_view::npos;
      while (j + 5 <= s.size()) {
        if (s[j] == '<' && s[j + 1] == '/' && is_ref_open(s, j + 1)) {
          resume = tag_end(s, j + 1);
          break;
        }
        ++j;
      }
      if (resume == std::string_view::npos) break;  // unclosed ref: drop rest
      i = resume;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// Tag names wikis understand. Anything else between angle brackets is
// literal text — which is also how wiki engines render unknown tags —
// so stripping stays idempotent on already-plain output.
inline bool is_known_tag_name(std::string_view name) {
  static const std::unordered_set<std::string_view> kTags = {
      "abbr",       "b",          "bdi",         "big",      "blockquote",
      "br",         "caption",    "center",      "cite",     "code",
      "dd",         "del",        "div",         "dl",       "dt",
      "em",         "font",       "gallery",     "h1",       "h2",
      "h3",         "h4",         "h5",          "h6",       "hr",
      "i",          "imagemap",   "includeonly", "ins",      "kbd",
      "li",         "mark",       "math",        "noinclude", "nowiki",
      "ol",         "onlyinclude", "p",          "poem",     "pre",
      "q",          "ref",        "references",  "ruby",     "s",
      "samp",       "small",      "source",      "span",     "strike",
      "strong",     "sub",        "sup",         "syntaxhighlight",
      "table",      "td",         "th",          "timeline", "tr",
      "tt",         "u",          "ul",          "var",      "wbr"};
  return kTags.count(name) != 0;
}

// Removes remaining angle-bracket tags, keeping enclosed content.
inline std::string strip_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    const char next = i + 1 < s.size() ? s[i + 1] : '\0';
    if (s[i] == '<' && (next == '/' || (next >= 'a' && next <= 'z') ||
                        (next >= 'A' && next <= 'Z'))) {
      size_t name_begin = i + 1;
      if (next == '/') ++name_begin;
      size_t name_end = name_begin;
      std::string name;
      while (name_end < s.size() &&
             ((s[name_end] >= 'a' && s[name_end] <= 'z') ||
              (s[name_end] >= 'A' && s[name_end] <= 'Z') ||
              (s[name_end] >= '0' && s[name_end] <= '9'))) {
        char c = s[name_end];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
        name.push_back(c);
        ++name_end;
      }
      if (is_known_tag_name(name)) {
        const size_t end = tag_end(s, i);
        if (end != std::string_view::npos) {
          i = end;
          continue;
        }
      }
    }
    out.push_back(s[i++]);
  }
  return out;
}

// Category links vanish (memberships are collected separately from the
// raw input), media links vanish entirely, internal links keep their
// label (or target). Nested links inside labels are handled
// recursively.
inline std::string process_links(std::string_view s,
                                 const MarkupLangConfig& cfg, int depth) {
  if (depth > 24) return std::string(s);
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (!(s[i] == '[' && i + 1 < s.size() && s[i + 1] == '[')) {
      out.push_back(s[i++]);
      continue;
    }
    size_t j = i + 2;
    int d = 1;
    size_t content_end = std::string_view::npos;
    while (j < s.size()) {
      if (s[j] == '[' && j + 1 < s.size() && s[j + 1] == '[') {
        ++d;
        j += 2;
      } else if (s[j] == ']' && j + 1 < s.size() && s[j + 1] == ']') {
        if (--d == 0) {
          content_end = j;
          break;
        }
        j += 2;
      } else {
        ++j;
      }
    }
    const bool closed = content_end != std::string_view::npos;
    const std::string_view inner =
        closed ? s.substr(i + 2, content_end - (i + 2)) : s.substr(i + 2);

    size_t pipe = std::string_view::npos;
    int d2 = 0;
    for (size_t k = 0; k < inner.size(); ++k) {
      if (inner[k] == '[' && k + 1 < inner.size() && inner[k + 1] == '[') {
        ++d2;
        ++k;
      } else if (inner[k] == ']' && k + 1 < inner.size() && inner[k + 1] == ']') {
        --d2;
        ++k;
      } else if (inner[k] == '|' && d2 == 0) {
        pipe = k;
        break;
      }
    }
    std::string_view target =
        trim(pipe == std::string_view::npos ? inner : inner.substr(0, pipe));
    const std::string_view label =
        pipe == std::string_view::npos ? std::string_view{} : inner.substr(pipe + 1);

    bool drop = false;
    const size_t colon = target.find(':');
    if (colon != std::string_view::npos && colon > 0) {
      const std::string_view prefix = trim(target.substr(0, colon));
      if (matches_alias(prefix, cfg.category_aliases) ||
          matches_alias(prefix, cfg.file_aliases)) {
        drop = true;
      }
    }
    if (!drop) {
      if (!target.empty() && target.front() == ':') target.remove_prefix(1);
      if (pipe != std::string_view::npos && !trim(label).empty()) {
        out += process_links(label, cfg, depth + 1);
      } else {
        out.append(target.begin(), target.end());
      }
    }
    i = closed ? content_end + 2 : s.size();
  }
  return out;
}

inline bool has_url_scheme(std::string_view s) {
  static constexpr std::string_view schemes[] = {
      "http://", "https://", "ftp://", "ftps://", "irc://",
      "news:",   "mailto:",  "//"};
  for (const auto scheme : schemes) {
    if (s.size() >= scheme.size() &&
        ascii_ci_equal(s.substr(0, scheme.size()), scheme)) {
      return true;
    }
  }
  return false;
}

inline std::string strip_external_links(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '[' && i + 1 < s.size() && has_url_scheme(s.substr(i + 1))) {
      size_t j = i + 1;
      while (j < s.size() && s[j] != ']' && s[j] != '\n') ++j;
      if (j < s.size() && s[j] == ']') {
        const std::string_view inner = s.substr(i + 1, j - i - 1);
        const size_t sp = inner.find(' ');
        if (sp != std::string_view::npos) {
          const auto label = trim(inner.substr(sp + 1));
          out.append(label.begin(), label.end());
        }
        i = j + 1;
        continue;
      }
      // no closer on this line: leave the bracket as literal text
    }
    out.push_back(s[i++]);
  }
  return out;
}

template <typename LineFn>
inline std::string map_lines(std::string_view s, LineFn&& fn) {
  std::string out;
  out.reserve(s.size());
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '\n') {
      fn(s.substr(start, i - start), out);
      if (i < s.size()) out.push_back('\n');
      start = i + 1;
    }
  }
  return out;
}

inline std::string strip_headings(std::string_view s) {
  return map_lines(s, [](std::string_view line, std::string& out) {
    if (line.empty() || line.front() != '=') {
      out.append(line.begin(), line.end());
      return;
    }
    size_t b = 0;
    while (b < line.size() && line[b] == '=') ++b;
    size_t e = line.size();
    while (e > b && is_space_ch(line[e - 1])) --e;
    while (e > b && line[e - 1] == '=') --e;
    const auto text = trim(line.substr(b, e - b));
    out.append(text.begin(), text.end());
  });
}

inline std::string strip_list_markers(std::string_view s) {
  return map_lines(s, [](std::string_view line, std::string& out) {
    size_t b = 0;
    while (b < line.size() && (line[b] == '*' || line[b] == '#' ||
                               line[b] == ':' || line[b] == ';')) {
      ++b;
    }
    if (b > 0) {
      while (b < line.size() && (line[b] == ' ' || line[b] == '\t')) ++b;
    }
    const auto rest = line.substr(b);
    out.append(rest.begin(), rest.end());
  });
}

inline std::string remove_quote_runs(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '\'') {
      size_t run = 1;
      while (i + run < s.size() && s[i + run] == '\'') ++run;
      if (run == 1) out.push_back('\'');
      i += run;
    } else {
      out.push_back(s[i++]);
    }
  }
  return out;
}

// Deletes any forbidden residue a pass combination may have exposed.
inline std::string sweep_residue(std::string s) {
  static constexpr std::string_view forbidden[] = {"[[", "]]", "{{", "}}",
                                                   "{|", "|}", "<ref"};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto f : forbidden) {
      size_t pos;
      while ((pos = s.find(f)) != std::string::npos) {
        s.erase(pos, f.size());
        changed = true;
      }
    }
  }
  return s;
}

inline std::string strip_pass(std::string_view s, const MarkupLangConfig& cfg) {
  std::string t = remove_comments(s);
  t = remove_nested(t, "{{", "}}");
  t = remove_nested(t, "{|", "|}");
  t = remove_refs(t);
  t = strip_tags(t);
  t = process_links(t, cfg, 0);
  t = strip_external_links(t);
  t = strip_headings(t);
  t = remove_quote_runs(t);
  t = strip_list_markers(t);
  t = detail::decode_entities(t);
  t = sweep_residue(std::move(t));
  return detail::normalize_whitespace(t);
}

}  // namespace wt_detail

// Every closed [[<alias>:Name]] occurrence in the raw markup, namespace
// prefix stripped, first letter upper-cased, sort keys dropped,
// duplicates removed keeping first occurrence.
inline std::vector<std::string> extract_categories(std::string_view wikitext,
                                                   const MarkupLangConfig& cfg) {
  std::vector<std::string> cats;
  std::unordered_set<std::string> seen;
  size_t i = 0;
  while ((i = wikitext.find("[[", i)) != std::string_view::npos) {
    const size_t close = wikitext.find("]]", i + 2);
    if (close == std::string_view::npos) break;
    const std::string_view inner = wikitext.substr(i + 2, close - (i + 2));
    const size_t colon = inner.find(':');
    if (colon == std::string_view::npos || colon == 0 ||
        inner.find("[[") != std::string_view::npos) {
      i += 2;
      continue;
    }
    const std::string_view prefix = detail::trim(inner.substr(0, colon));
    if (!wt_detail::matches_alias(prefix, cfg.category_aliases)) {
      i += 2;
      continue;
    }
    std::string_view name = inner.substr(colon + 1);
    const size_t pipe = name.find('|');
    if (pipe != std::string_view::npos) name = name.substr(0, pipe);
    name = detail::trim(name);
    if (!name.empty()) {
      std::string canon = detail::uppercase_first(name);
      if (seen.insert(canon).second) cats.push_back(std::move(canon));
    }
    i = close + 2;
  }
  return cats;
}

// Converts wiki markup to plain text and reports category memberships.
// Unbalanced markup never fails: open constructs close at end of input,
// and leftover bracket residue is swept out. The pass chain is applied
// until it reaches a fixed point, so the result is idempotent.
inline StripResult strip_markup(std::string_view wikitext,
                                const MarkupLangConfig& cfg) {
  StripResult result;
  result.categories = extract_categories(wikitext, cfg);
  std::string text = wt_detail::strip_pass(wikitext, cfg);
  for (int iter = 0; iter < 8; ++iter) {
    std::string again = wt_detail::strip_pass(text, cfg);
    if (again == text) break;
    text = std::move(again);
  }
  result.plain = std::move(text);
  return result;
}

// A redirect page opens (after whitespace) with a redirect keyword and
// points at the first link target that follows. Pages matching the
// keyword but naming no target are not treated as redirects.
inline std::optional<std::string> detect_redirect(std::string_view wikitext,
                                                  const MarkupLangConfig& cfg) {
  const std::string_view body = detail::trim(wikitext);
  for (const auto& keyword : cfg.redirect_aliases) {
    if (body.size() < keyword.size()) continue;
    if (detail::to_lower(body.substr(0, keyword.size())) !=
        detail::to_lower(keyword)) {
      continue;
    }
    const size_t open = body.find("[[", keyword.size());
    if (open == std::string_view::npos) continue;
    const size_t close = body.find("]]", open + 2);
    if (close == std::string_view::npos) continue;
    std::string_view target = body.substr(open + 2, close - (open + 2));
    const size_t pipe = target.find('|');
    if (pipe != std::string_view::npos) target = target.substr(0, pipe);
    target = detail::trim(target);
    if (!target.empty()) return std::string(target);
  }
  return std::nullopt;
}

}  // namespace wikidex

#endif  // WIKIDEX_WIKITEXT_HPP
