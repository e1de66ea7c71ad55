#ifndef WIKIDEX_DETAIL_TEXT_HPP
#define WIKIDEX_DETAIL_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wikidex/detail/utf8.hpp"

namespace wikidex::detail {

inline bool is_space_ch(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && is_space_ch(s[b])) ++b;
  while (e > b && is_space_ch(s[e - 1])) --e;
  return s.substr(b, e - b);
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

// Lines of an in-memory text: '\n' separated, '\r' stripped, the
// final newline produces no empty trailing line.
inline std::vector<std::string_view> split_lines(std::string_view s) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '\n') {
      if (i == s.size() && i == start) break;
      std::string_view line = s.substr(start, i - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines.push_back(line);
      start = i + 1;
    }
  }
  return lines;
}

inline bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    const char a = s[i], b = prefix[i];
    const char la = (a >= 'A' && a <= 'Z') ? static_cast<char>(a + 32) : a;
    const char lb = (b >= 'A' && b <= 'Z') ? static_cast<char>(b + 32) : b;
    if (la != lb) return false;
  }
  return true;
}

// Decodes the named entities for & < > " ' plus numeric entities.
// Anything unrecognized is kept verbatim.
inline std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out.push_back(s[i++]);
      continue;
    }
    const size_t semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 12) {
      out.push_back(s[i++]);
      continue;
    }
    const std::string_view body = s.substr(i + 1, semi - i - 1);
    if (body == "amp") {
      out.push_back('&');
    } else if (body == "lt") {
      out.push_back('<');
    } else if (body == "gt") {
      out.push_back('>');
    } else if (body == "quot") {
      out.push_back('"');
    } else if (body == "apos") {
      out.push_back('\'');
    } else if (body == "nbsp") {
      out.push_back(' ');
    } else if (body.size() >= 2 && body[0] == '#') {
      uint32_t cp = 0;
      bool ok = body.size() >= 2;
      if (body[1] == 'x' || body[1] == 'X') {
        ok = body.size() > 2;
        for (size_t k = 2; ok && k < body.size(); ++k) {
          const char c = body[k];
          uint32_t d;
          if (c >= '0' && c <= '9') d = c - '0';
          else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
          else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
          else { ok = false; break; }
          cp = cp * 16 + d;
          if (cp > 0x10FFFF) { ok = false; break; }
        }
      } else {
        for (size_t k = 1; ok && k < body.size(); ++k) {
          const char c = body[k];
          if (c < '0' || c > '9') { ok = false; break; }
          cp = cp * 10 + static_cast<uint32_t>(c - '0');
          if (cp > 0x10FFFF) { ok = false; break; }
        }
      }
      if (!ok || cp == 0) {
        out.push_back(s[i++]);
        continue;
      }
      append_utf8(out, cp);
    } else {
      out.push_back(s[i++]);
      continue;
    }
    i = semi + 1;
  }
  return out;
}

// Removes <...> tags, keeping the enclosed content, and decodes
// entities.  Used for HTML fragments in feed descriptions.
inline std::string strip_html_tags(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '<' && i + 1 < s.size() &&
        (s[i + 1] == '/' || s[i + 1] == '!' ||
         (s[i + 1] >= 'a' && s[i + 1] <= 'z') ||
         (s[i + 1] >= 'A' && s[i + 1] <= 'Z'))) {
      const size_t close = s.find('>', i + 1);
      if (close != std::string_view::npos) {
        i = close + 1;
        continue;
      }
    }
    out.push_back(s[i++]);
  }
  return decode_entities(out);
}

// Collapses runs of spaces/tabs to one space, trims line ends, and
// collapses runs of blank lines.  Canonical whitespace for plain text
// output and golden comparisons.
inline std::string normalize_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::string line;
  size_t blank_run = 0;
  bool any_line = false;
  auto flush_line = [&] {
    // trim trailing spaces introduced by the collapse
    while (!line.empty() && line.back() == ' ') line.pop_back();
    if (line.empty()) {
      ++blank_run;
    } else {
      if (any_line) {
        out.push_back('\n');
        if (blank_run > 0) out.push_back('\n');
      }
      out += line;
      any_line = true;
      blank_run = 0;
    }
    line.clear();
  };
  bool in_space = true;  // swallow leading spaces
  for (size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '\n') {
      flush_line();
      in_space = true;
    } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      if (!in_space) line.push_back(' ');
      in_space = true;
    } else {
      line.push_back(c);
      in_space = false;
    }
  }
  flush_line();
  return out;
}

}  // namespace wikidex::detail

#endif  // WIKIDEX_DETAIL_TEXT_HPP
