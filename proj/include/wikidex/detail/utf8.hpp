#ifndef WIKIDEX_DETAIL_UTF8_HPP
#define WIKIDEX_DETAIL_UTF8_HPP

#include <cstdint>
#include <string>
#include <string_view>

namespace wikidex::detail {

// Decodes the code point starting at s[i]; advances i past it.
// Invalid bytes are consumed one at a time and returned as-is, so a
// scan always makes progress on arbitrary byte soup.
inline char32_t decode_utf8(std::string_view s, size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return b0;
  }
  if (i + len > s.size()) {
    ++i;
    return b0;
  }
  for (size_t k = 1; k < len; ++k) {
    const auto bk = static_cast<unsigned char>(s[i + k]);
    if ((bk & 0xC0) != 0x80) {
      ++i;
      return b0;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

inline void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Letter test over the scripts this toolkit is expected to meet in
// wiki corpora. Unlisted ranges are treated as non-letters.
inline bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
  if (cp >= 0x00C0 && cp <= 0x024F) return cp != 0x00D7 && cp != 0x00F7;
  if (cp >= 0x0250 && cp <= 0x02AF) return true;   // IPA
  if (cp >= 0x0386 && cp <= 0x03FF) return cp != 0x0387;  // Greek
  if (cp >= 0x0400 && cp <= 0x052F) return true;   // Cyrillic
  if (cp >= 0x0531 && cp <= 0x058F) return cp <= 0x0556 || cp >= 0x0561;
  if (cp >= 0x05D0 && cp <= 0x05EA) return true;   // Hebrew
  if (cp >= 0x0620 && cp <= 0x064A) return true;   // Arabic
  if (cp >= 0x0905 && cp <= 0x0939) return true;   // Devanagari
  if (cp >= 0x3040 && cp <= 0x30FF) return cp != 0x3097 && cp != 0x3098;
  if (cp >= 0x4E00 && cp <= 0x9FFF) return true;   // CJK
  if (cp >= 0xAC00 && cp <= 0xD7AF) return true;   // Hangul
  return false;
}

inline char32_t to_lower_cp(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  if (cp >= 0x0100 && cp <= 0x0177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x0391 && cp <= 0x03A9 && cp != 0x03A2) return cp + 0x20;
  if (cp >= 0x0410 && cp <= 0x042F) return cp + 0x20;   // А..Я
  if (cp >= 0x0400 && cp <= 0x040F) return cp + 0x50;   // Ѐ..Џ
  return cp;
}

inline char32_t to_upper_cp(char32_t cp) {
  if (cp >= 'a' && cp <= 'z') return cp - 0x20;
  if (cp >= 0x00E0 && cp <= 0x00FE && cp != 0x00F7) return cp - 0x20;
  if (cp >= 0x0101 && cp <= 0x0178) return (cp % 2 == 1) ? cp - 1 : cp;
  if (cp >= 0x03B1 && cp <= 0x03C9 && cp != 0x03C2) return cp - 0x20;
  if (cp >= 0x0430 && cp <= 0x044F) return cp - 0x20;   // а..я
  if (cp >= 0x0450 && cp <= 0x045F) return cp - 0x50;   // ѐ..џ
  return cp;
}

inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) append_utf8(out, to_lower_cp(decode_utf8(s, i)));
  return out;
}

inline size_t utf8_length(std::string_view s) {
  size_t i = 0, n = 0;
  while (i < s.size()) {
    decode_utf8(s, i);
    ++n;
  }
  return n;
}

// MediaWiki title semantics: only the first character is case-folded.
inline std::string uppercase_first(std::string_view s) {
  if (s.empty()) return {};
  size_t i = 0;
  const char32_t first = decode_utf8(s, i);
  std::string out;
  out.reserve(s.size());
  append_utf8(out, to_upper_cp(first));
  out.append(s.substr(i));
  return out;
}

}  // namespace wikidex::detail

#endif  // WIKIDEX_DETAIL_UTF8_HPP
