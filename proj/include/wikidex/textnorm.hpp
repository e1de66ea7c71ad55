#ifndef WIKIDEX_TEXTNORM_HPP
#define WIKIDEX_TEXTNORM_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "wikidex/detail/stopwords_data.hpp"
#include "wikidex/detail/text.hpp"
#include "wikidex/detail/tsv.hpp"
#include "wikidex/detail/utf8.hpp"

namespace wikidex {

// Optional light stemmer: plain rules file, one `suffix<TAB>replacement`
// per line (replacement may be omitted), `#` comments. The longest
// matching suffix is rewritten, at most once, and never consumes the
// whole token.
class SuffixStemmer {
 public:
  SuffixStemmer() = default;

  static SuffixStemmer from_text(std::string_view text) {
    SuffixStemmer st;
    for (auto line : detail::split_lines(text)) {
      const auto t = detail::trim(line);
      if (t.empty() || t.front() == '#') continue;
      const size_t tab = t.find('\t');
      std::string suffix(detail::trim(tab == std::string_view::npos ? t : t.substr(0, tab)));
      std::string repl(tab == std::string_view::npos
                           ? std::string_view{}
                           : detail::trim(t.substr(tab + 1)));
      if (!suffix.empty()) st.rules_.push_back({std::move(suffix), std::move(repl)});
    }
    std::stable_sort(st.rules_.begin(), st.rules_.end(),
                     [](const Rule& a, const Rule& b) {
                       if (a.suffix.size() != b.suffix.size())
                         return a.suffix.size() > b.suffix.size();
                       return a.suffix < b.suffix;
                     });
    return st;
  }

  static SuffixStemmer from_file(const std::string& path) {
    return from_text(detail::read_file(path));
  }

  bool empty() const { return rules_.empty(); }

  std::string apply(std::string lemma) const {
    for (const auto& rule : rules_) {
      if (lemma.size() > rule.suffix.size() &&
          lemma.compare(lemma.size() - rule.suffix.size(), std::string::npos,
                        rule.suffix) == 0) {
        lemma.erase(lemma.size() - rule.suffix.size());
        lemma += rule.replacement;
        break;
      }
    }
    return lemma;
  }

 private:
  struct Rule {
    std::string suffix;
    std::string replacement;
  };
  std::vector<Rule> rules_;
};

struct NormalizerConfig {
  bool lowercase = true;
  uint32_t min_token_len = 2;
  std::unordered_set<std::string> stopwords;  // stored already normalized
  SuffixStemmer stemmer;                      // empty = no stemming
};

// Lemma counts for one text; total_tokens counts the retained lemmas.
struct TermFreqs {
  std::map<std::string, uint64_t> counts;
  uint64_t total_tokens = 0;
};

// Maximal runs of letters (any script); a single '-' or '\'' is kept
// when flanked by letters. Digits and punctuation separate tokens.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  const auto flush = [&] {
    if (!cur.empty()) {
      out.push_back(cur);
      cur.clear();
    }
  };
  size_t i = 0;
  while (i < text.size()) {
    const size_t start = i;
    const char32_t cp = detail::decode_utf8(text, i);
    if (detail::is_letter(cp)) {
      cur.append(text.substr(start, i - start));
      continue;
    }
    if ((cp == U'-' || cp == U'\'') && !cur.empty() && cur.back() != '-' &&
        cur.back() != '\'') {
      size_t peek = i;
      if (peek < text.size() && detail::is_letter(detail::decode_utf8(text, peek))) {
        cur.push_back(static_cast<char>(cp));
        continue;
      }
    }
    flush();
  }
  flush();
  return out;
}

// Case fold + stem, without the drop rules. Also used to normalize
// stopword entries at load so the set matches emitted lemmas.
inline std::string fold_lemma(std::string_view token, const NormalizerConfig& cfg) {
  std::string s = cfg.lowercase ? detail::to_lower(token) : std::string(token);
  if (!cfg.stemmer.empty()) s = cfg.stemmer.apply(std::move(s));
  return s;
}

inline std::optional<std::string> normalize(std::string_view token,
                                            const NormalizerConfig& cfg) {
  std::string s = fold_lemma(token, cfg);
  if (detail::utf8_length(s) < cfg.min_token_len) return std::nullopt;
  if (cfg.stopwords.count(s) != 0) return std::nullopt;
  return s;
}

// Stopword source: one lemma per line, UTF-8, `#` comments. Entries
// pass through fold_lemma, so load the stemmer before the stopwords.
inline void load_stopwords(NormalizerConfig& cfg, std::string_view text) {
  cfg.stopwords.clear();
  for (auto line : detail::split_lines(text)) {
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::string lemma = fold_lemma(t, cfg);
    if (!lemma.empty()) cfg.stopwords.insert(std::move(lemma));
  }
}

inline void load_stopwords_file(NormalizerConfig& cfg, const std::string& path) {
  load_stopwords(cfg, detail::read_file(path));
}

// Default pipeline for a language: built-in stopwords, no stemmer.
inline NormalizerConfig make_normalizer(std::string_view lang) {
  NormalizerConfig cfg;
  load_stopwords(cfg, detail::builtin_stopwords(lang));
  return cfg;
}

inline TermFreqs term_frequencies(std::string_view text,
                                  const NormalizerConfig& cfg) {
  TermFreqs tf;
  for (const auto& token : tokenize(text)) {
    if (auto lemma = normalize(token, cfg)) {
      ++tf.counts[*lemma];
      ++tf.total_tokens;
    }
  }
  return tf;
}

}  // namespace wikidex

#endif  // WIKIDEX_TEXTNORM_HPP
