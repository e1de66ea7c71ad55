#ifndef WIKIDEX_DETAIL_XML_HPP
#define WIKIDEX_DETAIL_XML_HPP

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>

#include "wikidex/detail/text.hpp"

namespace wikidex::detail {

// Incremental tokenizer for the XML subset used by MediaWiki exports.
// The buffer holds one pending construct at a time, so peak memory
// follows the largest element (a page text), not the document size.
class XmlTokenizer {
 public:
  enum class Kind { StartTag, EndTag, Text, Eof };

  struct Event {
    Kind kind = Kind::Eof;
    std::string name;       // tag events
    std::string text;       // text events (entity-decoded); raw
                            // attribute region for start tags
    bool self_closing = false;
  };

  // Value of a name="..." / name='...' attribute in a raw attribute
  // region, entity-decoded; empty when absent.
  static std::string attr(std::string_view raw, std::string_view name) {
    size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && is_space_ch(raw[i])) ++i;
      const size_t key_start = i;
      while (i < raw.size() && raw[i] != '=' && !is_space_ch(raw[i])) ++i;
      const std::string_view key = raw.substr(key_start, i - key_start);
      while (i < raw.size() && is_space_ch(raw[i])) ++i;
      if (i >= raw.size() || raw[i] != '=') continue;
      ++i;
      while (i < raw.size() && is_space_ch(raw[i])) ++i;
      if (i >= raw.size() || (raw[i] != '"' && raw[i] != '\'')) continue;
      const char quote = raw[i++];
      const size_t val_start = i;
      while (i < raw.size() && raw[i] != quote) ++i;
      if (key == name) {
        return decode_entities(raw.substr(val_start, i - val_start));
      }
      if (i < raw.size()) ++i;  // closing quote
    }
    return {};
  }

  explicit XmlTokenizer(std::istream& in) : in_(in) {}

  size_t peak_buffer_bytes() const { return peak_; }

  Event next() {
    for (;;) {
      compact();
      if (!ensure(1)) return {};
      if (buf_[pos_] != '<') return text_event();

      if (match("<!--")) {
        if (!skip_until("-->")) return {};  // unterminated comment
        continue;
      }
      if (match("<![CDATA[")) return cdata_event();
      if (match("<?")) {
        if (!skip_until("?>")) return {};
        continue;
      }
      if (match("<!")) {
        if (!skip_until(">")) return {};
        continue;
      }
      return tag_event();
    }
  }

 private:
  static constexpr size_t kChunk = 64 * 1024;

  bool refill() {
    if (eof_) return false;
    const size_t old = buf_.size();
    buf_.resize(old + kChunk);
    in_.read(buf_.data() + old, kChunk);
    const auto got = static_cast<size_t>(in_.gcount());
    buf_.resize(old + got);
    if (buf_.size() > peak_) peak_ = buf_.size();
    if (got == 0) eof_ = true;
    return got > 0;
  }

  bool ensure(size_t n) {
    while (buf_.size() - pos_ < n) {
      if (!refill()) return buf_.size() - pos_ >= n;
    }
    return true;
  }

  void compact() {
    if (pos_ >= kChunk) {
      buf_.erase(0, pos_);
      pos_ = 0;
    }
  }

  // True when the upcoming bytes equal token; consumes them.
  bool match(std::string_view token) {
    if (!ensure(token.size())) return false;
    if (std::string_view(buf_).substr(pos_, token.size()) != token) return false;
    pos_ += token.size();
    return true;
  }

  // Finds token at or after pos_, refilling as needed. npos when the
  // input ends first.
  size_t find(std::string_view token, size_t from) {
    for (;;) {
      const size_t hit = buf_.find(token.data(), from, token.size());
      if (hit != std::string::npos) return hit;
      const size_t retry =
          buf_.size() > token.size() ? buf_.size() - token.size() + 1 : from;
      if (!refill()) return std::string::npos;
      from = retry;
    }
  }

  bool skip_until(std::string_view closer) {
    const size_t hit = find(closer, pos_);
    if (hit == std::string::npos) {
      pos_ = buf_.size();
      return false;
    }
    pos_ = hit + closer.size();
    return true;
  }

  Event text_event() {
    const size_t hit = find("<", pos_);
    const size_t end = hit == std::string::npos ? buf_.size() : hit;
    Event ev;
    ev.kind = Kind::Text;
    ev.text = decode_entities(std::string_view(buf_).substr(pos_, end - pos_));
    pos_ = end;
    return ev;
  }

  Event cdata_event() {
    const size_t hit = find("]]>", pos_);
    const size_t end = hit == std::string::npos ? buf_.size() : hit;
    Event ev;
    ev.kind = Kind::Text;
    ev.text.assign(buf_, pos_, end - pos_);
    pos_ = hit == std::string::npos ? buf_.size() : hit + 3;
    return ev;
  }

  Event tag_event() {
    // pos_ is at '<'; locate '>' outside quoted attribute values.
    size_t i = pos_ + 1;
    char quote = 0;
    for (;;) {
      if (i >= buf_.size() && !refill()) {
        pos_ = buf_.size();  // dangling '<...' at end of input
        return {};
      }
      const char c = buf_[i];
      if (quote != 0) {
        if (c == quote) quote = 0;
      } else if (c == '"' || c == '\'') {
        quote = c;
      } else if (c == '>') {
        break;
      }
      ++i;
    }
    std::string_view inner(buf_.data() + pos_ + 1, i - pos_ - 1);
    Event ev;
    if (!inner.empty() && inner.front() == '/') {
      ev.kind = Kind::EndTag;
      inner.remove_prefix(1);
    } else {
      ev.kind = Kind::StartTag;
      if (!inner.empty() && inner.back() == '/') {
        ev.self_closing = true;
        inner.remove_suffix(1);
      }
    }
    size_t e = 0;
    while (e < inner.size() && !is_space_ch(inner[e])) ++e;
    ev.name.assign(inner.substr(0, e));
    if (ev.kind == Kind::StartTag) ev.text.assign(inner.substr(e));
    pos_ = i + 1;
    return ev;
  }

  std::istream& in_;
  std::string buf_;
  size_t pos_ = 0;
  size_t peak_ = 0;
  bool eof_ = false;
};

}  // namespace wikidex::detail

#endif  // WIKIDEX_DETAIL_XML_HPP
