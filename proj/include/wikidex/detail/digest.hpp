#ifndef WIKIDEX_DETAIL_DIGEST_HPP
#define WIKIDEX_DETAIL_DIGEST_HPP

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "wikidex/errors.hpp"

namespace wikidex::detail {

// FNV-1a 64-bit. Content fingerprint for change detection and file
// integrity rows, not a cryptographic hash.
class Fnv1a64 {
 public:
  void update(std::string_view data) {
    for (const char c : data) {
      state_ ^= static_cast<unsigned char>(c);
      state_ *= 0x100000001b3ULL;
    }
  }

  std::string hex() const {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    uint64_t v = state_;
    for (int i = 15; i >= 0; --i) {
      out[static_cast<size_t>(i)] = digits[v & 0xF];
      v >>= 4;
    }
    return out;
  }

 private:
  uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::string digest_string(std::string_view data) {
  Fnv1a64 h;
  h.update(data);
  return h.hex();
}

inline std::string digest_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file for digest: " + path.string());
  Fnv1a64 h;
  char buf[1 << 16];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    h.update(std::string_view(buf, static_cast<size_t>(in.gcount())));
    if (!in) break;
  }
  return h.hex();
}

}  // namespace wikidex::detail

#endif  // WIKIDEX_DETAIL_DIGEST_HPP
