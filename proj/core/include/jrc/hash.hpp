#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>

namespace jrc {

/// Incremental FNV-1a 64-bit hash.
class Fnv1a {
 public:
  void bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t k = 0; k < n; ++k) {
      h_ ^= p[k];
      h_ *= 0x100000001b3ULL;
    }
  }
  void text(std::string_view s) { bytes(s.data(), s.size()); }
  void value(double v) {
    if (v == 0.0) v = 0.0;  // fold -0 into +0
    std::uint64_t u;
    std::memcpy(&u, &v, sizeof u);
    bytes(&u, sizeof u);
  }
  void value(std::uint64_t v) { bytes(&v, sizeof v); }
  void values(std::span<const double> vs) {
    value(static_cast<std::uint64_t>(vs.size()));
    for (double v : vs) value(v);
  }
  std::uint64_t digest() const { return h_; }

 private:
  std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

}  // namespace jrc
