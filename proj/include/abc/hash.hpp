#pragma once

#include <cstdint>
#include <cstring>
#include <string_view>

namespace abc {

// 64-bit FNV-1a. Used for every state and term hash so that hashes are
// stable across runs and platforms (std::hash gives no such guarantee).
class Fnv1a {
 public:
  static constexpr std::uint64_t kOffset = 14695981039346656037ull;
  static constexpr std::uint64_t kPrime = 1099511628211ull;

  Fnv1a& bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      state_ ^= p[i];
      state_ *= kPrime;
    }
    return *this;
  }

  Fnv1a& u64(std::uint64_t v) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    return bytes(buf, 8);
  }

  Fnv1a& str(std::string_view s) {
    u64(s.size());
    return bytes(s.data(), s.size());
  }

  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = kOffset;
};

inline std::uint64_t hashString(std::string_view s) { return Fnv1a{}.str(s).value(); }

}  // namespace abc
