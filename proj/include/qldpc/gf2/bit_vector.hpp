#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qldpc::gf2 {

// Largest supported length of a vector or matrix axis.
inline constexpr std::size_t kMaxAxis = std::size_t{1} << 20;

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

/// Fixed-length vector over GF(2), packed 64 bits per word. Bits past size()
/// in the last word are always zero.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t size);

  static BitVector from_support(std::size_t size, std::span<const std::size_t> support);
  /// Parses a string of '0'/'1' characters, bit 0 first.
  static BitVector from_bits(std::string_view bits);
  /// Parses the hex encoding produced by to_hex(). `size` must fit the digits.
  static BitVector from_hex(std::string_view hex, std::size_t size);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }

  bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  bool operator[](std::size_t i) const noexcept { return get(i); }
  void set(std::size_t i, bool value = true) noexcept {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  void clear() noexcept;

  std::size_t weight() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::vector<std::size_t> support() const;

  /// Inner product over GF(2).
  bool dot(const BitVector& other) const;

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
  friend bool operator==(const BitVector&, const BitVector&) = default;

  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  /// '0'/'1' characters, bit 0 first.
  std::string to_bits() const;
  /// Bits read in order as a binary string, padded with zeros to a multiple
  /// of four, bit 0 is the most significant bit of the first digit.
  std::string to_hex() const;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitVectorHash {
  std::size_t operator()(const BitVector& v) const noexcept;
};

}  // namespace qldpc::gf2
