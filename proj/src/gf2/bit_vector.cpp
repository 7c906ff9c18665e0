#include "qldpc/gf2/bit_vector.hpp"

#include <algorithm>

#include "qldpc/error.hpp"

namespace qldpc::gf2 {

namespace {

void check_axis(std::size_t size) {
  if (size > kMaxAxis) {
    fail(Errc::size_limit, "bit vector length " + std::to_string(size) + " exceeds 2^20");
  }
}

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

BitVector::BitVector(std::size_t size) : size_(size) {
  check_axis(size);
  words_.assign(words_for(size), 0);
}

BitVector BitVector::from_support(std::size_t size, std::span<const std::size_t> support) {
  BitVector v(size);
  for (std::size_t i : support) {
    if (i >= size) {
      fail(Errc::dimension_mismatch, "support index " + std::to_string(i) + " out of range");
    }
    v.set(i);
  }
  return v;
}

BitVector BitVector::from_bits(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i);
    } else if (bits[i] != '0') {
      fail(Errc::parse_error, "bit string must contain only '0' and '1'");
    }
  }
  return v;
}

BitVector BitVector::from_hex(std::string_view hex, std::size_t size) {
  if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
  if (hex.size() != (size + 3) / 4) {
    fail(Errc::parse_error, "hex string of " + std::to_string(hex.size()) +
                                " digits does not encode " + std::to_string(size) + " bits");
  }
  BitVector v(size);
  for (std::size_t d = 0; d < hex.size(); ++d) {
    const int value = hex_value(hex[d]);
    if (value < 0) fail(Errc::parse_error, "invalid hex digit in '" + std::string(hex) + "'");
    for (int b = 0; b < 4; ++b) {
      if (!((value >> (3 - b)) & 1)) continue;
      const std::size_t i = d * 4 + static_cast<std::size_t>(b);
      if (i >= size) fail(Errc::parse_error, "hex padding bits must be zero");
      v.set(i);
    }
  }
  return v;
}

void BitVector::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

std::size_t BitVector::weight() const noexcept {
  std::size_t w = 0;
  for (std::uint64_t word : words_) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

bool BitVector::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::vector<std::size_t> BitVector::support() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

bool BitVector::dot(const BitVector& other) const {
  if (other.size_ != size_) fail(Errc::dimension_mismatch, "dot product of unequal lengths");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
  return std::popcount(acc) & 1;
}

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.size_ != size_) fail(Errc::dimension_mismatch, "xor of unequal lengths");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

std::string BitVector::to_bits() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

std::string BitVector::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s((size_ + 3) / 4, '0');
  for (std::size_t d = 0; d < s.size(); ++d) {
    int value = 0;
    for (std::size_t b = 0; b < 4; ++b) {
      const std::size_t i = d * 4 + b;
      value = (value << 1) | ((i < size_ && get(i)) ? 1 : 0);
    }
    s[d] = kDigits[value];
  }
  return s;
}

std::size_t BitVectorHash::operator()(const BitVector& v) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ v.size();
  for (std::uint64_t w : v.words()) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

}  // namespace qldpc::gf2
