#include "qldpc/gf2/binary_polynomial.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <optional>

#include "qldpc/error.hpp"

namespace qldpc::gf2 {

namespace {

// Ordinary GF(2)[x] polynomial, dense, used only by the Euclidean algorithm.
class DensePoly {
 public:
  DensePoly() = default;
  explicit DensePoly(const BinaryPolynomial& a) {
    for (std::size_t e : a.exponents()) set(e);
  }

  static DensePoly modulus(std::size_t n) {
    DensePoly p;
    p.set(0);
    p.flip(n);
    return p;
  }

  void set(std::size_t i) { grow(i); words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void flip(std::size_t i) { grow(i); words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  bool get(std::size_t i) const {
    return (i >> 6) < words_.size() && ((words_[i >> 6] >> (i & 63)) & 1U);
  }

  long degree() const {
    for (std::size_t w = words_.size(); w-- > 0;) {
      if (words_[w]) return static_cast<long>(w * 64 + 63 - std::countl_zero(words_[w]));
    }
    return -1;
  }
  bool is_zero() const { return degree() < 0; }

  // this ^= other * x^shift
  void xor_shifted(const DensePoly& other, std::size_t shift) {
    const long od = other.degree();
    if (od < 0) return;
    grow(static_cast<std::size_t>(od) + shift);
    const std::size_t word_shift = shift >> 6;
    const unsigned bit_shift = shift & 63;
    for (std::size_t w = 0; w < other.words_.size(); ++w) {
      const std::uint64_t v = other.words_[w];
      if (!v) continue;
      words_[w + word_shift] ^= v << bit_shift;
      if (bit_shift && w + word_shift + 1 < words_.size()) {
        words_[w + word_shift + 1] ^= v >> (64 - bit_shift);
      }
    }
  }

  DensePoly rem(const DensePoly& divisor) const {
    const long dd = divisor.degree();
    DensePoly r = *this;
    for (long d = r.degree(); d >= dd; d = r.degree()) {
      r.xor_shifted(divisor, static_cast<std::size_t>(d - dd));
    }
    return r;
  }

  std::vector<std::size_t> exponents() const {
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

 private:
  void grow(std::size_t bit) {
    if ((bit >> 6) >= words_.size()) words_.resize((bit >> 6) + 1, 0);
  }

  std::vector<std::uint64_t> words_;
};

DensePoly dense_gcd(DensePoly a, DensePoly b) {
  while (!b.is_zero()) {
    DensePoly r = a.rem(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

void require_same_modulus(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  if (a.modulus() != b.modulus()) {
    fail(Errc::modulus_mismatch, "polynomials live in different rings (n=" +
                                     std::to_string(a.modulus()) + " vs n=" +
                                     std::to_string(b.modulus()) + ")");
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n')) s.remove_suffix(1);
  return s;
}

std::size_t parse_count(std::string_view s) {
  s = trim(s);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
    fail(Errc::parse_error, "expected a non-negative integer, got '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

BinaryPolynomial::BinaryPolynomial(std::size_t n, std::vector<std::size_t> exponents)
    : n_(n), exps_(std::move(exponents)) {
  if (n_ == 0) fail(Errc::invalid_argument, "polynomial modulus n must be at least 1");
  if (n_ > kMaxAxis) fail(Errc::size_limit, "polynomial modulus exceeds 2^20");
  std::sort(exps_.begin(), exps_.end());
  if (std::adjacent_find(exps_.begin(), exps_.end()) != exps_.end()) {
    fail(Errc::invalid_argument, "duplicate exponent in polynomial");
  }
  if (!exps_.empty() && exps_.back() >= n_) {
    fail(Errc::invalid_argument, "exponent " + std::to_string(exps_.back()) +
                                     " is not below n=" + std::to_string(n_));
  }
}

BinaryPolynomial BinaryPolynomial::from_exponents_mod(std::size_t n,
                                                      std::span<const std::size_t> exponents) {
  std::vector<std::size_t> reduced;
  reduced.reserve(exponents.size());
  for (std::size_t e : exponents) reduced.push_back(e % n);
  std::sort(reduced.begin(), reduced.end());
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < reduced.size();) {
    std::size_t j = i;
    while (j < reduced.size() && reduced[j] == reduced[i]) ++j;
    if ((j - i) % 2 == 1) kept.push_back(reduced[i]);
    i = j;
  }
  return BinaryPolynomial(n, std::move(kept));
}

BitVector BinaryPolynomial::coefficients() const {
  return BitVector::from_support(n_, exps_);
}

std::string BinaryPolynomial::to_string() const {
  if (exps_.empty()) return "0";
  std::string s;
  for (std::size_t e : exps_) {
    if (!s.empty()) s += "+";
    if (e == 0) {
      s += "1";
    } else if (e == 1) {
      s += "x";
    } else {
      s += "x^" + std::to_string(e);
    }
  }
  return s;
}

BinaryPolynomial poly_add(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  require_same_modulus(a, b);
  std::vector<std::size_t> out;
  std::set_symmetric_difference(a.exponents().begin(), a.exponents().end(),
                                b.exponents().begin(), b.exponents().end(),
                                std::back_inserter(out));
  return BinaryPolynomial(a.modulus(), std::move(out));
}

BinaryPolynomial poly_mul_mod(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  require_same_modulus(a, b);
  const std::size_t n = a.modulus();
  BitVector acc(n);
  for (std::size_t ea : a.exponents()) {
    for (std::size_t eb : b.exponents()) acc.flip((ea + eb) % n);
  }
  return BinaryPolynomial(n, acc.support());
}

BinaryPolynomial poly_pow2k(const BinaryPolynomial& a, std::size_t squarings) {
  // Squaring in characteristic 2 maps x^e to x^{2e}; colliding terms cancel.
  BinaryPolynomial out = a;
  std::vector<std::size_t> doubled;
  for (std::size_t s = 0; s < squarings; ++s) {
    doubled.clear();
    for (std::size_t e : out.exponents()) doubled.push_back(2 * e);
    out = BinaryPolynomial::from_exponents_mod(a.modulus(), doubled);
  }
  return out;
}

BinaryPolynomial poly_rem(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  require_same_modulus(a, b);
  if (b.is_zero()) fail(Errc::degenerate_input, "division by the zero polynomial");
  return BinaryPolynomial(a.modulus(), DensePoly(a).rem(DensePoly(b)).exponents());
}

BinaryPolynomial poly_gcd(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  require_same_modulus(a, b);
  if (a.is_zero() && b.is_zero()) fail(Errc::degenerate_input, "gcd of two zero polynomials");
  return BinaryPolynomial(a.modulus(), dense_gcd(DensePoly(a), DensePoly(b)).exponents());
}

BinaryPolynomial poly_gcd_with_modulus(const BinaryPolynomial& a) {
  if (a.is_zero()) fail(Errc::degenerate_input, "gcd(0, x^n - 1) is x^n - 1 itself");
  return BinaryPolynomial(a.modulus(),
                          dense_gcd(DensePoly::modulus(a.modulus()), DensePoly(a)).exponents());
}

std::size_t gcd_with_modulus_degree(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  require_same_modulus(a, b);
  if (a.is_zero() && b.is_zero()) return a.modulus();
  const BinaryPolynomial ab = a.is_zero() ? b : (b.is_zero() ? a : poly_gcd(a, b));
  return static_cast<std::size_t>(poly_gcd_with_modulus(ab).degree());
}

BinaryMatrix circulant(const BinaryPolynomial& a) {
  const std::size_t n = a.modulus();
  BinaryMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e : a.exponents()) m.set(i, (e + i) % n);
  }
  return m;
}

const BinaryPolynomial& PolynomialSet::at(const std::string& name) const {
  const auto it = polynomials.find(name);
  if (it == polynomials.end()) fail(Errc::parse_error, "polynomial '" + name + "' not defined");
  return it->second;
}

PolynomialSet parse_polynomial_set(std::string_view text) {
  std::map<std::string, std::vector<std::size_t>> raw;
  std::optional<std::size_t> n;
  while (!text.empty()) {
    const std::size_t semi = text.find(';');
    std::string_view item = trim(text.substr(0, semi));
    text = semi == std::string_view::npos ? std::string_view{} : text.substr(semi + 1);
    if (item.empty()) continue;
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) {
      fail(Errc::parse_error, "expected key=value in '" + std::string(item) + "'");
    }
    const std::string key(trim(item.substr(0, eq)));
    std::string_view value = trim(item.substr(eq + 1));
    if (key.empty()) fail(Errc::parse_error, "empty key in polynomial text");
    if (key == "n") {
      n = parse_count(value);
      continue;
    }
    if (raw.contains(key)) fail(Errc::parse_error, "polynomial '" + key + "' given twice");
    auto& exps = raw[key];
    while (!value.empty()) {
      const std::size_t comma = value.find(',');
      exps.push_back(parse_count(value.substr(0, comma)));
      value = comma == std::string_view::npos ? std::string_view{} : value.substr(comma + 1);
    }
  }
  if (!n) fail(Errc::parse_error, "polynomial text is missing 'n='");
  PolynomialSet set;
  set.n = *n;
  for (auto& [name, exps] : raw) set.polynomials.emplace(name, BinaryPolynomial(*n, std::move(exps)));
  return set;
}

std::string format_exponents(const BinaryPolynomial& a) {
  std::string s;
  for (std::size_t e : a.exponents()) {
    if (!s.empty()) s += ",";
    s += std::to_string(e);
  }
  return s;
}

std::string format_polynomial_set(const PolynomialSet& set) {
  std::string s = "n=" + std::to_string(set.n);
  for (const auto& [name, poly] : set.polynomials) s += "; " + name + "=" + format_exponents(poly);
  return s;
}

}  // namespace qldpc::gf2
