#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qldpc/gf2/binary_matrix.hpp"

namespace qldpc::gf2 {

/// Element of GF(2)[x]/(x^n - 1), stored as the sorted set of exponents with
/// coefficient one.
class BinaryPolynomial {
 public:
  BinaryPolynomial() = default;
  /// Exponents must lie in [0, n) and be distinct; they need not be sorted.
  BinaryPolynomial(std::size_t n, std::vector<std::size_t> exponents);

  static BinaryPolynomial zero(std::size_t n) { return BinaryPolynomial(n, {}); }
  static BinaryPolynomial one(std::size_t n) { return BinaryPolynomial(n, {0}); }
  /// Reduces every exponent mod n; pairs that collide cancel.
  static BinaryPolynomial from_exponents_mod(std::size_t n, std::span<const std::size_t> exponents);

  std::size_t modulus() const noexcept { return n_; }
  const std::vector<std::size_t>& exponents() const noexcept { return exps_; }
  std::size_t weight() const noexcept { return exps_.size(); }
  bool is_zero() const noexcept { return exps_.empty(); }
  /// Degree as an ordinary polynomial; -1 for zero.
  long degree() const noexcept { return exps_.empty() ? -1 : static_cast<long>(exps_.back()); }
  /// Coefficient vector c_0..c_{n-1}.
  BitVector coefficients() const;

  friend bool operator==(const BinaryPolynomial&, const BinaryPolynomial&) = default;
  friend auto operator<=>(const BinaryPolynomial& a, const BinaryPolynomial& b) {
    return a.exps_ <=> b.exps_;
  }

  /// "1+x+x^6" style.
  std::string to_string() const;

 private:
  std::size_t n_ = 1;
  std::vector<std::size_t> exps_;
};

BinaryPolynomial poly_add(const BinaryPolynomial& a, const BinaryPolynomial& b);
BinaryPolynomial poly_mul_mod(const BinaryPolynomial& a, const BinaryPolynomial& b);
/// a^(2^squarings) mod x^n - 1 by repeated squaring.
BinaryPolynomial poly_pow2k(const BinaryPolynomial& a, std::size_t squarings);

/// Monic gcd of a and b as ordinary polynomials over GF(2).
BinaryPolynomial poly_gcd(const BinaryPolynomial& a, const BinaryPolynomial& b);
/// gcd(a, x^n - 1). Degree n (the modulus itself) is not representable, so a
/// zero input is rejected.
BinaryPolynomial poly_gcd_with_modulus(const BinaryPolynomial& a);
/// gcd(a, b, x^n - 1) by chaining; returns its degree (n when a = b = 0).
std::size_t gcd_with_modulus_degree(const BinaryPolynomial& a, const BinaryPolynomial& b);
/// Remainder of a divided by b as ordinary polynomials.
BinaryPolynomial poly_rem(const BinaryPolynomial& a, const BinaryPolynomial& b);

/// n x n circulant whose row i holds the coefficients of x^i a(x).
BinaryMatrix circulant(const BinaryPolynomial& a);

/// Text format "n=63; a=0,1,6; b=0,8,48". Exponent 0 is the constant term;
/// every named entry other than n is a polynomial.
struct PolynomialSet {
  std::size_t n = 0;
  std::map<std::string, BinaryPolynomial> polynomials;

  const BinaryPolynomial& at(const std::string& name) const;
};

PolynomialSet parse_polynomial_set(std::string_view text);
std::string format_polynomial_set(const PolynomialSet& set);
/// Comma-separated exponent list, e.g. "0,1,6".
std::string format_exponents(const BinaryPolynomial& a);

}  // namespace qldpc::gf2
