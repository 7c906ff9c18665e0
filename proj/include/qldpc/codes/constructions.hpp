#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "qldpc/codes/css_code.hpp"
#include "qldpc/gf2/binary_polynomial.hpp"

namespace qldpc::codes {

/// Polynomial in two commuting cyclic shifts x (order l) and y (order m).
class BivariatePolynomial {
 public:
  using Term = std::pair<std::size_t, std::size_t>;  // x^first y^second

  BivariatePolynomial(std::size_t l, std::size_t m, std::vector<Term> terms);

  std::size_t l() const noexcept { return l_; }
  std::size_t m() const noexcept { return m_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  /// lm x lm matrix a(S_l ⊗ I_m, I_l ⊗ S_m).
  gf2::BinaryMatrix matrix() const;
  std::string to_string() const;

 private:
  std::size_t l_;
  std::size_t m_;
  std::vector<Term> terms_;
};

/// H_X = [A, B], H_Z = [B^T, A^T] with A, B the circulants of a and b.
CssCode build_gb(const gf2::BinaryPolynomial& a, const gf2::BinaryPolynomial& b);

/// k = 2 deg gcd(a, b, x^n - 1), without building matrices.
std::size_t gb_dimension_prop1(const gf2::BinaryPolynomial& a, const gf2::BinaryPolynomial& b);

/// GB code with b = a^(2^l_exp). Throws if squaring cancels terms of a,
/// since the stabilizer weight would then not be 2 w_H(a).
CssCode build_ub(const gf2::BinaryPolynomial& a, std::size_t l_exp);

CssCode build_bb(const BivariatePolynomial& a, const BivariatePolynomial& b);

struct UbSearchResult {
  gf2::BinaryPolynomial a;
  std::size_t l_exp = 0;
  CssCode code;
  double rate = 0.0;
};

struct UbSearchParams {
  std::size_t n = 0;           // circulant size; the code has 2n qubits
  std::size_t weight = 0;      // target stabilizer weight w, even and >= 4
  std::size_t l_max = 1;
  std::size_t limit = 0;       // 0 means unlimited
  std::size_t threads = 1;
};

/// Shift representative used by the search: among the cyclic shifts of a
/// that keep a constant term, the one of least degree, ties broken by the
/// sorted exponent list.
gf2::BinaryPolynomial canonical_shift(const gf2::BinaryPolynomial& a);

/// Enumerates canonical a with w_H(a) = weight/2 and every l in [1, l_max],
/// keeping codes with k > 2. Results arrive in (a, l) lexicographic order.
/// The visitor returns false to stop early.
void ub_search(const UbSearchParams& params,
               const std::function<bool(const UbSearchResult&)>& visit);
std::vector<UbSearchResult> ub_search(const UbSearchParams& params);

}  // namespace qldpc::codes
