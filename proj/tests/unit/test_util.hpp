#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qldpc/error.hpp"
#include "qldpc/gf2/binary_matrix.hpp"
#include "qldpc/gf2/binary_polynomial.hpp"

namespace qldpc::testutil {

// Runs fn and returns the code of the qldpc::Error it throws.
template <typename Fn>
std::optional<Errc> error_code(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline gf2::BitVector random_vector(std::size_t n, std::mt19937_64& rng, double density = 0.5) {
  std::bernoulli_distribution bit(density);
  gf2::BitVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (bit(rng)) v.set(i);
  }
  return v;
}

inline gf2::BinaryMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng,
                                       double density = 0.5) {
  gf2::BinaryMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) m.set_row(r, random_vector(cols, rng, density));
  return m;
}

inline gf2::BinaryPolynomial random_polynomial(std::size_t n, std::size_t weight,
                                               std::mt19937_64& rng) {
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  all.resize(std::min(weight, n));
  return gf2::BinaryPolynomial(n, all);
}

// Dense integer matrix product reduced mod 2; independent of the packed path.
inline std::vector<std::vector<int>> dense_product(const gf2::BinaryMatrix& a,
                                                   const gf2::BinaryMatrix& b) {
  std::vector<std::vector<int>> out(a.rows(), std::vector<int>(b.cols(), 0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      int acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc += a.get(i, k) * b.get(k, j);
      out[i][j] = acc % 2;
    }
  return out;
}

inline std::vector<std::vector<int>> to_dense(const gf2::BinaryMatrix& m) {
  std::vector<std::vector<int>> out(m.rows(), std::vector<int>(m.cols(), 0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m.get(i, j);
  return out;
}

// Size of the row span by enumerating all 2^rows combinations (rows <= 16).
inline std::size_t brute_force_rank(const gf2::BinaryMatrix& m) {
  std::vector<std::vector<bool>> seen;
  std::vector<gf2::BitVector> span;
  for (std::uint32_t mask = 0; mask < (1U << m.rows()); ++mask) {
    gf2::BitVector v(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (mask >> r & 1U) v ^= m.row(r);
    }
    if (std::find(span.begin(), span.end(), v) == span.end()) span.push_back(v);
  }
  std::size_t rank = 0;
  while ((std::size_t{1} << rank) < span.size()) ++rank;
  return rank;
}

}  // namespace qldpc::testutil
