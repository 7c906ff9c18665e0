#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qldpc/gf2/bit_vector.hpp"

namespace qldpc::gf2 {

/// Dense GF(2) matrix with bit-packed rows. Each row occupies
/// words_per_row() consecutive 64-bit words.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;
  BinaryMatrix(std::size_t rows, std::size_t cols);

  static BinaryMatrix identity(std::size_t n);
  /// Rows given as '0'/'1' strings of equal length.
  static BinaryMatrix from_strings(std::initializer_list<std::string_view> rows);
  static BinaryMatrix from_strings(std::span<const std::string> rows);
  static BinaryMatrix from_rows(std::span<const BitVector> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return stride_; }

  bool get(std::size_t r, std::size_t c) const noexcept {
    return (data_[r * stride_ + (c >> 6)] >> (c & 63)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) noexcept {
    std::uint64_t& word = data_[r * stride_ + (c >> 6)];
    const std::uint64_t mask = std::uint64_t{1} << (c & 63);
    word = value ? (word | mask) : (word & ~mask);
  }
  void flip(std::size_t r, std::size_t c) noexcept {
    data_[r * stride_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }

  std::span<const std::uint64_t> row_words(std::size_t r) const noexcept {
    return {data_.data() + r * stride_, stride_};
  }
  std::span<std::uint64_t> row_words(std::size_t r) noexcept {
    return {data_.data() + r * stride_, stride_};
  }

  BitVector row(std::size_t r) const;
  void set_row(std::size_t r, const BitVector& v);
  std::size_t row_weight(std::size_t r) const noexcept;
  std::vector<std::size_t> row_support(std::size_t r) const;
  std::vector<std::size_t> row_weights() const;
  std::vector<std::size_t> column_weights() const;
  std::size_t nonzeros() const noexcept;
  bool is_zero() const noexcept;

  BinaryMatrix transpose() const;
  /// Rows listed in `indices`, in that order. Duplicates allowed.
  BinaryMatrix select_rows(std::span<const std::size_t> indices) const;

  /// this * v^T.
  BitVector multiply(const BitVector& v) const;

  friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b);
BinaryMatrix hstack(const BinaryMatrix& left, const BinaryMatrix& right);
BinaryMatrix vstack(const BinaryMatrix& top, const BinaryMatrix& bottom);

std::size_t rank(const BinaryMatrix& m);
bool in_rowspace(const BinaryMatrix& m, const BitVector& v);

/// Solves m * e^T = s with e supported on pivot columns chosen greedily in
/// `column_order` (a permutation of the columns). Throws Errc::no_solution if
/// s is not in the column space.
BitVector solve_or_project(const BinaryMatrix& m, const BitVector& s,
                           std::span<const std::size_t> column_order);

/// Kernel basis of m (one vector per free column, in column order).
std::vector<BitVector> kernel_basis(const BinaryMatrix& m);

/// Reduced row-echelon basis of a row space, kept for repeated membership
/// queries.
class RowSpace {
 public:
  explicit RowSpace(const BinaryMatrix& m);

  std::size_t rank() const noexcept { return pivots_.size(); }
  std::size_t dimension() const noexcept { return cols_; }
  bool contains(const BitVector& v) const;
  /// v minus its projection onto the basis pivots; zero iff v is contained.
  BitVector reduce(BitVector v) const;

 private:
  std::size_t cols_;
  BinaryMatrix basis_;
  std::vector<std::size_t> pivots_;
};

}  // namespace qldpc::gf2
