#include "qldpc/gf2/binary_matrix.hpp"

#include <algorithm>
#include <bit>

#include "qldpc/error.hpp"

namespace qldpc::gf2 {

namespace {

void check_axes(std::size_t rows, std::size_t cols) {
  if (rows > kMaxAxis || cols > kMaxAxis) {
    fail(Errc::size_limit, "matrix " + std::to_string(rows) + "x" + std::to_string(cols) +
                               " exceeds the 2^20 per-axis cap");
  }
}

void xor_words(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src,
               std::size_t from_word) {
  for (std::size_t w = from_word; w < dst.size(); ++w) dst[w] ^= src[w];
}

void swap_rows(BinaryMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = m.row_words(a);
  auto rb = m.row_words(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

// Reduces m in place to reduced row-echelon form; returns pivot columns.
std::vector<std::size_t> reduce_to_rref(BinaryMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && !m.get(p, c)) ++p;
    if (p == m.rows()) continue;
    swap_rows(m, r, p);
    const auto pivot_row = m.row_words(r);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i != r && m.get(i, c)) xor_words(m.row_words(i), pivot_row, c >> 6);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

BinaryMatrix::BinaryMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)) {
  check_axes(rows, cols);
  data_.assign(rows_ * stride_, 0);
}

BinaryMatrix BinaryMatrix::identity(std::size_t n) {
  BinaryMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BinaryMatrix BinaryMatrix::from_strings(std::initializer_list<std::string_view> rows) {
  std::vector<std::string> copy(rows.begin(), rows.end());
  return from_strings(copy);
}

BinaryMatrix BinaryMatrix::from_strings(std::span<const std::string> rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BinaryMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) fail(Errc::dimension_mismatch, "ragged matrix rows");
    m.set_row(r, BitVector::from_bits(rows[r]));
  }
  return m;
}

BinaryMatrix BinaryMatrix::from_rows(std::span<const BitVector> rows, std::size_t cols) {
  BinaryMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) m.set_row(r, rows[r]);
  return m;
}

BitVector BinaryMatrix::row(std::size_t r) const {
  BitVector v(cols_);
  const auto src = row_words(r);
  std::copy(src.begin(), src.end(), v.words().begin());
  return v;
}

void BinaryMatrix::set_row(std::size_t r, const BitVector& v) {
  if (v.size() != cols_) fail(Errc::dimension_mismatch, "row length does not match matrix");
  std::copy(v.words().begin(), v.words().end(), row_words(r).begin());
}

std::size_t BinaryMatrix::row_weight(std::size_t r) const noexcept {
  std::size_t w = 0;
  for (std::uint64_t word : row_words(r)) w += static_cast<std::size_t>(std::popcount(word));
  return w;
}

std::vector<std::size_t> BinaryMatrix::row_support(std::size_t r) const {
  std::vector<std::size_t> out;
  const auto words = row_words(r);
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t word = words[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::vector<std::size_t> BinaryMatrix::row_weights() const {
  std::vector<std::size_t> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = row_weight(r);
  return out;
}

std::vector<std::size_t> BinaryMatrix::column_weights() const {
  std::vector<std::size_t> out(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c : row_support(r)) ++out[c];
  }
  return out;
}

std::size_t BinaryMatrix::nonzeros() const noexcept {
  std::size_t total = 0;
  for (std::uint64_t word : data_) total += static_cast<std::size_t>(std::popcount(word));
  return total;
}

bool BinaryMatrix::is_zero() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

BinaryMatrix BinaryMatrix::transpose() const {
  BinaryMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c : row_support(r)) t.set(c, r);
  }
  return t;
}

BinaryMatrix BinaryMatrix::select_rows(std::span<const std::size_t> indices) const {
  BinaryMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= rows_) fail(Errc::dimension_mismatch, "row index out of range");
    const auto src = row_words(indices[i]);
    std::copy(src.begin(), src.end(), out.row_words(i).begin());
  }
  return out;
}

BitVector BinaryMatrix::multiply(const BitVector& v) const {
  if (v.size() != cols_) {
    fail(Errc::dimension_mismatch, "vector length " + std::to_string(v.size()) +
                                       " does not match " + std::to_string(cols_) + " columns");
  }
  BitVector out(rows_);
  const auto vw = v.words();
  for (std::size_t r = 0; r < rows_; ++r) {
    const auto rw = row_words(r);
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < stride_; ++w) acc ^= rw[w] & vw[w];
    if (std::popcount(acc) & 1) out.set(r);
  }
  return out;
}

std::string BinaryMatrix::to_string() const {
  std::string s;
  s.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

BinaryMatrix operator*(const BinaryMatrix& a, const BinaryMatrix& b) {
  if (a.cols() != b.rows()) fail(Errc::dimension_mismatch, "matrix product shape mismatch");
  BinaryMatrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    auto dst = out.row_words(r);
    for (std::size_t k : a.row_support(r)) xor_words(dst, b.row_words(k), 0);
  }
  return out;
}

BinaryMatrix hstack(const BinaryMatrix& left, const BinaryMatrix& right) {
  if (left.rows() != right.rows()) fail(Errc::dimension_mismatch, "hstack row mismatch");
  BinaryMatrix out(left.rows(), left.cols() + right.cols());
  for (std::size_t r = 0; r < left.rows(); ++r) {
    for (std::size_t c : left.row_support(r)) out.set(r, c);
    for (std::size_t c : right.row_support(r)) out.set(r, left.cols() + c);
  }
  return out;
}

BinaryMatrix vstack(const BinaryMatrix& top, const BinaryMatrix& bottom) {
  if (top.cols() != bottom.cols()) fail(Errc::dimension_mismatch, "vstack column mismatch");
  BinaryMatrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t r = 0; r < top.rows(); ++r) {
    const auto src = top.row_words(r);
    std::copy(src.begin(), src.end(), out.row_words(r).begin());
  }
  for (std::size_t r = 0; r < bottom.rows(); ++r) {
    const auto src = bottom.row_words(r);
    std::copy(src.begin(), src.end(), out.row_words(top.rows() + r).begin());
  }
  return out;
}

std::size_t rank(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < work.cols() && r < work.rows(); ++c) {
    std::size_t p = r;
    while (p < work.rows() && !work.get(p, c)) ++p;
    if (p == work.rows()) continue;
    swap_rows(work, r, p);
    const auto pivot_row = work.row_words(r);
    for (std::size_t i = r + 1; i < work.rows(); ++i) {
      if (work.get(i, c)) xor_words(work.row_words(i), pivot_row, c >> 6);
    }
    ++r;
  }
  return r;
}

bool in_rowspace(const BinaryMatrix& m, const BitVector& v) {
  if (v.size() != m.cols()) fail(Errc::dimension_mismatch, "in_rowspace length mismatch");
  return RowSpace(m).contains(v);
}

BitVector solve_or_project(const BinaryMatrix& m, const BitVector& s,
                           std::span<const std::size_t> column_order) {
  if (s.size() != m.rows()) fail(Errc::dimension_mismatch, "syndrome length does not match rows");
  if (column_order.size() != m.cols()) {
    fail(Errc::invalid_permutation, "column order must list every column once");
  }
  std::vector<bool> seen(m.cols(), false);
  for (std::size_t c : column_order) {
    if (c >= m.cols() || seen[c]) fail(Errc::invalid_permutation, "column order is not a permutation");
    seen[c] = true;
  }

  BinaryMatrix work = m;
  std::vector<std::uint8_t> rhs(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) rhs[r] = s.get(r) ? 1 : 0;

  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c : column_order) {
    if (r == work.rows()) break;
    std::size_t p = r;
    while (p < work.rows() && !work.get(p, c)) ++p;
    if (p == work.rows()) continue;
    swap_rows(work, r, p);
    std::swap(rhs[r], rhs[p]);
    const auto pivot_row = work.row_words(r);
    for (std::size_t i = 0; i < work.rows(); ++i) {
      if (i != r && work.get(i, c)) {
        xor_words(work.row_words(i), pivot_row, 0);
        rhs[i] ^= rhs[r];
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < work.rows(); ++i) {
    if (rhs[i]) fail(Errc::no_solution, "syndrome is not in the column space");
  }
  BitVector e(m.cols());
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
    if (rhs[i]) e.set(pivot_cols[i]);
  }
  return e;
}

std::vector<BitVector> kernel_basis(const BinaryMatrix& m) {
  BinaryMatrix work = m;
  const auto pivots = reduce_to_rref(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector v(m.cols());
    v.set(f);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      if (work.get(i, f)) v.set(pivots[i]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

RowSpace::RowSpace(const BinaryMatrix& m) : cols_(m.cols()), basis_(m) {
  pivots_ = reduce_to_rref(basis_);
}

BitVector RowSpace::reduce(BitVector v) const {
  if (v.size() != cols_) fail(Errc::dimension_mismatch, "row space membership length mismatch");
  auto vw = v.words();
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (v.get(pivots_[i])) xor_words(vw, basis_.row_words(i), pivots_[i] >> 6);
  }
  return v;
}

bool RowSpace::contains(const BitVector& v) const { return reduce(v).none(); }

}  // namespace qldpc::gf2
