#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qldpc/gf2/binary_matrix.hpp"

namespace qldpc::tanner {

/// Bipartite check/variable graph of a parity-check matrix in CSR form.
/// Both adjacency maps are sorted ascending.
class TannerGraph {
 public:
  /// Throws Errc::degenerate_input for an all-zero matrix.
  explicit TannerGraph(const gf2::BinaryMatrix& h);

  std::size_t check_count() const noexcept { return check_offsets_.size() - 1; }
  std::size_t var_count() const noexcept { return var_offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return check_adj_.size(); }

  std::span<const std::size_t> check_neighbors(std::size_t c) const noexcept {
    return {check_adj_.data() + check_offsets_[c], check_offsets_[c + 1] - check_offsets_[c]};
  }
  std::span<const std::size_t> var_neighbors(std::size_t v) const noexcept {
    return {var_adj_.data() + var_offsets_[v], var_offsets_[v + 1] - var_offsets_[v]};
  }
  std::size_t check_degree(std::size_t c) const noexcept { return check_offsets_[c + 1] - check_offsets_[c]; }
  std::size_t var_degree(std::size_t v) const noexcept { return var_offsets_[v + 1] - var_offsets_[v]; }

 private:
  std::vector<std::size_t> check_offsets_;
  std::vector<std::size_t> check_adj_;
  std::vector<std::size_t> var_offsets_;
  std::vector<std::size_t> var_adj_;
};

}  // namespace qldpc::tanner
