#include "qldpc/tanner/tanner_graph.hpp"

#include "qldpc/error.hpp"

namespace qldpc::tanner {

TannerGraph::TannerGraph(const gf2::BinaryMatrix& h) {
  if (h.is_zero()) fail(Errc::degenerate_input, "Tanner graph of an all-zero matrix");
  check_offsets_.assign(1, 0);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    for (std::size_t c : h.row_support(r)) check_adj_.push_back(c);
    check_offsets_.push_back(check_adj_.size());
  }
  var_offsets_.assign(h.cols() + 1, 0);
  for (std::size_t v : check_adj_) ++var_offsets_[v + 1];
  for (std::size_t v = 0; v < h.cols(); ++v) var_offsets_[v + 1] += var_offsets_[v];
  var_adj_.resize(check_adj_.size());
  std::vector<std::size_t> fill(var_offsets_.begin(), var_offsets_.end() - 1);
  for (std::size_t c = 0; c < h.rows(); ++c) {
    for (std::size_t v : check_neighbors(c)) var_adj_[fill[v]++] = c;
  }
}

}  // namespace qldpc::tanner
