#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qldpc/gf2/binary_matrix.hpp"
#include "qldpc/tanner/tanner_graph.hpp"

namespace qldpc::tanner {

/// Partition of the check nodes into cycle-free subtrees, in discovery order.
struct SubtreeCollection {
  std::vector<std::vector<std::size_t>> subtrees;
  /// Root order used for the traversal.
  std::vector<std::size_t> permutation;

  std::size_t size() const noexcept { return subtrees.size(); }
};

struct SubtreeStats {
  /// Adjacency entries read during construction, both directions.
  std::size_t edge_visits = 0;
};

std::vector<std::size_t> identity_permutation(std::size_t n);
/// Fisher-Yates shuffle driven by a Philox stream keyed by `seed`.
std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed);
/// Throws Errc::invalid_permutation unless pi is a permutation of [0, n).
void validate_permutation(std::span<const std::size_t> pi, std::size_t n);

/// Greedy breadth-first growth of maximal subtrees. Roots are taken in pi
/// order; the checks reachable from a dequeued check are examined in
/// ascending index order, and a check joins when exactly one of its
/// variables is already covered by the subtree.
SubtreeCollection maximal_subtrees(const TannerGraph& g, std::span<const std::size_t> pi,
                                   SubtreeStats* stats = nullptr);

/// Sorted variables incident to the checks of one subtree.
std::vector<std::size_t> variable_cover(const TannerGraph& g, std::span<const std::size_t> checks);

/// True when the checks with their incident variables induce a forest with
/// one component, checked by union-find.
bool is_tree(const TannerGraph& g, std::span<const std::size_t> checks);

/// Size bound floor((|V_v| - 1) / (w - 1)). Throws
/// Errc::regularity_violation if some check degree differs from w.
std::size_t subtree_size_bound(const TannerGraph& g, std::size_t w);

/// [h; h_t], duplicated rows allowed.
gf2::BinaryMatrix redundant_matrix(const gf2::BinaryMatrix& h, std::span<const std::size_t> t);
/// [s; s_t], each appended bit copying the syndrome of its source row.
gf2::BitVector extended_syndrome(const gf2::BitVector& s, std::span<const std::size_t> t);

}  // namespace qldpc::tanner
