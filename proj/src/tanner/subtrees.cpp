#include "qldpc/tanner/subtrees.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "qldpc/error.hpp"
#include "qldpc/random/philox.hpp"

namespace qldpc::tanner {

std::vector<std::size_t> identity_permutation(std::size_t n) {
  std::vector<std::size_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0);
  return pi;
}

std::vector<std::size_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::size_t> pi = identity_permutation(n);
  random::PhiloxStream rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(pi[i - 1], pi[rng.below(i)]);
  }
  return pi;
}

void validate_permutation(std::span<const std::size_t> pi, std::size_t n) {
  if (pi.size() != n) {
    fail(Errc::invalid_permutation, "permutation has " + std::to_string(pi.size()) +
                                        " entries, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (std::size_t x : pi) {
    if (x >= n || seen[x]) fail(Errc::invalid_permutation, "not a permutation of [0, n)");
    seen[x] = true;
  }
}

SubtreeCollection maximal_subtrees(const TannerGraph& g, std::span<const std::size_t> pi,
                                   SubtreeStats* stats) {
  const std::size_t checks = g.check_count();
  validate_permutation(pi, checks);

  SubtreeCollection out;
  out.permutation.assign(pi.begin(), pi.end());

  std::vector<bool> visited(checks, false);
  // Per-subtree scratch, invalidated by bumping `stamp` instead of clearing.
  std::vector<std::size_t> var_stamp(g.var_count(), 0);
  std::vector<std::size_t> expanded_stamp(g.var_count(), 0);
  std::vector<std::size_t> check_stamp(checks, 0);
  std::vector<std::size_t> covered(checks, 0);  // covered variables of each check
  std::size_t stamp = 0;
  std::size_t visits = 0;
  std::vector<std::size_t> candidates;
  std::deque<std::size_t> queue;

  auto cover = [&](std::size_t v) {
    if (var_stamp[v] == stamp) return;
    var_stamp[v] = stamp;
    for (std::size_t c : g.var_neighbors(v)) {
      ++visits;
      if (check_stamp[c] != stamp) {
        check_stamp[c] = stamp;
        covered[c] = 0;
      }
      ++covered[c];
    }
  };
  auto admit = [&](std::size_t c, std::vector<std::size_t>& tree) {
    visited[c] = true;
    tree.push_back(c);
    queue.push_back(c);
    for (std::size_t v : g.check_neighbors(c)) {
      ++visits;
      cover(v);
    }
  };

  for (std::size_t root : pi) {
    if (visited[root]) continue;
    ++stamp;
    std::vector<std::size_t> tree;
    admit(root, tree);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      candidates.clear();
      for (std::size_t v : g.check_neighbors(u)) {
        ++visits;
        // Every check on an already expanded variable has been decided.
        if (expanded_stamp[v] == stamp) continue;
        expanded_stamp[v] = stamp;
        for (std::size_t c : g.var_neighbors(v)) {
          ++visits;
          if (!visited[c]) candidates.push_back(c);
        }
      }
      std::sort(candidates.begin(), candidates.end());
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (std::size_t c : candidates) {
        if (!visited[c] && covered[c] == 1) admit(c, tree);
      }
    }
    out.subtrees.push_back(std::move(tree));
  }
  if (stats) stats->edge_visits = visits;
  return out;
}

std::vector<std::size_t> variable_cover(const TannerGraph& g, std::span<const std::size_t> checks) {
  std::vector<std::size_t> vars;
  for (std::size_t c : checks) {
    auto nb = g.check_neighbors(c);
    vars.insert(vars.end(), nb.begin(), nb.end());
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool is_tree(const TannerGraph& g, std::span<const std::size_t> checks) {
  const std::vector<std::size_t> vars = variable_cover(g, checks);
  // Nodes: checks first, then covered variables by their rank in `vars`.
  std::vector<std::size_t> parent(checks.size() + vars.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = parent.size();
  for (std::size_t i = 0; i < checks.size(); ++i) {
    for (std::size_t v : g.check_neighbors(checks[i])) {
      const auto j = static_cast<std::size_t>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
      const std::size_t a = find(i);
      const std::size_t b = find(checks.size() + j);
      if (a == b) return false;
      parent[a] = b;
      --components;
    }
  }
  return components == 1;
}

std::size_t subtree_size_bound(const TannerGraph& g, std::size_t w) {
  if (w < 2) fail(Errc::invalid_argument, "subtree size bound needs check degree w >= 2");
  for (std::size_t c = 0; c < g.check_count(); ++c) {
    if (g.check_degree(c) != w) {
      fail(Errc::regularity_violation, "check " + std::to_string(c) + " has degree " +
                                           std::to_string(g.check_degree(c)) + ", expected " +
                                           std::to_string(w));
    }
  }
  return (g.var_count() - 1) / (w - 1);
}

namespace {

void validate_rows(std::span<const std::size_t> t, std::size_t rows) {
  if (t.empty()) fail(Errc::invalid_argument, "empty redundant row set");
  for (std::size_t r : t) {
    if (r >= rows) fail(Errc::invalid_argument, "row index " + std::to_string(r) + " out of range");
  }
}

}  // namespace

gf2::BinaryMatrix redundant_matrix(const gf2::BinaryMatrix& h, std::span<const std::size_t> t) {
  validate_rows(t, h.rows());
  return gf2::vstack(h, h.select_rows(t));
}

gf2::BitVector extended_syndrome(const gf2::BitVector& s, std::span<const std::size_t> t) {
  validate_rows(t, s.size());
  gf2::BitVector out(s.size() + t.size());
  for (std::size_t i : s.support()) out.set(i);
  for (std::size_t i = 0; i < t.size(); ++i) out.set(s.size() + i, s.get(t[i]));
  return out;
}

}  // namespace qldpc::tanner
