#include "qldpc/codes/distance.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "qldpc/error.hpp"

namespace qldpc::codes {

using gf2::BinaryMatrix;
using gf2::BitVector;

std::size_t exact_x_distance(const BinaryMatrix& h_x, const BinaryMatrix& h_z) {
  const std::size_t n = h_z.cols();
  if (n > kExactDistanceMaxQubits) {
    fail(Errc::size_limit, "exact distance enumeration is limited to n <= 20");
  }
  const gf2::RowSpace stabilizers(h_x);
  for (std::size_t w = 1; w <= n; ++w) {
    // Gosper's hack over n-bit masks of popcount w.
    std::uint32_t mask = (std::uint32_t{1} << w) - 1;
    const std::uint32_t limit = std::uint32_t{1} << n;
    while (mask < limit) {
      BitVector v(n);
      v.words()[0] = mask;
      if (h_z.multiply(v).none() && !stabilizers.contains(v)) return w;
      const std::uint32_t c = mask & (~mask + 1);
      const std::uint32_t r = mask + c;
      mask = (((r ^ mask) >> 2) / c) | r;
    }
  }
  return 0;
}

std::size_t sampled_x_distance(const BinaryMatrix& h_x, const BinaryMatrix& h_z,
                               std::size_t budget, std::uint64_t seed) {
  const std::size_t n = h_z.cols();
  const gf2::RowSpace stabilizers(h_x);
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::size_t best = 0;

  auto consider = [&](const BitVector& permuted) {
    BitVector v(n);
    for (std::size_t j : permuted.support()) v.set(perm[j]);
    if (!stabilizers.contains(v)) best = permuted.weight();
  };
  auto improves = [&](std::size_t w) { return w != 0 && (best == 0 || w < best); };

  for (std::size_t trial = 0; trial < budget; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    // Column j of the permuted matrix is column perm[j] of h_z.
    BinaryMatrix permuted(h_z.rows(), n);
    for (std::size_t r = 0; r < h_z.rows(); ++r) {
      for (std::size_t j = 0; j < n; ++j) {
        if (h_z.get(r, perm[j])) permuted.set(r, j);
      }
    }
    // Lee-Brickell with up to two information-set positions.
    const auto basis = gf2::kernel_basis(permuted);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (improves(basis[i].weight())) consider(basis[i]);
      const auto wi = basis[i].words();
      for (std::size_t j = i + 1; j < basis.size(); ++j) {
        const auto wj = basis[j].words();
        std::size_t w = 0;
        for (std::size_t k = 0; k < wi.size(); ++k) {
          w += static_cast<std::size_t>(std::popcount(wi[k] ^ wj[k]));
        }
        if (improves(w)) consider(basis[i] ^ basis[j]);
      }
    }
  }
  return best;
}

DistanceRecord distance_estimate(const CssCode& code, std::size_t budget, std::uint64_t seed) {
  DistanceRecord record;
  if (code.k() == 0) return record;
  if (code.n() <= kExactDistanceMaxQubits) {
    const std::size_t dx = exact_x_distance(code.h_x(), code.h_z());
    const std::size_t dz = exact_x_distance(code.h_z(), code.h_x());
    record.kind = DistanceKind::exact;
    record.value = std::min(dx, dz);
    return record;
  }
  const std::size_t dx = sampled_x_distance(code.h_x(), code.h_z(), budget, seed);
  const std::size_t dz = sampled_x_distance(code.h_z(), code.h_x(), budget, seed + 1);
  const std::size_t found = dx && dz ? std::min(dx, dz) : std::max(dx, dz);
  if (found == 0) return record;
  record.kind = DistanceKind::upper_bound;
  record.value = found;
  record.seed = seed;
  return record;
}

}  // namespace qldpc::codes
