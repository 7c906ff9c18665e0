#pragma once

#include <cstddef>
#include <cstdint>

#include "qldpc/codes/css_code.hpp"

namespace qldpc::codes {

inline constexpr std::size_t kExactDistanceMaxQubits = 20;
inline constexpr std::uint64_t kDefaultDistanceSeed = 0x5eed0d15ULL;

/// Minimum distance of the code. Codes with n <= 20 are enumerated exactly;
/// larger codes get an upper bound from `budget` rounds of randomized
/// information-set sampling per Pauli type. k = 0 yields an unknown record.
DistanceRecord distance_estimate(const CssCode& code, std::size_t budget,
                                 std::uint64_t seed = kDefaultDistanceSeed);

/// Exact X-distance by enumeration: least weight v with h_z v = 0 and v
/// outside rowspace(h_x). Returns 0 when no such v exists. n <= 20 only.
std::size_t exact_x_distance(const gf2::BinaryMatrix& h_x, const gf2::BinaryMatrix& h_z);

/// Lowest-weight X-logical found by sampling; 0 if none was found.
std::size_t sampled_x_distance(const gf2::BinaryMatrix& h_x, const gf2::BinaryMatrix& h_z,
                               std::size_t budget, std::uint64_t seed);

}  // namespace qldpc::codes
