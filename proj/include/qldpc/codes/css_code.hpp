#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qldpc/gf2/binary_matrix.hpp"

namespace qldpc::codes {

enum class DistanceKind { unknown, exact, lower_bound, upper_bound };

struct DistanceRecord {
  DistanceKind kind = DistanceKind::unknown;
  std::size_t value = 0;
  /// Seed of the randomized search that produced an upper bound.
  std::optional<std::uint64_t> seed;

  /// "d=8", "d≤8", "d≥8" or "d=?".
  std::string to_string() const;
};

enum class CodeFamily { custom, gb, ub, bb };

const char* to_string(CodeFamily family) noexcept;

struct CodeMetadata {
  CodeFamily family = CodeFamily::custom;
  std::string name;
  /// Generator descriptions keyed by role ("a", "b"), human readable.
  std::map<std::string, std::string> generators;
  std::optional<std::size_t> l_exp;
  /// Declared stabilizer weight for the bicycle families.
  std::optional<std::size_t> stabilizer_weight;
};

/// CSS code given by X- and Z-check matrices over the same n qubits.
/// Construction verifies h_x * h_z^T = 0 and, when declared, the row weight.
class CssCode {
 public:
  CssCode(gf2::BinaryMatrix h_x, gf2::BinaryMatrix h_z, CodeMetadata metadata = {});

  std::size_t n() const noexcept { return h_x_.cols(); }
  std::size_t k() const noexcept { return k_; }
  const gf2::BinaryMatrix& h_x() const noexcept { return h_x_; }
  const gf2::BinaryMatrix& h_z() const noexcept { return h_z_; }
  const CodeMetadata& metadata() const noexcept { return metadata_; }
  const DistanceRecord& distance() const noexcept { return distance_; }
  void set_distance(DistanceRecord d) { distance_ = d; }

  /// Row weight -> number of rows, over both check matrices.
  std::map<std::size_t, std::size_t> row_weight_histogram() const;
  double rate() const noexcept { return n() ? static_cast<double>(k_) / static_cast<double>(n()) : 0.0; }

  /// "[[126,12,d≤8]]".
  std::string parameters() const;

 private:
  gf2::BinaryMatrix h_x_;
  gf2::BinaryMatrix h_z_;
  std::size_t k_ = 0;
  CodeMetadata metadata_;
  DistanceRecord distance_;
};

}  // namespace qldpc::codes
