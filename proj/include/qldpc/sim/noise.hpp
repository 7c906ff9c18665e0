#pragma once

#include <cstddef>
#include <string>

#include "qldpc/codes/css_code.hpp"
#include "qldpc/gf2/bit_vector.hpp"
#include "qldpc/random/philox.hpp"

namespace qldpc::sim {

enum class NoiseKind { x_only, depolarizing };

const char* to_string(NoiseKind k) noexcept;
/// "x" / "x-only" or "depol" / "depolarizing".
NoiseKind parse_noise(const std::string& text);

struct ErrorModel {
  NoiseKind kind = NoiseKind::x_only;
  /// X flip probability p, or total Pauli rate q for depolarizing noise.
  double rate = 0.0;

  void validate() const;
  /// Per-qubit probability that the X (equally Z) component is set; the
  /// decoder prior. q/3 for each Pauli gives 2q/3.
  double marginal() const noexcept;
};

struct PauliError {
  gf2::BitVector x;
  gf2::BitVector z;
};

PauliError sample_error(const ErrorModel& model, std::size_t n, random::PhiloxStream& rng);

/// Which error component is decoded. `both` decodes X with H_Z and Z with
/// H_X and fails if either side fails.
enum class Side { x, z, both };

const char* to_string(Side s) noexcept;
Side parse_side(const std::string& text);

enum class Outcome { success, logical_failure, convergence_failure };

const char* to_string(Outcome o) noexcept;

/// Decides whether a decoded estimate leaves a stabilizer residual.
class Classifier {
 public:
  /// x: residual against rowspace(H_X); z: against rowspace(H_Z).
  Classifier(const codes::CssCode& code, Side side);

  /// Throws Errc::dimension_mismatch on length errors and
  /// Errc::invariant_violation if a success residual has nonzero syndrome.
  Outcome classify(const gf2::BitVector& error, const gf2::BitVector& estimate, bool converged) const;

 private:
  const gf2::BinaryMatrix* check_;  // the matrix producing the syndrome
  gf2::RowSpace stabilizers_;
};

}  // namespace qldpc::sim
