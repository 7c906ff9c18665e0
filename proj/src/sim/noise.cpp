#include "qldpc/sim/noise.hpp"

#include "qldpc/error.hpp"

namespace qldpc::sim {

const char* to_string(NoiseKind k) noexcept { return k == NoiseKind::depolarizing ? "depol" : "x"; }

NoiseKind parse_noise(const std::string& text) {
  if (text == "x" || text == "x-only") return NoiseKind::x_only;
  if (text == "depol" || text == "depolarizing") return NoiseKind::depolarizing;
  fail(Errc::parse_error, "unknown noise model '" + text + "'");
}

void ErrorModel::validate() const {
  if (!(rate > 0.0 && rate < 1.0)) fail(Errc::invalid_argument, "error rate must lie in (0, 1)");
}

double ErrorModel::marginal() const noexcept {
  return kind == NoiseKind::depolarizing ? 2.0 * rate / 3.0 : rate;
}

PauliError sample_error(const ErrorModel& model, std::size_t n, random::PhiloxStream& rng) {
  PauliError e{gf2::BitVector(n), gf2::BitVector(n)};
  if (model.kind == NoiseKind::x_only) {
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform() < model.rate) e.x.set(i);
    }
    return e;
  }
  const double third = model.rate / 3.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rng.uniform();
    if (u >= model.rate) continue;
    if (u < third) {
      e.x.set(i);
    } else if (u < 2.0 * third) {
      e.x.set(i);
      e.z.set(i);
    } else {
      e.z.set(i);
    }
  }
  return e;
}

const char* to_string(Side s) noexcept {
  switch (s) {
    case Side::z: return "z";
    case Side::both: return "both";
    case Side::x: break;
  }
  return "x";
}

Side parse_side(const std::string& text) {
  if (text == "x") return Side::x;
  if (text == "z") return Side::z;
  if (text == "both") return Side::both;
  fail(Errc::parse_error, "unknown decoding side '" + text + "'");
}

const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::logical_failure: return "logical-failure";
    case Outcome::convergence_failure: return "convergence-failure";
    case Outcome::success: break;
  }
  return "success";
}

Classifier::Classifier(const codes::CssCode& code, Side side)
    : check_(side == Side::z ? &code.h_x() : &code.h_z()),
      stabilizers_(side == Side::z ? code.h_z() : code.h_x()) {
  if (side == Side::both) fail(Errc::invalid_argument, "a classifier handles one side");
}

Outcome Classifier::classify(const gf2::BitVector& error, const gf2::BitVector& estimate,
                             bool converged) const {
  if (error.size() != check_->cols() || estimate.size() != check_->cols()) {
    fail(Errc::dimension_mismatch, "error and estimate must have one bit per qubit");
  }
  if (!converged) return Outcome::convergence_failure;
  const gf2::BitVector residual = error ^ estimate;
  if (!stabilizers_.contains(residual)) return Outcome::logical_failure;
  if (check_->multiply(residual).any()) {
    fail(Errc::invariant_violation, "stabilizer residual with a nonzero syndrome");
  }
  return Outcome::success;
}

}  // namespace qldpc::sim
