#include "qldpc/codes/css_code.hpp"

#include "qldpc/error.hpp"

namespace qldpc::codes {

std::string DistanceRecord::to_string() const {
  switch (kind) {
    case DistanceKind::exact: return "d=" + std::to_string(value);
    case DistanceKind::lower_bound: return "d≥" + std::to_string(value);
    case DistanceKind::upper_bound: return "d≤" + std::to_string(value);
    case DistanceKind::unknown: break;
  }
  return "d=?";
}

const char* to_string(CodeFamily family) noexcept {
  switch (family) {
    case CodeFamily::gb: return "gb";
    case CodeFamily::ub: return "ub";
    case CodeFamily::bb: return "bb";
    case CodeFamily::custom: break;
  }
  return "custom";
}

CssCode::CssCode(gf2::BinaryMatrix h_x, gf2::BinaryMatrix h_z, CodeMetadata metadata)
    : h_x_(std::move(h_x)), h_z_(std::move(h_z)), metadata_(std::move(metadata)) {
  if (h_x_.cols() != h_z_.cols()) {
    fail(Errc::dimension_mismatch, "H_X and H_Z act on different numbers of qubits");
  }
  if (!(h_x_ * h_z_.transpose()).is_zero()) {
    fail(Errc::invariant_violation, "H_X * H_Z^T != 0; checks do not commute");
  }
  if (metadata_.stabilizer_weight) {
    const std::size_t w = *metadata_.stabilizer_weight;
    for (const auto* h : {&h_x_, &h_z_}) {
      for (std::size_t r = 0; r < h->rows(); ++r) {
        if (h->row_weight(r) != w) {
          fail(Errc::invariant_violation, "row " + std::to_string(r) + " has weight " +
                                              std::to_string(h->row_weight(r)) +
                                              ", declared " + std::to_string(w));
        }
      }
    }
  }
  k_ = n() - gf2::rank(h_x_) - gf2::rank(h_z_);
}

std::map<std::size_t, std::size_t> CssCode::row_weight_histogram() const {
  std::map<std::size_t, std::size_t> hist;
  for (const auto* h : {&h_x_, &h_z_}) {
    for (std::size_t w : h->row_weights()) ++hist[w];
  }
  return hist;
}

std::string CssCode::parameters() const {
  std::string s = "[[" + std::to_string(n()) + "," + std::to_string(k_);
  if (distance_.kind != DistanceKind::unknown) s += "," + distance_.to_string();
  return s + "]]";
}

}  // namespace qldpc::codes
