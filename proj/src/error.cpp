#include "qldpc/error.hpp"

namespace qldpc {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::modulus_mismatch: return "modulus mismatch";
    case Errc::degenerate_input: return "degenerate input";
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::size_limit: return "size limit exceeded";
    case Errc::invalid_argument: return "invalid argument";
    case Errc::invalid_permutation: return "invalid permutation";
    case Errc::no_solution: return "no solution";
    case Errc::empty_list: return "empty candidate list";
    case Errc::regularity_violation: return "regularity violation";
    case Errc::invariant_violation: return "invariant violation";
    case Errc::parse_error: return "parse error";
  }
  return "unknown error";
}

}  // namespace qldpc
