#pragma once

#include <stdexcept>
#include <string>

namespace qldpc {

enum class Errc {
  modulus_mismatch,
  degenerate_input,
  dimension_mismatch,
  size_limit,
  invalid_argument,
  invalid_permutation,
  no_solution,
  empty_list,
  regularity_violation,
  invariant_violation,
  parse_error,
};

const char* to_string(Errc code) noexcept;

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace qldpc
