#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matfact {

enum class Errc {
  field_mismatch,
  division_by_zero,
  infinite_field,
  invalid_field,
  dimension_mismatch,
  singular_conjugator,
  singular_input,
  budget_exhausted,
  precondition_violated,
  span_deficient,
  internal_contradiction,
  too_large,
  invalid_input,
};

std::string_view errc_name(Errc code);

/// Single exception type for the library; `code()` tells callers which
/// contract was broken.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace matfact
