#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tvkl {

enum class Errc {
  negative_weight,
  non_finite_weight,
  sum_out_of_tolerance,
  duplicate_label,
  invalid_label,
  empty_support,
  out_of_range,
  too_large,
  mismatched_supports,
  empty_p_support,
  misaligned_witness,
  support_mismatch,
  unsupported_inequality,
  parse_error,
  io_error,
};

std::string_view to_string(Errc code) noexcept;

// All library failures surface as this exception; code() identifies the
// failed precondition so callers (and the CLI) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tvkl
