#pragma once

#include <stdexcept>
#include <string>

namespace qcause {

enum class Errc {
  dimension_mismatch,
  not_hermitian,
  invalid_probability,
  invalid_model,
  signaling,
  domain,
  non_finite,
  infeasible,
  parse,
  io,
};

const char* to_string(Errc code) noexcept;

/// Single exception type of the library; `code()` tells callers (the CLI in
/// particular) which class of input problem occurred.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qcause
