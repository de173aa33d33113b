#include "qcause/error.hpp"

namespace qcause {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::dimension_mismatch: return "dimension mismatch";
    case Errc::not_hermitian: return "not hermitian";
    case Errc::invalid_probability: return "invalid probability table";
    case Errc::invalid_model: return "invalid quantum model";
    case Errc::signaling: return "signaling behavior";
    case Errc::domain: return "domain error";
    case Errc::non_finite: return "non-finite value";
    case Errc::infeasible: return "infeasible";
    case Errc::parse: return "parse error";
    case Errc::io: return "i/o error";
  }
  return "unknown";
}

}  // namespace qcause
