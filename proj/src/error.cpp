#include "dualramsey/error.hpp"

namespace dr {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::out_of_shape: return "OutOfShape";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::not_found: return "NotFound";
    case Errc::not_simple: return "NotSimple";
    case Errc::no_collision: return "NoCollision";
    case Errc::domain_mismatch: return "DomainMismatch";
    case Errc::overflow: return "Overflow";
    case Errc::missing_oracle: return "MissingOracle";
    case Errc::parse_error: return "ParseError";
    case Errc::internal: return "Internal";
  }
  return "Unknown";
}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace dr
