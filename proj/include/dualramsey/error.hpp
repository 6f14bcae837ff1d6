#pragma once

#include <stdexcept>
#include <string>

namespace dr {

enum class Errc {
  invalid_argument = 1,
  out_of_shape,
  budget_exceeded,
  not_found,
  not_simple,
  no_collision,
  domain_mismatch,
  overflow,
  missing_oracle,
  parse_error,
  internal,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Raised by the staircase pigeonhole when the supplied interval was too short.
// step is 1-based within one L-insensitive pass; pair is the letter-pair index
// of the enclosing strongly insensitive run (0 when not applicable).
class NoCollisionError : public Error {
 public:
  NoCollisionError(int step, int pair, const std::string& what)
      : Error(Errc::no_collision, what), step_(step), pair_(pair) {}
  int step() const noexcept { return step_; }
  int pair() const noexcept { return pair_; }

 private:
  int step_;
  int pair_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace dr
