#include <limits>

#include "dualramsey/shelah.hpp"

namespace dr {

BigInt parse_bigint(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    fail(Errc::parse_error, "expected a non-negative decimal integer, got '" + text + "'");
  return BigInt(text);
}

std::string to_decimal(const BigInt& value) { return value.str(); }

std::int64_t to_int64(const BigInt& value, const char* what) {
  if (value < std::numeric_limits<std::int64_t>::min() || value > std::numeric_limits<std::int64_t>::max())
    fail(Errc::overflow, std::string(what) + " = " + value.str() + " does not fit in 64 bits");
  return static_cast<std::int64_t>(value);
}

std::uint64_t bit_length(const BigInt& value) {
  if (value == 0) return 0;
  return boost::multiprecision::msb(boost::multiprecision::abs(value)) + 1;
}

BigInt checked_pow(const BigInt& base, const BigInt& exponent, std::uint64_t max_bits) {
  if (base < 0 || exponent < 0) fail(Errc::invalid_argument, "checked_pow takes non-negative operands");
  if (exponent == 0) return 1;
  if (base <= 1) return base;
  // base >= 2: the result has at least exponent + 1 bits.
  if (exponent >= max_bits) fail(Errc::overflow, "power exceeds " + std::to_string(max_bits) + " bits");
  const auto e = static_cast<std::uint64_t>(exponent);
  const std::uint64_t low = (bit_length(base) - 1) * e + 1;
  if (low > max_bits) fail(Errc::overflow, "power exceeds " + std::to_string(max_bits) + " bits");
  return boost::multiprecision::pow(base, static_cast<unsigned>(e));
}

}  // namespace dr
