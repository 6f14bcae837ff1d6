#include <limits>

#include "dualramsey/shelah.hpp"

namespace dr {

BigInt f1(const BigInt& k, const BigInt& kappa, const BigInt& i, const BigInt& m, const BigInt& r, std::uint64_t max_bits) {
  if (k < 0 || kappa < 0 || i < 0 || m < 0 || r < 0) fail(Errc::invalid_argument, "f1 takes non-negative arguments");
  if (i == 0 || k == 0 || kappa == 0 || m == 0 || r == 0 || m < kappa) return 0;
  if (i > m) fail(Errc::invalid_argument, "f1 is defined for i <= m");
  // Every step adds r^e >= 1, and r = 1 makes every summand 1.
  if (r == 1) return i;
  BigInt value = 0;
  for (BigInt j = 0; j < i; ++j) {
    const BigInt base = m - j - 1 + value;
    const BigInt e = checked_pow(base, kappa, max_bits) * checked_pow(k, base, max_bits);
    value += checked_pow(r, e, max_bits);
  }
  return value;
}

BigInt f2(const BigInt& i, const BigInt& k, const BigInt& kappa, const BigInt& m, const BigInt& r, std::uint64_t max_bits) {
  if (i < 0) fail(Errc::invalid_argument, "f2 takes non-negative arguments");
  if (i == 0) return 0;
  BigInt value = m;
  for (BigInt j = 1; j < i; ++j) value = f1(k, kappa, value, value, r, max_bits);
  return value;
}

Schedule shelah_schedule(const BigInt& k, const BigInt& kappa, const BigInt& m, const BigInt& r, std::uint64_t max_bits) {
  if (kappa > m) fail(Errc::invalid_argument, "the schedule needs kappa <= m");
  if (k < 2) fail(Errc::invalid_argument, "the schedule needs k >= 2");
  if (m < 1 || r < 1 || kappa < 1) fail(Errc::invalid_argument, "the schedule needs kappa, m, r >= 1");
  if (m > 1'000'000) fail(Errc::budget_exceeded, "schedules are limited to m <= 10^6 intervals");
  Schedule s;
  s.n0 = f1(k, kappa, m, m, r, max_bits);
  const auto mm = static_cast<std::int64_t>(m);
  for (std::int64_t i = 0; i <= mm; ++i) s.q.push_back(s.n0 - f1(k, kappa, m - i, m, r, max_bits));
  for (std::int64_t i = 1; i <= mm; ++i) {
    s.p.push_back(s.q[static_cast<std::size_t>(i)] - s.q[static_cast<std::size_t>(i - 1)]);
    if (s.p.back() < 1) fail(Errc::internal, "schedule is not strictly increasing");
  }
  return s;
}

BigInt pigeonhole_count(const BigInt& k, const BigInt& kappa, const BigInt& J, const BigInt& r, std::uint64_t max_bits) {
  return checked_pow(r, checked_pow(J, kappa, max_bits) * checked_pow(k, J, max_bits), max_bits);
}

std::vector<std::int64_t> prefix_bounds(const std::vector<std::int64_t>& p) {
  std::vector<std::int64_t> q{0};
  for (std::int64_t x : p) {
    if (x < 1) fail(Errc::invalid_argument, "interval lengths must be >= 1");
    if (x > std::numeric_limits<std::int64_t>::max() - q.back()) fail(Errc::overflow, "interval lengths overflow 64 bits");
    q.push_back(q.back() + x);
  }
  return q;
}

}  // namespace dr
