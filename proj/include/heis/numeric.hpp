#pragma once

// Exact arithmetic shared by every module: GMP-backed integers and rationals,
// decimal rendering, and the budget error used by enumeration oracles.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace heis {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Raised when a computation would exceed a configured enumeration, node or
/// cell budget. The message names the budget and the request.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// r^e for any integer exponent; r must be nonzero when e < 0.
Rational pow(const Rational& r, std::int64_t e);
BigInt pow(const BigInt& b, std::uint64_t e);

/// Parses "n", "-n" or "n/d" into a reduced rational. Throws
/// std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// "num/den" (or just "num" when the denominator is 1).
std::string to_string(const Rational& q);

/// Fixed-point rendering with `digits` fractional digits, rounded half away
/// from zero. Computed with integer arithmetic only.
std::string to_decimal(const Rational& q, int digits);

Rational abs(const Rational& q);

/// Checked 64-bit helpers; throw std::overflow_error instead of wrapping.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace heis
