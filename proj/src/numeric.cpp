#include "heis/numeric.hpp"

namespace heis {

Rational pow(const Rational& r, std::int64_t e) {
  if (e < 0) {
    if (r == 0) throw std::domain_error("pow: zero to a negative power");
    Rational inv = 1 / r;
    return pow(inv, -e);
  }
  Rational result = 1;
  Rational base = r;
  auto k = static_cast<std::uint64_t>(e);
  while (k) {
    if (k & 1u) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

BigInt pow(const BigInt& b, std::uint64_t e) {
  return boost::multiprecision::pow(b, static_cast<unsigned>(e));
}

namespace {

BigInt parse_integer(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("empty number");
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed number: " + std::string(s));
  for (std::size_t k = i; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9')
      throw std::invalid_argument("malformed number: " + std::string(s));
  BigInt v(std::string(s[0] == '+' ? s.substr(1) : s));
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(num, den);
}

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const Rational& q, int digits) {
  if (digits < 0) digits = 0;
  BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = pow(BigInt(10), static_cast<std::uint64_t>(digits));
  // round half away from zero: floor((2·num·scale + den) / (2·den))
  BigInt scaled = (2 * num * scale + den) / (2 * den);
  std::string s = scaled.str();
  if (digits > 0) {
    if (s.size() <= static_cast<std::size_t>(digits))
      s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && scaled != 0) s.insert(0, "-");
  return s;
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("group coordinate overflow (add)");
  return r;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("group coordinate overflow (sub)");
  return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("group coordinate overflow (mul)");
  return r;
}

}  // namespace heis
