#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mapgrowth {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt ipow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline BigInt ipow(long long base, unsigned exp) { return ipow(BigInt(base), exp); }

// Largest t >= 0 with t^q <= n.  Binary search on the bit length; exact for any size.
inline BigInt integer_root(const BigInt& n, unsigned q) {
  if (n < 0) throw std::invalid_argument("integer_root: negative radicand");
  if (q == 0) throw std::invalid_argument("integer_root: zeroth root");
  if (n == 0) return 0;
  if (q == 1) return n;
  const unsigned bits = boost::multiprecision::msb(n) + 1;
  BigInt lo = 0, hi = BigInt(1) << (bits / q + 1);
  while (lo < hi) {  // invariant: lo^q <= n < (hi+1)^q, answer in [lo, hi]
    BigInt mid = (lo + hi + 1) / 2;
    if (ipow(mid, q) <= n)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

// Floor division with sign semantics of mathematical floor (cpp_int's / truncates).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  if (b == 0) throw std::invalid_argument("floor_div: division by zero");
  BigInt quo = a / b, rem = a % b;
  if (rem != 0 && ((rem < 0) != (b < 0))) --quo;
  return quo;
}

inline BigInt floor_rational(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r),
                   boost::multiprecision::denominator(r));
}

inline BigInt ceil_rational(const Rational& r) { return -floor_rational(-r); }

// Natural log of a positive big integer, stable for values far beyond double range.
inline double log_big(const BigInt& n) {
  if (n <= 0) throw std::invalid_argument("log_big: nonpositive argument");
  const unsigned bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 60) return std::log(static_cast<double>(n.convert_to<std::uint64_t>()));
  const unsigned shift = bits - 60;
  const double top = static_cast<double>((n >> shift).convert_to<std::uint64_t>());
  return std::log(top) + static_cast<double>(shift) * std::log(2.0);
}

inline double log_abs_big(const BigInt& n) {
  return log_big(n >= 0 ? n : BigInt(-n));
}

// Parse "u/v", "u", or a decimal like "6.5" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  const std::string s(text);
  const auto bad = [&] { throw std::invalid_argument("not a rational number: '" + s + "'"); };
  if (s.empty()) bad();
  auto parse_int = [&](std::string_view t) -> BigInt {
    if (t.empty()) bad();
    std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
    if (i == t.size()) bad();
    for (std::size_t j = i; j < t.size(); ++j)
      if (t[j] < '0' || t[j] > '9') bad();
    return BigInt(std::string(t));
  };
  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigInt num = parse_int(std::string_view(s).substr(0, slash));
    BigInt den = parse_int(std::string_view(s).substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + s + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string::npos) {
    std::string_view head = std::string_view(s).substr(0, dot);
    std::string_view frac = std::string_view(s).substr(dot + 1);
    if (frac.empty()) bad();
    for (char c : frac)
      if (c < '0' || c > '9') bad();
    BigInt num = parse_int(head.empty() ? std::string_view("0") : head);
    const bool neg = !s.empty() && s[0] == '-';
    BigInt scale = ipow(BigInt(10), static_cast<unsigned>(frac.size()));
    BigInt fnum = BigInt(std::string(frac));
    BigInt total = num * scale + (neg ? -fnum : fnum);
    return Rational(total, scale);
  }
  return Rational(parse_int(s), 1);
}

inline std::string rational_to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

#if defined(__SIZEOF_INT128__)
using uint128 = unsigned __int128;

// Saturating multiply: returns limit+1-ish sentinel behaviour via the bool flag.
inline bool mul_overflow_u128(uint128 a, uint128 b, uint128& out) {
  if (a != 0 && b > (~uint128(0)) / a) return true;
  out = a * b;
  return false;
}

// a^p, capped: returns false (and leaves out unspecified) if the value exceeds cap.
inline bool ipow_capped_u128(uint128 a, unsigned p, uint128 cap, uint128& out) {
  uint128 acc = 1;
  for (unsigned i = 0; i < p; ++i) {
    if (mul_overflow_u128(acc, a, acc)) return false;
    if (acc > cap) return false;
  }
  out = acc;
  return true;
}

// Largest t with t^q <= n; float seed plus exact fixup.
inline uint128 integer_root_u128(uint128 n, unsigned q) {
  if (q == 1 || n == 0) return n;
  long double seed = std::exp2l(std::log2l(static_cast<long double>(n)) / q);
  uint128 t = seed < 1.0L ? 0 : static_cast<uint128>(seed);
  if (t > 2) t -= 2;  // step below, then walk up exactly
  auto pow_leq = [&](uint128 base) {
    uint128 acc;
    return ipow_capped_u128(base, q, n, acc);
  };
  while (!pow_leq(t)) --t;
  while (pow_leq(t + 1)) ++t;
  return t;
}
#endif

}  // namespace mapgrowth
