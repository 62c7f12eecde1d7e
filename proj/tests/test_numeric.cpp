#include <doctest.h>

#include <cmath>
#include <random>

#include "mapgrowth/numeric.hpp"

using namespace mapgrowth;

TEST_CASE("ipow computes exact integer powers") {
  CHECK(ipow(2, 10) == 1024);
  CHECK(ipow(BigInt(10), 30) == BigInt("1000000000000000000000000000000"));
  CHECK(ipow(BigInt(-3), 3) == -27);
  CHECK(ipow(BigInt(-3), 4) == 81);
  CHECK(ipow(BigInt(7), 0) == 1);
  CHECK(ipow(BigInt(0), 0) == 1);
  CHECK(ipow(BigInt(0), 5) == 0);
}

TEST_CASE("integer_root matches hand-checked values") {
  CHECK(integer_root(BigInt(8), 3) == 2);
  CHECK(integer_root(BigInt(511), 3) == 7);
  CHECK(integer_root(BigInt(512), 3) == 8);
  CHECK(integer_root(BigInt(513), 3) == 8);
  CHECK(integer_root(BigInt(0), 4) == 0);
  CHECK(integer_root(BigInt(1), 9) == 1);
  CHECK(integer_root(BigInt(12345), 1) == 12345);
  CHECK(integer_root(BigInt("1000000000000000000000000"), 12) == 100);
}

TEST_CASE("integer_root is the exact floor of the real root") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 500; ++trial) {
    const unsigned k = 2 + static_cast<unsigned>(rng() % 9);
    BigInt x = BigInt(rng() % 1000000007);
    x = x * BigInt(rng() % 1000000007) + BigInt(rng() % 97);
    const BigInt r = integer_root(x, k);
    CHECK(ipow(r, k) <= x);
    CHECK(ipow(r + 1, k) > x);
  }
}

TEST_CASE("integer_root at perfect-power boundaries") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned k = 2 + static_cast<unsigned>(rng() % 6);
    const BigInt base = BigInt(1 + rng() % 100000);
    const BigInt pk = ipow(base, k);
    CHECK(integer_root(pk, k) == base);
    CHECK(integer_root(pk - 1, k) == base - 1);
    CHECK(integer_root(pk + 1, k) == base);
  }
}

TEST_CASE("floor_div rounds toward negative infinity") {
  CHECK(floor_div(BigInt(7), BigInt(2)) == 3);
  CHECK(floor_div(BigInt(-7), BigInt(2)) == -4);
  CHECK(floor_div(BigInt(7), BigInt(-2)) == -4);
  CHECK(floor_div(BigInt(-7), BigInt(-2)) == 3);
  CHECK(floor_div(BigInt(6), BigInt(3)) == 2);
  CHECK(floor_div(BigInt(-6), BigInt(3)) == -2);
  CHECK(floor_div(BigInt(0), BigInt(5)) == 0);
}

TEST_CASE("floor_div identity x = q*d + r with r sharing the divisor sign") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    BigInt x = BigInt(static_cast<long long>(rng() % 2000001) - 1000000);
    BigInt d = BigInt(static_cast<long long>(rng() % 2001) - 1000);
    if (d == 0) d = 7;
    const BigInt q = floor_div(x, d);
    const BigInt r = x - q * d;
    if (d > 0) {
      CHECK(r >= 0);
      CHECK(r < d);
    } else {
      CHECK(r <= 0);
      CHECK(r > d);
    }
  }
}

TEST_CASE("floor and ceil of rationals") {
  CHECK(floor_rational(Rational(7, 2)) == 3);
  CHECK(floor_rational(Rational(-7, 2)) == -4);
  CHECK(floor_rational(Rational(6)) == 6);
  CHECK(ceil_rational(Rational(7, 2)) == 4);
  CHECK(ceil_rational(Rational(-7, 2)) == -3);
  CHECK(ceil_rational(Rational(6)) == 6);
  CHECK(ceil_rational(Rational(9, 2)) == 5);
}

TEST_CASE("parse_rational accepts integers, fractions, and decimals") {
  CHECK(parse_rational("5") == Rational(5));
  CHECK(parse_rational("-12") == Rational(-12));
  CHECK(parse_rational("9/2") == Rational(9, 2));
  CHECK(parse_rational("-3/4") == Rational(-3, 4));
  CHECK(parse_rational("6.5") == Rational(13, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-2.5") == Rational(-5, 2));
  CHECK(parse_rational("14/4") == Rational(7, 2));
}

TEST_CASE("parse_rational rejects malformed input") {
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("2/"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("/3"), std::invalid_argument);
}

TEST_CASE("rational_to_string round-trips through parse_rational") {
  const Rational vals[] = {Rational(0), Rational(5),     Rational(-5), Rational(13, 2),
                           Rational(-9, 4), Rational(100, 3)};
  for (const Rational& v : vals) CHECK(parse_rational(rational_to_string(v)) == v);
}

TEST_CASE("log_big approximates the natural log of large integers") {
  CHECK(log_big(BigInt(1)) == doctest::Approx(0.0));
  CHECK(log_big(BigInt(2)) == doctest::Approx(std::log(2.0)));
  CHECK(log_big(ipow(BigInt(2), 100)) == doctest::Approx(100.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(log_big(ipow(BigInt(10), 50)) == doctest::Approx(50.0 * std::log(10.0)).epsilon(1e-12));
  CHECK(log_abs_big(BigInt(-1000)) == doctest::Approx(std::log(1000.0)).epsilon(1e-12));
}

#ifdef __SIZEOF_INT128__
TEST_CASE("128-bit helpers agree with arbitrary precision") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 500; ++trial) {
    const uint64_t lo = rng();
    const uint64_t hi = rng() % (uint64_t(1) << 40);
    const uint128 x = (uint128(hi) << 64) | lo;
    const BigInt bx = BigInt(hi) * ipow(BigInt(2), 64) + lo;
    const unsigned k = 2 + static_cast<unsigned>(rng() % 9);
    const uint128 r = integer_root_u128(x, k);
    CHECK(BigInt(static_cast<uint64_t>(r)) + ipow(BigInt(2), 64) * static_cast<uint64_t>(r >> 64) ==
          integer_root(bx, k));
  }
}

TEST_CASE("overflow-checked 128-bit multiply") {
  uint128 out = 0;
  CHECK_FALSE(mul_overflow_u128(uint128(1) << 60, uint128(1) << 60, out));
  CHECK(out == uint128(1) << 120);
  CHECK(mul_overflow_u128(uint128(1) << 64, uint128(1) << 64, out));
}
#endif
