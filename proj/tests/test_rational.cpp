#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>

#include "creg/rational.hpp"

using creg::Rational;

TEST_CASE("construction normalizes sign and common factors") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(1, -2));
  CHECK(Rational(3, -9) == Rational(-1, 3));
  CHECK(Rational(0, 7) == Rational());
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(5).num() == 5);
  CHECK(Rational(5).den() == 1);
  CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("arithmetic on small values") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(-Rational(1, 2) == Rational(-1, 2));
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("comparisons cross-multiply rather than divide") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(7, 2) > Rational(3));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  CHECK(Rational(2, 4) >= Rational(1, 2));
  CHECK(Rational(1000000007, 1000000009) < Rational(1));
}

TEST_CASE("field axioms on random values") {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<std::int64_t> num(-50, 50);
  std::uniform_int_distribution<std::int64_t> den(1, 50);
  for (int i = 0; i < 2000; ++i) {
    const Rational a(num(rng), den(rng));
    const Rational b(num(rng), den(rng));
    const Rational c(num(rng), den(rng));
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rational(0));
    if (b != Rational(0)) CHECK((a / b) * b == a);
  }
}

TEST_CASE("overflow is detected, not wrapped") {
  const Rational big(INT64_MAX, 1);
  CHECK_THROWS_AS(big + Rational(1), std::overflow_error);
  CHECK_THROWS_AS(big * Rational(2), std::overflow_error);
  // a near-overflow value that reduces back into range is fine
  CHECK(Rational(INT64_MAX, 2) * Rational(2, INT64_MAX) == Rational(1));
}

TEST_CASE("parse accepts integers and fractions") {
  CHECK(Rational::parse("3") == Rational(3));
  CHECK(Rational::parse("-3") == Rational(-3));
  CHECK(Rational::parse("7/2") == Rational(7, 2));
  CHECK(Rational::parse("-1/4") == Rational(-1, 4));
  CHECK(Rational::parse("6/4") == Rational(3, 2));
  CHECK_THROWS_AS(Rational::parse(""), creg::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/"), creg::ParseError);
  CHECK_THROWS_AS(Rational::parse("/2"), creg::ParseError);
  CHECK_THROWS_AS(Rational::parse("1/0"), creg::ParseError);
  CHECK_THROWS_AS(Rational::parse("1.5"), creg::ParseError);
  CHECK_THROWS_AS(Rational::parse("a"), creg::ParseError);
  CHECK_THROWS_AS(Rational::parse("1 /2"), creg::ParseError);
}

TEST_CASE("to_string round-trips") {
  CHECK(Rational(3, 2).to_string() == "3/2");
  CHECK(Rational(-3, 2).to_string() == "-3/2");
  CHECK(Rational(4).to_string() == "4");
  CHECK(Rational(0).to_string() == "0");
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-5000, 5000);
  std::uniform_int_distribution<std::int64_t> den(1, 5000);
  for (int i = 0; i < 500; ++i) {
    const Rational a(num(rng), den(rng));
    CHECK(Rational::parse(a.to_string()) == a);
  }
}

TEST_CASE("abs") {
  CHECK(creg::abs(Rational(-3, 2)) == Rational(3, 2));
  CHECK(creg::abs(Rational(3, 2)) == Rational(3, 2));
  CHECK(creg::abs(Rational(0)) == Rational(0));
}
