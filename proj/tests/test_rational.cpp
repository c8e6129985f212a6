#include <doctest.h>

#include <random>

#include "tam/errors.hpp"
#include "tam/rational.hpp"

using tam::Rational;

TEST_CASE("parse fractions and integers") {
  CHECK(Rational::parse("3/5") == Rational(3, 5));
  CHECK(Rational::parse("2/4") == Rational(1, 2));
  CHECK(Rational::parse("1") == Rational(1));
  CHECK(Rational::parse("0") == Rational(0));
  CHECK(Rational::parse("-1/2") == Rational(-1, 2));
  CHECK(Rational::parse(" 1/3 ") == Rational(1, 3));
  CHECK(Rational::parse("6/4").to_string() == "3/2");
  CHECK(Rational::parse("4/2").to_string() == "2");
}

TEST_CASE("floats and junk are rejected") {
  for (const char* bad : {"0.5", "1e-1", "1E2", ".5", "", "1/0", "a/b", "1/2/3", "1/", "/2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), tam::Error);
  }
  try {
    Rational::parse("0.25");
    FAIL("expected throw");
  } catch (const tam::Error& e) {
    CHECK(e.code() == tam::Errc::InvalidRational);
    CHECK(std::string(e.what()).find("floating") != std::string::npos);
  }
}

TEST_CASE("arithmetic") {
  Rational a(1, 3);
  Rational b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(Rational(1) - Rational(2, 5) == Rational(3, 5));
  CHECK_THROWS_AS(a / Rational(0), tam::Error);
}

TEST_CASE("ordering agrees with cross-multiplication") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-50, 50);
  std::uniform_int_distribution<std::int64_t> den(1, 50);
  for (int i = 0; i < 5000; ++i) {
    std::int64_t p = num(rng), q = den(rng), r = num(rng), s = den(rng);
    Rational x(p, q);
    Rational y(r, s);
    CHECK(((x < y) == (p * s < r * q)));
    CHECK(((x == y) == (p * s == r * q)));
  }
}

TEST_CASE("compare_fraction") {
  CHECK(tam::compare_fraction(1, 4, Rational(1, 4)) == std::strong_ordering::equal);
  CHECK(tam::compare_fraction(1, 3, Rational(1, 4)) == std::strong_ordering::greater);
  CHECK(tam::compare_fraction(0, 3, Rational(0)) == std::strong_ordering::equal);
  CHECK(tam::compare_fraction(2, 3, Rational(1)) == std::strong_ordering::less);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    std::size_t total = 1 + rng() % 20;
    std::size_t count = rng() % (total + 1);
    Rational r(static_cast<std::int64_t>(rng() % 13), static_cast<std::int64_t>(1 + rng() % 12));
    Rational frac(static_cast<std::int64_t>(count), static_cast<std::int64_t>(total));
    CHECK(tam::compare_fraction(count, total, r) == (frac <=> r));
  }
}
