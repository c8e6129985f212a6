#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace tam {

// Exact rational number, always kept in lowest terms with a positive
// denominator. Thresholds and neighbor fractions live here so that the
// tie test fraction == theta is decided exactly.
class Rational {
 public:
  using Int = boost::multiprecision::cpp_int;

  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(implicit)
  Rational(Int num, Int den);

  // Accepts "p/q" or "n" (optionally signed). Anything with a decimal point
  // or exponent is rejected: thresholds must be exact.
  static Rational parse(std::string_view text);

  const Int& numerator() const noexcept { return num_; }
  const Int& denominator() const noexcept { return den_; }

  bool is_zero() const { return num_ == 0; }
  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  Int num_;
  Int den_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Compares count/total against r without building a Rational. total > 0.
std::strong_ordering compare_fraction(std::size_t count, std::size_t total, const Rational& r);

}  // namespace tam
