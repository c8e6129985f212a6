#include "tam/rational.hpp"

#include <cctype>
#include <ostream>

#include "tam/errors.hpp"

namespace tam {

namespace {

std::strong_ordering compare_int(const Rational::Int& a, const Rational::Int& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational::Int to_int(std::string_view s) {
  bool negative = false;
  if (s.front() == '-' || s.front() == '+') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational::Int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return negative ? Rational::Int(-v) : v;
}

}  // namespace

Rational::Rational(Int num, Int den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw Error(Errc::InvalidRational, "rational with zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  Int g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
  if (num_ == 0) den_ = 1;
}

Rational Rational::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  if (s.find_first_of(".eE") != std::string_view::npos) {
    throw Error(Errc::InvalidRational,
                "'" + std::string(text) +
                    "' looks like a floating-point value; use an exact fraction such as \"1/4\"");
  }
  auto slash = s.find('/');
  std::string_view num = trim(s.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? "1" : trim(s.substr(slash + 1));
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw Error(Errc::InvalidRational, "malformed rational '" + std::string(text) + "'");
  }
  return Rational(to_int(num), to_int(den));
}

std::string Rational::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(Errc::InvalidRational, "division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  return compare_int(a.num_ * b.den_, b.num_ * a.den_);
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

std::strong_ordering compare_fraction(std::size_t count, std::size_t total, const Rational& r) {
  return compare_int(Rational::Int(count) * r.denominator(), r.numerator() * Rational::Int(total));
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::IsolatedAgent: return "IsolatedAgent";
    case Errc::UnknownAgent: return "UnknownAgent";
    case Errc::DuplicateAgent: return "DuplicateAgent";
    case Errc::ThetaOutOfRange: return "ThetaOutOfRange";
    case Errc::InvalidRational: return "InvalidRational";
    case Errc::Parse: return "ParseError";
    case Errc::MissingTheta: return "MissingTheta";
    case Errc::UnknownAtom: return "UnknownAtom";
    case Errc::EmptyProduct: return "EmptyProduct";
    case Errc::NotAPartition: return "NotAPartition";
    case Errc::NotFullRelation: return "NotFullRelation";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::GenerationFailed: return "GenerationFailed";
    case Errc::NoMatchingState: return "NoMatchingState";
    case Errc::AmbiguousState: return "AmbiguousState";
    case Errc::NondeterminismDetected: return "NondeterminismDetected";
    case Errc::PreconditionNotConjunctive: return "PreconditionNotConjunctive";
    case Errc::NotAtomState: return "NotAtomState";
    case Errc::InvalidActionModel: return "InvalidActionModel";
    case Errc::InvalidAutomaton: return "InvalidAutomaton";
    case Errc::InvalidDocument: return "InvalidDocument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace tam
