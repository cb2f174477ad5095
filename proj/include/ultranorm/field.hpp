#pragma once

// Valued fields with ultrametric valuations: the field descriptor, exact
// scalars, exact magnitudes and the valuation map itself.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ultranorm/error.hpp"

namespace ultranorm {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

namespace detail {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// Boost 1.74 rejects a negative denominator in the two-argument constructor.
inline Rational make_rational(Integer num, Integer den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

inline std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline std::strong_ordering compare(const Rational& a, const Rational& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// Optional leading '-', then at least one decimal digit.
inline bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (!is_integer_literal(s)) throw ParseError(std::string(whole), "malformed integer");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

}  // namespace detail

enum class FieldKind { padic, prime_field, trivial_rationals };

/// The ambient field K together with its valuation. Only ultrametric
/// valuations are representable: the p-adic valuation on Q (|p| = 1/p), the
/// trivial valuation on a prime field F_q, and the trivial valuation on Q.
class FieldSpec {
 public:
  static FieldSpec padic(std::uint32_t p) {
    if (!detail::is_prime(p)) throw InvalidArgument("p-adic field needs a prime, got " + std::to_string(p));
    return FieldSpec(FieldKind::padic, p);
  }

  static FieldSpec prime_field(std::uint32_t q) {
    if (!detail::is_prime(q)) throw InvalidArgument("finite field order must be prime, got " + std::to_string(q));
    return FieldSpec(FieldKind::prime_field, q);
  }

  static FieldSpec trivial_rationals() { return FieldSpec(FieldKind::trivial_rationals, 0); }

  /// Accepts "padic:3", "gf:5", "trivial:q" (or just "trivial").
  static FieldSpec parse(std::string_view text) {
    const auto s = detail::trim(text);
    if (s == "trivial" || s == "trivial:q") return trivial_rationals();
    const auto colon = s.find(':');
    if (colon == std::string_view::npos) throw ParseError(std::string(text), "unknown field");
    const auto head = s.substr(0, colon);
    const auto tail = s.substr(colon + 1);
    if (tail.empty() || tail.size() > 9 ||
        !std::all_of(tail.begin(), tail.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw ParseError(std::string(text), "malformed field prime");
    }
    const auto prime = static_cast<std::uint32_t>(std::stoul(std::string(tail)));
    if (!detail::is_prime(prime)) throw ParseError(std::string(text), "field characteristic is not prime");
    if (head == "padic") return padic(prime);
    if (head == "gf") return prime_field(prime);
    throw ParseError(std::string(text), "unknown field");
  }

  FieldKind kind() const noexcept { return kind_; }
  /// p for p-adic fields, q for prime fields, 0 for the trivially valued rationals.
  std::uint32_t prime() const noexcept { return prime_; }

  bool is_finite() const noexcept { return kind_ == FieldKind::prime_field; }
  bool has_trivial_valuation() const noexcept { return kind_ != FieldKind::padic; }
  bool is_rational() const noexcept { return kind_ != FieldKind::prime_field; }

  std::string to_string() const {
    switch (kind_) {
      case FieldKind::padic: return "padic:" + std::to_string(prime_);
      case FieldKind::prime_field: return "gf:" + std::to_string(prime_);
      case FieldKind::trivial_rationals: return "trivial:q";
    }
    return {};
  }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(FieldKind kind, std::uint32_t prime) : kind_(kind), prime_(prime) {}

  FieldKind kind_;
  std::uint32_t prime_;
};

/// An exact nonnegative rational: the value of a valuation or of a norm.
class Magnitude {
 public:
  Magnitude() = default;

  explicit Magnitude(Rational value) : value_(std::move(value)) {
    if (value_ < 0) throw InvalidArgument("magnitude must be nonnegative, got " + detail::to_string(value_));
  }

  explicit Magnitude(long long value) : Magnitude(Rational(value)) {}

  static Magnitude zero() { return Magnitude(); }
  static Magnitude one() { return Magnitude(Rational(1)); }

  static Magnitude parse(std::string_view text) {
    const auto s = detail::trim(text);
    const auto slash = s.find('/');
    Integer num = detail::parse_integer(s.substr(0, slash), text);
    Integer den = slash == std::string_view::npos ? Integer(1) : detail::parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ParseError(std::string(text), "zero denominator");
    Rational value = detail::make_rational(num, den);
    if (value < 0) throw ParseError(std::string(text), "negative magnitude");
    return Magnitude(std::move(value));
  }

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }

  double to_double() const { return value_.convert_to<double>(); }
  std::string to_string() const { return detail::to_string(value_); }

  friend Magnitude operator+(const Magnitude& a, const Magnitude& b) { return Magnitude(a.value_ + b.value_, Trusted{}); }
  friend Magnitude operator*(const Magnitude& a, const Magnitude& b) { return Magnitude(a.value_ * b.value_, Trusted{}); }
  Magnitude& operator+=(const Magnitude& other) {
    value_ += other.value_;
    return *this;
  }

  friend bool operator==(const Magnitude& a, const Magnitude& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
    return detail::compare(a.value_, b.value_);
  }

 private:
  struct Trusted {};
  Magnitude(Rational value, Trusted) : value_(std::move(value)) {}

  Rational value_{0};
};

inline Magnitude max(const Magnitude& a, const Magnitude& b) { return a < b ? b : a; }

/// An element of the field named by its FieldSpec. Rationals are kept in
/// lowest terms with positive denominator; prime-field residues in [0, q).
class Scalar {
 public:
  Scalar(FieldSpec field, Rational value) : field_(field), value_(std::move(value)) { normalize(); }
  Scalar(FieldSpec field, long long value) : Scalar(field, Rational(value)) {}
  Scalar(FieldSpec field, long long num, long long den) : field_(field) {
    if (den == 0) throw DivisionByZero("zero denominator");
    value_ = detail::make_rational(num, den);
    normalize();
  }

  static Scalar zero(FieldSpec field) { return Scalar(field, 0); }
  static Scalar one(FieldSpec field) { return Scalar(field, 1); }

  /// "num/den" or "num" for rational fields; a decimal residue (reduced
  /// mod q) for prime fields.
  static Scalar parse(FieldSpec field, std::string_view text) {
    const auto s = detail::trim(text);
    const auto slash = s.find('/');
    if (field.is_finite()) {
      if (slash != std::string_view::npos) throw ParseError(std::string(text), "fractions are not residues");
      return Scalar(field, Rational(detail::parse_integer(s, text)));
    }
    Integer num = detail::parse_integer(s.substr(0, slash), text);
    Integer den = slash == std::string_view::npos ? Integer(1) : detail::parse_integer(s.substr(slash + 1), text);
    if (den == 0) throw ParseError(std::string(text), "zero denominator");
    return Scalar(field, detail::make_rational(num, den));
  }

  const FieldSpec& field() const noexcept { return field_; }
  const Rational& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }

  /// Residue in [0, q); only meaningful for prime fields.
  std::uint32_t residue() const { return boost::multiprecision::numerator(value_).convert_to<std::uint32_t>(); }

  std::string to_string() const { return detail::to_string(value_); }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return Scalar(a.field_, a.value_ + b.value_);
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return Scalar(a.field_, a.value_ - b.value_);
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same(a, b);
    return Scalar(a.field_, a.value_ * b.value_);
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
  Scalar operator-() const { return Scalar(field_, -value_); }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero("zero has no multiplicative inverse");
    if (!field_.is_finite()) return Scalar(field_, 1 / value_);
    // Fermat: a^(q-2) mod q.
    const std::uint64_t q = field_.prime();
    std::uint64_t base = residue(), result = 1;
    for (std::uint64_t e = q - 2; e > 0; e >>= 1) {
      if (e & 1) result = result * base % q;
      base = base * base % q;
    }
    return Scalar(field_, static_cast<long long>(result));
  }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.field_ == b.field_ && a.value_ == b.value_; }
  // Orders by value only; used for deterministic containers over one field.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) { return detail::compare(a.value_, b.value_); }

 private:
  static void check_same(const Scalar& a, const Scalar& b) {
    if (!(a.field_ == b.field_)) {
      throw FieldMismatch("scalars over " + a.field_.to_string() + " and " + b.field_.to_string());
    }
  }

  void normalize() {
    if (!field_.is_finite()) return;
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const Integer q = field_.prime();
    Integer num = numerator(value_) % q;
    Integer den = denominator(value_) % q;
    if (den == 0) throw DivisionByZero("denominator vanishes mod " + q.str());
    if (num < 0) num += q;
    value_ = Rational(num);
    if (den != 1) *this = *this * Scalar(field_, Rational(den)).inverse();
  }

  FieldSpec field_;
  Rational value_;
};

inline Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
inline Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar scalar_neg(const Scalar& a) { return -a; }
inline Scalar scalar_inv(const Scalar& a) { return a.inverse(); }

/// Net multiplicity of p in a nonzero rational.
inline long long padic_order(const Rational& value, std::uint32_t p) {
  if (value == 0) throw InvalidArgument("p-adic order of zero is infinite");
  auto multiplicity = [p](Integer n) {
    if (n < 0) n = -n;
    long long count = 0;
    while (n % p == 0) {
      n /= p;
      ++count;
    }
    return count;
  };
  return multiplicity(boost::multiprecision::numerator(value)) - multiplicity(boost::multiprecision::denominator(value));
}

/// |a|: p^(-v) for the p-adic valuation, 1 on nonzero elements under the
/// trivial valuation, 0 at zero.
inline Magnitude valuation(const Scalar& a) {
  if (a.is_zero()) return Magnitude::zero();
  if (a.field().has_trivial_valuation()) return Magnitude::one();
  const long long v = padic_order(a.value(), a.field().prime());
  const Integer power = boost::multiprecision::pow(Integer(a.field().prime()), static_cast<unsigned>(v < 0 ? -v : v));
  return v >= 0 ? Magnitude(Rational(Integer(1), power)) : Magnitude(Rational(power));
}

}  // namespace ultranorm
