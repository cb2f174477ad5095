#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ultranorm/field.hpp"

namespace ultranorm {

/// A point of K^n, n >= 1. All coordinates live in `field()`.
class Vector {
 public:
  Vector(FieldSpec field, std::vector<Scalar> coords) : field_(field), coords_(std::move(coords)) {
    if (coords_.empty()) throw InvalidArgument("vectors need at least one coordinate");
    for (const auto& c : coords_) {
      if (!(c.field() == field_)) throw FieldMismatch("coordinate over " + c.field().to_string() + " in a vector over " + field_.to_string());
    }
  }

  static Vector zero(FieldSpec field, std::size_t n) {
    return Vector(field, std::vector<Scalar>(n, Scalar::zero(field)));
  }

  /// lambda * e_axis.
  static Vector on_axis(FieldSpec field, std::size_t n, std::size_t axis, const Scalar& lambda) {
    auto v = zero(field, n);
    v.coords_.at(axis) = lambda;
    return v;
  }

  /// Comma separated scalars, e.g. "9,1/3".
  static Vector parse(FieldSpec field, std::string_view text) {
    std::vector<Scalar> coords;
    std::size_t start = 0;
    while (true) {
      const auto comma = text.find(',', start);
      coords.push_back(Scalar::parse(field, text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return Vector(field, std::move(coords));
  }

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t size() const noexcept { return coords_.size(); }
  const Scalar& operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Scalar>& coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  /// Throws unless both vectors share field and dimension.
  static void check_compatible(const Vector& a, const Vector& b) {
    if (!(a.field_ == b.field_)) throw FieldMismatch("vectors over " + a.field_.to_string() + " and " + b.field_.to_string());
    if (a.size() != b.size()) {
      throw DimensionMismatch("vectors of dimension " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
    }
  }

  bool is_zero() const {
    for (const auto& c : coords_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  std::size_t nonzero_count() const {
    std::size_t count = 0;
    for (const auto& c : coords_) count += c.is_zero() ? 0 : 1;
    return count;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) out += ',';
      out += coords_[i].to_string();
    }
    return out;
  }

  friend Vector operator+(const Vector& a, const Vector& b) { return zip(a, b, [](const Scalar& x, const Scalar& y) { return x + y; }); }
  friend Vector operator-(const Vector& a, const Vector& b) { return zip(a, b, [](const Scalar& x, const Scalar& y) { return x - y; }); }

  friend Vector operator*(const Scalar& lambda, const Vector& v) {
    std::vector<Scalar> out;
    out.reserve(v.size());
    for (const auto& c : v.coords_) out.push_back(lambda * c);
    return Vector(v.field_, std::move(out));
  }

  friend bool operator==(const Vector& a, const Vector& b) { return a.field_ == b.field_ && a.coords_ == b.coords_; }
  friend std::strong_ordering operator<=>(const Vector& a, const Vector& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (auto c = a.coords_[i] <=> b.coords_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  template <typename Op>
  static Vector zip(const Vector& a, const Vector& b, Op op) {
    check_compatible(a, b);
    std::vector<Scalar> out;
    out.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(op(a.coords_[i], b.coords_[i]));
    return Vector(a.field_, std::move(out));
  }

  FieldSpec field_;
  std::vector<Scalar> coords_;
};

/// Every point of F_q^n in lexicographic order (first coordinate most
/// significant). Only defined for prime fields; throws past `cap` points.
inline std::vector<Vector> enumerate_space(const FieldSpec& field, std::size_t n, std::size_t cap) {
  if (!field.is_finite()) throw InvalidArgument("cannot enumerate the infinite field " + field.to_string());
  if (n == 0) throw InvalidArgument("dimension must be positive");
  const std::size_t q = field.prime();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / q) throw EnumerationTooLarge(n, field.to_string() + "^" + std::to_string(n) + " exceeds " + std::to_string(cap) + " points");
    total *= q;
  }
  std::vector<Vector> out;
  out.reserve(total);
  for (std::size_t index = 0; index < total; ++index) {
    std::vector<Scalar> coords(n, Scalar::zero(field));
    std::size_t rest = index;
    for (std::size_t i = n; i-- > 0;) {
      coords[i] = Scalar(field, static_cast<long long>(rest % q));
      rest /= q;
    }
    out.emplace_back(field, std::move(coords));
  }
  return out;
}

}  // namespace ultranorm
