#pragma once

// Metric betweenness in (K^n, ||.||_1) over an ultrametric field.
//
// z lies between x and y, i.e. ||x - y||_1 = ||x - z||_1 + ||z - y||_1, exactly
// when every coordinate of z is copied from x or from y. The metric segment of
// x and y therefore has 2^k points, k being the number of coordinates in which
// x and y differ. Degenerate triples (z = x, z = y, x = y) go through the same
// equalities and need no special casing.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "ultranorm/error.hpp"
#include "ultranorm/norm.hpp"
#include "ultranorm/vector.hpp"

namespace ultranorm {

inline constexpr std::size_t kDefaultSegmentCap = std::size_t{1} << 16;

inline bool is_metrically_between(const Vector& x, const Vector& z, const Vector& y) {
  Vector::check_compatible(x, z);
  Vector::check_compatible(x, y);
  const auto one = NormSpec::one_norm();
  return distance(x, y, one) == distance(x, z, one) + distance(y, z, one);
}

inline bool coordinate_between(const Vector& x, const Vector& z, const Vector& y) {
  Vector::check_compatible(x, z);
  Vector::check_compatible(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(z[i] == x[i]) && !(z[i] == y[i])) return false;
  }
  return true;
}

struct SegmentEnumeration {
  Vector x;
  Vector y;
  std::size_t k = 0;
  std::vector<Vector> points;
};

/// Positions where x and y differ, in increasing order.
inline std::vector<std::size_t> differing_coordinates(const Vector& x, const Vector& y) {
  Vector::check_compatible(x, y);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] == y[i])) out.push_back(i);
  }
  return out;
}

/// All 2^k points of the metric segment [x, y], in binary-counter order:
/// bit j of the index selects y at the j-th differing position. The first
/// point is x and the last is y.
inline SegmentEnumeration segment(const Vector& x, const Vector& y, std::size_t cap = kDefaultSegmentCap) {
  const auto positions = differing_coordinates(x, y);
  const std::size_t k = positions.size();
  if (k >= 63 || (std::uint64_t{1} << k) > cap) {
    throw EnumerationTooLarge(k, "segment has 2^" + std::to_string(k) + " points, cap is " + std::to_string(cap));
  }
  SegmentEnumeration out{x, y, k, {}};
  const std::uint64_t count = std::uint64_t{1} << k;
  out.points.reserve(count);
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    std::vector<Scalar> coords = x.coords();
    for (std::size_t j = 0; j < k; ++j) {
      if (mask >> j & 1) coords[positions[j]] = y[positions[j]];
    }
    out.points.emplace_back(x.field(), std::move(coords));
  }
  return out;
}

struct TwoPointMinimum {
  Magnitude minimum;
  SegmentEnumeration witnesses;
};

/// Minimises f(x) = ||c - x||_1 + ||x - a||_1. The minimum is ||c - a||_1 and
/// it is attained exactly on the metric segment [a, c].
inline TwoPointMinimum minimize_two_point(const Vector& a, const Vector& c, std::size_t cap = kDefaultSegmentCap) {
  auto witnesses = segment(a, c, cap);
  return {distance(c, a, NormSpec::one_norm()), std::move(witnesses)};
}

/// Points b of the plane segment [a, c] with ||c - b||_1 = d1 and
/// ||b - a||_1 = d2. The answer is unique whenever |a_1 - c_1| != |a_2 - c_2|.
inline std::vector<Vector> uniqueness_check(const Vector& a, const Vector& c, const Magnitude& d1, const Magnitude& d2) {
  Vector::check_compatible(a, c);
  if (a.size() != 2) throw DimensionMismatch("uniqueness check is defined on the plane, got dimension " + std::to_string(a.size()));
  const auto one = NormSpec::one_norm();
  const auto total = distance(c, a, one);
  if (d1 + d2 != total) {
    throw PreconditionViolation("d1 + d2 = " + (d1 + d2).to_string() + " but ||c - a||_1 = " + total.to_string());
  }
  std::vector<Vector> out;
  for (auto& b : segment(a, c).points) {
    if (distance(c, b, one) == d1 && distance(b, a, one) == d2) out.push_back(std::move(b));
  }
  return out;
}

}  // namespace ultranorm
