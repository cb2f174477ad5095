#pragma once

// Seeded generators for scalars, vectors, isometries and probe sets. Used by
// the property tests, the acceptance suite and the CLI's `check-axioms`.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "ultranorm/field.hpp"
#include "ultranorm/isometry.hpp"
#include "ultranorm/norm.hpp"
#include "ultranorm/valuation.hpp"
#include "ultranorm/vector.hpp"

namespace ultranorm {

using Rng = std::mt19937_64;

/// Rational scalars take the form +-p^e * a / b with |e| <= 4 and small a, b,
/// so valuations spread over several powers of p. Zero comes up about one
/// time in eight.
inline Scalar random_scalar(const FieldSpec& field, Rng& rng) {
  if (field.is_finite()) {
    return Scalar(field, static_cast<long long>(std::uniform_int_distribution<std::uint32_t>(0, field.prime() - 1)(rng)));
  }
  if (std::uniform_int_distribution<int>(0, 7)(rng) == 0) return Scalar::zero(field);
  std::uniform_int_distribution<long long> small(1, 40);
  Rational value(small(rng), small(rng));
  if (rng() & 1) value = -value;
  const int exponent = std::uniform_int_distribution<int>(-4, 4)(rng);
  const Integer base = field.kind() == FieldKind::padic ? Integer(field.prime()) : Integer(2);
  const Integer power = boost::multiprecision::pow(base, static_cast<unsigned>(std::abs(exponent)));
  value = exponent >= 0 ? value * Rational(power) : value / Rational(power);
  return Scalar(field, value);
}

/// A scalar with |u| = 1.
inline Scalar random_unit(const FieldSpec& field, Rng& rng) {
  if (field.is_finite()) {
    return Scalar(field, static_cast<long long>(std::uniform_int_distribution<std::uint32_t>(1, field.prime() - 1)(rng)));
  }
  std::uniform_int_distribution<long long> small(1, 60);
  auto draw = [&] {
    long long v;
    do v = small(rng);
    while (field.kind() == FieldKind::padic && v % field.prime() == 0);
    return v;
  };
  const long long num = draw();
  const long long den = draw();
  return Scalar(field, (rng() & 1) ? -num : num, den);
}

inline Vector random_vector(const FieldSpec& field, std::size_t n, Rng& rng) {
  std::vector<Scalar> coords;
  coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) coords.push_back(random_scalar(field, rng));
  return Vector(field, std::move(coords));
}

/// Coordinate-wise unit multiple of x: same coordinate valuations.
inline Vector random_unit_multiple(const Vector& x, Rng& rng) {
  std::vector<Scalar> coords;
  coords.reserve(x.size());
  for (const auto& c : x) coords.push_back(random_unit(x.field(), rng) * c);
  return Vector(x.field(), std::move(coords));
}

inline std::vector<ScalarPair> random_scalar_pairs(const FieldSpec& field, std::size_t count, Rng& rng) {
  std::vector<ScalarPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.emplace_back(random_scalar(field, rng), random_scalar(field, rng));
  return out;
}

/// Every other sample pairs x with a unit multiple of itself so that the
/// absoluteness check has something to bite on.
inline std::vector<NormSample> random_norm_samples(const FieldSpec& field, std::size_t n, std::size_t count, Rng& rng) {
  std::vector<NormSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto x = random_vector(field, n, rng);
    auto y = (i % 2) ? random_unit_multiple(x, rng) : random_vector(field, n, rng);
    out.push_back({std::move(x), std::move(y), random_scalar(field, rng)});
  }
  return out;
}

inline std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng) {
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::shuffle(sigma.begin(), sigma.end(), rng);
  return sigma;
}

/// Random permutation tables over prime fields; random affine maps u a + c
/// with |u| = 1 over the rationals.
inline ScalarIsometry random_scalar_isometry(const FieldSpec& field, Rng& rng) {
  if (field.is_finite()) {
    const auto perm = random_permutation(field.prime(), rng);
    return ScalarIsometry::table(field, std::vector<std::uint32_t>(perm.begin(), perm.end()));
  }
  return ScalarIsometry::affine(random_unit(field, rng), random_scalar(field, rng));
}

inline AxialIsometry random_axial_isometry(const FieldSpec& field, std::size_t n, Rng& rng) {
  std::vector<ScalarIsometry> taus;
  taus.reserve(n);
  for (std::size_t i = 0; i < n; ++i) taus.push_back(random_scalar_isometry(field, rng));
  return AxialIsometry(random_permutation(n, rng), std::move(taus), random_vector(field, n, rng));
}

/// `count` distinct points of K^n: the origin, `per_axis` nonzero points on
/// each axis, then random points whose coordinates reuse the axis values
/// (zero included). Over a prime field the axis values are all of F_q^*.
inline std::vector<Vector> probe_grid(const FieldSpec& field, std::size_t n, std::size_t count, std::size_t per_axis, Rng& rng) {
  std::vector<std::vector<Scalar>> values(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::set<Scalar> picked;
    if (field.is_finite()) {
      for (std::uint32_t a = 1; a < field.prime(); ++a) picked.insert(Scalar(field, static_cast<long long>(a)));
    } else {
      while (picked.size() < per_axis) {
        auto s = random_scalar(field, rng);
        if (!s.is_zero()) picked.insert(std::move(s));
      }
    }
    values[i].assign(picked.begin(), picked.end());
  }

  std::vector<Vector> out;
  std::set<Vector> seen;
  auto push = [&](Vector v) {
    if (out.size() < count && seen.insert(v).second) out.push_back(std::move(v));
  };
  push(Vector::zero(field, n));
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& s : values[i]) push(Vector::on_axis(field, n, i, s));
  }
  std::size_t attempts = 0;
  while (out.size() < count && attempts++ < 100 * count) {
    std::vector<Scalar> coords;
    for (std::size_t i = 0; i < n; ++i) {
      const auto pick = std::uniform_int_distribution<std::size_t>(0, values[i].size())(rng);
      coords.push_back(pick == values[i].size() ? Scalar::zero(field) : values[i][pick]);
    }
    push(Vector(field, std::move(coords)));
  }
  return out;
}

}  // namespace ultranorm
