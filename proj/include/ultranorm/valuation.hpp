#pragma once

#include <span>
#include <utility>

#include "ultranorm/field.hpp"
#include "ultranorm/report.hpp"

namespace ultranorm {

using ScalarPair = std::pair<Scalar, Scalar>;

/// Checks, on every sample pair (a, b): |a| = 0 iff a = 0, |ab| = |a||b|,
/// |a + b| <= max(|a|, |b|), and equality there whenever |a| != |b|.
inline AxiomReport check_valuation_axioms(const FieldSpec& field, std::span<const ScalarPair> samples) {
  AxiomReport report;
  for (const auto& [a, b] : samples) {
    if (!(a.field() == field) || !(b.field() == field)) {
      throw FieldMismatch("sample pair is not over " + field.to_string());
    }
    ++report.samples;
    const auto va = valuation(a);
    const auto vb = valuation(b);
    const auto witness = [&] { return "a=" + a.to_string() + " b=" + b.to_string(); };

    report.expect(va.is_zero() == a.is_zero(), "definiteness", witness);
    report.expect(vb.is_zero() == b.is_zero(), "definiteness", witness);
    report.expect(valuation(a * b) == va * vb, "multiplicativity", witness);

    const auto vsum = valuation(a + b);
    report.expect(vsum <= va + vb, "triangle", witness);
    report.expect(vsum <= max(va, vb), "ultrametric", witness);
    if (va != vb) report.expect(vsum == max(va, vb), "isosceles", witness);
  }
  return report;
}

}  // namespace ultranorm
