#pragma once

// Norms on K^n: the taxicab norm ||.||_1, the sup-norm ||.||_inf and the
// weighted sup-norm max_i w_i |x_i|.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ultranorm/field.hpp"
#include "ultranorm/report.hpp"
#include "ultranorm/vector.hpp"

namespace ultranorm {

enum class NormKind { one, sup, weighted_sup };

class NormSpec {
 public:
  static NormSpec one_norm() { return NormSpec(NormKind::one, {}); }
  static NormSpec sup_norm() { return NormSpec(NormKind::sup, {}); }

  /// Weights may be any positive rationals, including values outside |K*|.
  static NormSpec weighted_sup(std::vector<Magnitude> weights) {
    if (weights.empty()) throw InvalidArgument("weighted sup-norm needs at least one weight");
    for (const auto& w : weights) {
      if (w.is_zero()) throw InvalidArgument("weights must be strictly positive");
    }
    return NormSpec(NormKind::weighted_sup, std::move(weights));
  }

  /// "one", "sup", or "wsup" with comma-separated weights.
  static NormSpec parse(std::string_view kind, std::string_view weights = {}) {
    if (kind == "one") return one_norm();
    if (kind == "sup") return sup_norm();
    if (kind == "wsup") {
      std::vector<Magnitude> parsed;
      std::size_t start = 0;
      while (true) {
        const auto comma = weights.find(',', start);
        parsed.push_back(Magnitude::parse(weights.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
      try {
        return weighted_sup(std::move(parsed));
      } catch (const InvalidArgument& e) {
        throw ParseError(std::string(weights), e.what());
      }
    }
    throw ParseError(std::string(kind), "unknown norm");
  }

  NormKind kind() const noexcept { return kind_; }
  const std::vector<Magnitude>& weights() const noexcept { return weights_; }
  bool is_ultrametric() const noexcept { return kind_ != NormKind::one; }

  std::string name() const {
    switch (kind_) {
      case NormKind::one: return "one";
      case NormKind::sup: return "sup";
      case NormKind::weighted_sup: return "wsup";
    }
    return {};
  }

  friend bool operator==(const NormSpec&, const NormSpec&) = default;

 private:
  NormSpec(NormKind kind, std::vector<Magnitude> weights) : kind_(kind), weights_(std::move(weights)) {}

  NormKind kind_;
  std::vector<Magnitude> weights_;
};

inline Magnitude norm(const Vector& v, const NormSpec& spec) {
  if (spec.kind() == NormKind::weighted_sup && spec.weights().size() != v.size()) {
    throw DimensionMismatch(std::to_string(spec.weights().size()) + " weights for a vector of dimension " + std::to_string(v.size()));
  }
  Magnitude result;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto value = valuation(v[i]);
    switch (spec.kind()) {
      case NormKind::one: result += value; break;
      case NormKind::sup: result = max(result, value); break;
      case NormKind::weighted_sup: result = max(result, spec.weights()[i] * value); break;
    }
  }
  return result;
}

inline Magnitude distance(const Vector& x, const Vector& y, const NormSpec& spec) { return norm(x - y, spec); }

/// One sample for check_norm_axioms: a pair of vectors and a scalar.
struct NormSample {
  Vector x;
  Vector y;
  Scalar lambda;
};

/// True when |x_i| = |y_i| for every coordinate.
inline bool same_coordinate_valuations(const Vector& x, const Vector& y) {
  Vector::check_compatible(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (valuation(x[i]) != valuation(y[i])) return false;
  }
  return true;
}

/// Definiteness, homogeneity and the triangle inequality on every sample;
/// the strong triangle inequality for sup variants; absoluteness on pairs
/// whose coordinate valuations agree.
inline AxiomReport check_norm_axioms(const NormSpec& spec, const FieldSpec& field, std::span<const NormSample> samples) {
  AxiomReport report;
  for (const auto& s : samples) {
    if (!(s.x.field() == field) || !(s.lambda.field() == field)) throw FieldMismatch("sample is not over " + field.to_string());
    Vector::check_compatible(s.x, s.y);
    ++report.samples;
    const auto witness = [&] {
      return "x=(" + s.x.to_string() + ") y=(" + s.y.to_string() + ") lambda=" + s.lambda.to_string();
    };
    const auto nx = norm(s.x, spec);
    const auto ny = norm(s.y, spec);
    const auto nsum = norm(s.x + s.y, spec);

    report.expect(nx.is_zero() == s.x.is_zero(), "definiteness", witness);
    report.expect(ny.is_zero() == s.y.is_zero(), "definiteness", witness);
    report.expect(norm(s.lambda * s.x, spec) == valuation(s.lambda) * nx, "homogeneity", witness);
    report.expect(nsum <= nx + ny, "triangle", witness);
    if (spec.is_ultrametric()) report.expect(nsum <= max(nx, ny), "strong-triangle", witness);
    if (same_coordinate_valuations(s.x, s.y)) report.expect(nx == ny, "absoluteness", witness);
  }
  return report;
}

}  // namespace ultranorm
