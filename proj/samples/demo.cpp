// Walks through the library on small inputs.
#include <iostream>

#include "ultranorm/ultranorm.hpp"

using namespace ultranorm;

int main() {
  const auto Q3 = FieldSpec::padic(3);
  const auto v = Vector::parse(Q3, "9,1/3");
  std::cout << "||(" << v.to_string() << ")||_1 = " << norm(v, NormSpec::one_norm()).to_string() << "\n";
  std::cout << "||(" << v.to_string() << ")||_sup = " << norm(v, NormSpec::sup_norm()).to_string() << "\n";

  const auto a = Vector::zero(Q3, 2);
  const auto best = minimize_two_point(a, v);
  std::cout << "min_x ||c - x|| + ||x - a|| = " << best.minimum.to_string() << ", attained at";
  for (const auto& p : best.witnesses.points) std::cout << " (" << p.to_string() << ")";
  std::cout << "\n";

  const AxialIsometry f({1, 0}, {ScalarIsometry::affine(Scalar(Q3, 2), Scalar(Q3, 1)), ScalarIsometry::identity(Q3)}, Vector::parse(Q3, "0,1/9"));
  Rng rng(1);
  const auto probes = ProbeMap::tabulate(f, probe_grid(Q3, 2, 24, 4, rng), false);
  const auto back = decompose(probes);
  std::cout << "decompose recovered: " << isometry_to_json(back).dump() << "\n";

  const auto counts = enumerate_isometries(3, 2, NormSpec::one_norm(), false);
  std::cout << "isometries of F_3^2 under ||.||_1: " << counts.isometry_count << " (formula " << counts.formula().value_or(0) << ")\n";
  return counts.isometry_count == counts.formula() ? 0 : 1;
}
