#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "ultranorm/isometry.hpp"
#include "ultranorm/oracle.hpp"
#include "ultranorm/random.hpp"

using namespace ultranorm;

namespace {

const FieldSpec Q3 = FieldSpec::padic(3);
const FieldSpec F2 = FieldSpec::prime_field(2);
const FieldSpec F5 = FieldSpec::prime_field(5);

Vector vec(const FieldSpec& f, const char* text) { return Vector::parse(f, text); }

AxialIsometry swap2(const FieldSpec& f) {
  return AxialIsometry({1, 0}, {ScalarIsometry::identity(f), ScalarIsometry::identity(f)}, Vector::zero(f, 2));
}

void expect_same_action(const AxialIsometry& a, const AxialIsometry& b, const std::vector<Vector>& points) {
  for (const auto& x : points) EXPECT_EQ(a(x), b(x)) << x.to_string();
}

}  // namespace

TEST(ScalarIsometryTest, Construction) {
  EXPECT_THROW(ScalarIsometry::affine(Scalar(Q3, 3), Scalar(Q3, 0)), InvalidArgument);
  EXPECT_NO_THROW(ScalarIsometry::affine(Scalar(Q3, 2), Scalar(Q3, 1)));
  EXPECT_THROW(ScalarIsometry::table(F5, {0, 1, 2, 3}), InvalidArgument);
  EXPECT_THROW(ScalarIsometry::table(F5, {0, 1, 2, 3, 3}), InvalidArgument);
  EXPECT_THROW(ScalarIsometry::table(Q3, {0, 1, 2}), InvalidArgument);
  EXPECT_THROW(ScalarIsometry::lookup(Q3, {{Scalar(Q3, 0), Scalar(Q3, 0)}, {Scalar(Q3, 1), Scalar(Q3, 3)}}), InvalidArgument);
}

TEST(ScalarIsometryTest, TablesPreserveTheTrivialMetricExhaustively) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto tau = random_scalar_isometry(F5, rng);
    for (std::uint32_t a = 0; a < 5; ++a) {
      for (std::uint32_t b = 0; b < 5; ++b) {
        const Scalar sa(F5, a), sb(F5, b);
        EXPECT_EQ(valuation(tau(sa) - tau(sb)), valuation(sa - sb));
      }
    }
  }
}

TEST(ScalarIsometryTest, ComposeAndInvert) {
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = random_scalar_isometry(Q3, rng);
    const auto g = random_scalar_isometry(Q3, rng);
    for (int k = 0; k < 5; ++k) {
      const auto a = random_scalar(Q3, rng);
      EXPECT_EQ(compose(f, g)(a), f(g(a)));
      EXPECT_EQ(invert(f)(f(a)), a);
    }
  }
  const auto t = ScalarIsometry::table(F5, {3, 0, 4, 1, 2});
  const auto a = ScalarIsometry::affine(Scalar(F5, 2), Scalar(F5, 1));
  for (std::uint32_t x = 0; x < 5; ++x) {
    EXPECT_EQ(compose(t, a)(Scalar(F5, x)), t(a(Scalar(F5, x))));
    EXPECT_EQ(compose(invert(t), t)(Scalar(F5, x)), Scalar(F5, x));
  }
}

TEST(ScalarIsometryTest, LookupOutsideDomainThrows) {
  const auto l = ScalarIsometry::lookup(Q3, {{Scalar(Q3, 0), Scalar(Q3, 0)}, {Scalar(Q3, 1), Scalar(Q3, 2)}});
  EXPECT_EQ(l(Scalar(Q3, 1)), Scalar(Q3, 2));
  EXPECT_THROW(l(Scalar(Q3, 5)), OutsideDomain);
  EXPECT_EQ(invert(l)(Scalar(Q3, 2)), Scalar(Q3, 1));
}

TEST(AxialIsometryTest, Apply) {
  const auto id = AxialIsometry::identity(Q3, 2);
  EXPECT_EQ(id(vec(Q3, "3,5")), vec(Q3, "3,5"));
  EXPECT_TRUE(id.is_centred());

  EXPECT_EQ(swap2(Q3)(vec(Q3, "3,5")), vec(Q3, "5,3"));

  const AxialIsometry f({0, 1}, {ScalarIsometry::affine(Scalar(Q3, 2), Scalar(Q3, 1)), ScalarIsometry::identity(Q3)}, Vector::zero(Q3, 2));
  EXPECT_EQ(f(vec(Q3, "3,5")), vec(Q3, "7,5"));
  EXPECT_FALSE(f.is_centred());
  Rng rng(3);
  for (int k = 0; k < 50; ++k) {
    const auto x = random_vector(Q3, 2, rng);
    const auto y = random_vector(Q3, 2, rng);
    EXPECT_EQ(distance(f(x), f(y), NormSpec::one_norm()), distance(x, y, NormSpec::one_norm()));
  }
}

TEST(AxialIsometryTest, ConstructionChecks) {
  EXPECT_THROW(AxialIsometry({0, 0}, {ScalarIsometry::identity(Q3), ScalarIsometry::identity(Q3)}, Vector::zero(Q3, 2)), InvalidArgument);
  EXPECT_THROW(AxialIsometry({0}, {ScalarIsometry::identity(Q3)}, Vector::zero(Q3, 2)), DimensionMismatch);
  EXPECT_THROW(AxialIsometry::identity(Q3, 2)(vec(Q3, "1,2,3")), DimensionMismatch);
}

TEST(AxialIsometryTest, ComposeAndInvert) {
  const auto pts = enumerate_space(F5, 3, 1000);
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const auto f = random_axial_isometry(F5, 3, rng);
    const auto g = random_axial_isometry(F5, 3, rng);
    const auto fg = compose(f, g);
    for (const auto& x : pts) EXPECT_EQ(fg(x), f(g(x)));
    expect_same_action(compose(f, invert(f)), AxialIsometry::identity(F5, 3), pts);
    expect_same_action(compose(invert(f), f), AxialIsometry::identity(F5, 3), pts);
  }
  expect_same_action(compose(swap2(F5), swap2(F5)), AxialIsometry::identity(F5, 2), enumerate_space(F5, 2, 100));
}

TEST(AxialIsometryTest, ComposeAndInvertOverQ3) {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = random_axial_isometry(Q3, 3, rng);
    const auto g = random_axial_isometry(Q3, 3, rng);
    for (int k = 0; k < 10; ++k) {
      const auto x = random_vector(Q3, 3, rng);
      EXPECT_EQ(compose(f, g)(x), f(g(x)));
      EXPECT_EQ(invert(f)(f(x)), x);
    }
  }
}

TEST(ProbeMapTest, Invariants) {
  EXPECT_THROW(ProbeMap({vec(Q3, "1,0")}, {}, false), InvalidArgument);
  EXPECT_THROW(ProbeMap({vec(Q3, "1,0"), vec(Q3, "1,0")}, {vec(Q3, "1,0"), vec(Q3, "0,1")}, false), InvalidArgument);
  EXPECT_THROW(ProbeMap({vec(Q3, "1,0")}, {vec(Q3, "1,0,0")}, false), DimensionMismatch);
  const ProbeMap m({vec(Q3, "1,0")}, {vec(Q3, "2,0")}, false);
  EXPECT_EQ(*m.image_of(vec(Q3, "1,0")), vec(Q3, "2,0"));
  EXPECT_FALSE(m.image_of(vec(Q3, "0,0")).has_value());
}

TEST(VerifyIsometryTest, AxialOnRandomPoints) {
  Rng rng(6);
  const auto iso = random_axial_isometry(Q3, 3, rng);
  std::vector<Vector> pts;
  std::set<Vector> seen;
  while (pts.size() < 20) {
    auto v = random_vector(Q3, 3, rng);
    if (seen.insert(v).second) pts.push_back(std::move(v));
  }
  const auto report = verify_isometry(ProbeMap::tabulate(iso, pts, false), NormSpec::one_norm());
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.pairs_checked, 190u);
  EXPECT_FALSE(report.surjective.has_value());
}

TEST(VerifyIsometryTest, SwapOnF2SquaredIsComplete) {
  const auto report = verify_isometry(ProbeMap::tabulate(swap2(F2), enumerate_space(F2, 2, 4), true), NormSpec::one_norm());
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.surjective, true);
}

TEST(VerifyIsometryTest, ReportsWitnessPair) {
  const ProbeMap m({vec(F2, "0,0"), vec(F2, "0,1"), vec(F2, "1,0"), vec(F2, "1,1")},
                   {vec(F2, "0,0"), vec(F2, "0,1"), vec(F2, "1,1"), vec(F2, "1,1")}, true);
  const auto report = verify_isometry(m, NormSpec::one_norm());
  EXPECT_FALSE(report.ok());
  EXPECT_FALSE(report.injective);
  EXPECT_EQ(report.surjective, false);
  ASSERT_FALSE(report.violations.empty());
  bool found = false;
  for (const auto& v : report.violations) {
    if (v.a == vec(F2, "0,0") && v.b == vec(F2, "1,0")) {
      found = true;
      EXPECT_EQ(v.domain_distance, Magnitude(1));
      EXPECT_EQ(v.image_distance, Magnitude(2));
    }
  }
  EXPECT_TRUE(found);
}

TEST(DecomposeTest, IdentityMap) {
  const auto pts = enumerate_space(F5, 2, 100);
  const auto iso = decompose(ProbeMap(pts, pts, true));
  EXPECT_TRUE(iso.translation().is_zero());
  EXPECT_EQ(iso.sigma(), (std::vector<std::size_t>{0, 1}));
  for (const auto& tau : iso.taus()) EXPECT_EQ(tau.as_table(), (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
}

TEST(DecomposeTest, EveryIsometryOfF2SquaredRoundTrips) {
  const auto pts = enumerate_space(F2, 2, 4);
  const auto all = enumerate_isometries(2, 2, NormSpec::one_norm(), false);
  ASSERT_EQ(all.maps.size(), 8u);
  for (const auto& map : all.maps) {
    std::vector<Vector> images;
    for (auto i : map) images.push_back(pts[i]);
    const auto iso = decompose(ProbeMap(pts, images, true));
    for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_EQ(iso(pts[i]), images[i]);
  }
}

TEST(DecomposeTest, SigmaConvention) {
  // Output 0 reads input 1: the input axis e_1 lands on output axis e_0.
  const AxialIsometry f({1, 0, 2}, {ScalarIsometry::table(F5, {0, 2, 4, 1, 3}), ScalarIsometry::identity(F5), ScalarIsometry::identity(F5)},
                        Vector::zero(F5, 3));
  EXPECT_EQ(f(vec(F5, "0,1,0")), vec(F5, "2,0,0"));
  const auto back = decompose(ProbeMap::tabulate(f, enumerate_space(F5, 3, 1000), true));
  EXPECT_EQ(back.sigma(), f.sigma());
  EXPECT_EQ(back.taus()[0].as_table(), (std::vector<std::uint32_t>{0, 2, 4, 1, 3}));
}

TEST(DecomposeTest, RandomPadicRoundTripUsesAffineFits) {
  Rng rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto iso = random_axial_isometry(Q3, 3, rng);
    const auto grid = probe_grid(Q3, 3, 48, 5, rng);
    const auto m = ProbeMap::tabulate(iso, grid, false);
    const auto back = decompose(m);
    for (const auto& tau : back.taus()) EXPECT_TRUE(tau.is_affine());
    for (std::size_t i = 0; i < m.size(); ++i) EXPECT_EQ(back(m.domain()[i]), m.images()[i]);
    for (int k = 0; k < 10; ++k) {
      const auto x = random_vector(Q3, 3, rng);
      EXPECT_EQ(back(x), iso(x));
    }
  }
}

TEST(DecomposeTest, NonAffineAxisFallsBackToLookup) {
  // tau swaps 1 and 2, fixes 0 and sends 4 to 5: an isometry on these probes, not affine.
  const auto tau = ScalarIsometry::lookup(Q3, {{Scalar(Q3, 0), Scalar(Q3, 0)}, {Scalar(Q3, 1), Scalar(Q3, 2)}, {Scalar(Q3, 2), Scalar(Q3, 1)}, {Scalar(Q3, 4), Scalar(Q3, 5)}});
  const AxialIsometry f({0, 1}, {tau, ScalarIsometry::identity(Q3)}, vec(Q3, "1/3,5"));
  const std::vector<Vector> grid{vec(Q3, "0,0"), vec(Q3, "1,0"), vec(Q3, "2,0"), vec(Q3, "4,0"), vec(Q3, "0,1"), vec(Q3, "0,9"), vec(Q3, "2,9"), vec(Q3, "4,1")};
  const auto back = decompose(ProbeMap::tabulate(f, grid, false));
  EXPECT_TRUE(back.taus()[0].is_lookup());
  EXPECT_TRUE(back.taus()[1].is_affine());
  for (const auto& x : grid) EXPECT_EQ(back(x), f(x));
}

TEST(DecomposeTest, UnderDeterminedInputs) {
  EXPECT_THROW(decompose(ProbeMap({vec(Q3, "1,0")}, {vec(Q3, "1,0")}, false)), UnderDetermined);
  try {
    decompose(ProbeMap({vec(Q3, "0,0"), vec(Q3, "1,0")}, {vec(Q3, "0,0"), vec(Q3, "1,0")}, false));
    FAIL();
  } catch (const UnderDetermined& e) {
    EXPECT_EQ(e.axis(), std::optional<std::size_t>(1));
  }
  // A prime field axis must be probed in full.
  EXPECT_THROW(decompose(ProbeMap({vec(F5, "0,0"), vec(F5, "1,0"), vec(F5, "0,1")}, {vec(F5, "0,0"), vec(F5, "1,0"), vec(F5, "0,1")}, false)),
               UnderDetermined);
}

TEST(DecomposeTest, RejectsNonAxialMaps) {
  // (1,0) is sent off the axes.
  const ProbeMap m({vec(Q3, "0,0"), vec(Q3, "1,0"), vec(Q3, "0,1")}, {vec(Q3, "0,0"), vec(Q3, "1,1"), vec(Q3, "0,1")}, false);
  try {
    decompose(m);
    FAIL();
  } catch (const DecompositionFailure& e) {
    EXPECT_EQ(e.probe(), vec(Q3, "1,0"));
    EXPECT_EQ(e.image(), vec(Q3, "1,1"));
  }
  // Axes fine, off-axis point wrong.
  const ProbeMap bad({vec(Q3, "0,0"), vec(Q3, "1,0"), vec(Q3, "0,1"), vec(Q3, "1,1")}, {vec(Q3, "0,0"), vec(Q3, "1,0"), vec(Q3, "0,1"), vec(Q3, "2,1")}, false);
  EXPECT_THROW(decompose(bad), DecompositionFailure);
}

TEST(NonAxialSupIsometryTest, MovesExactlyTheSphereOfRadiusThree) {
  Rng rng(8);
  const auto v0 = vec(Q3, "1/3,0");
  const auto e0 = vec(Q3, "1,0");
  auto grid = probe_grid(Q3, 2, 48, 5, rng);
  for (const char* s : {"1/3,0", "0,1/3", "1,0", "0,1", "1/3,1", "1,1/3"}) {
    const auto v = vec(Q3, s);
    if (std::find(grid.begin(), grid.end(), v) == grid.end()) grid.push_back(v);
  }
  const auto m = make_remark2_counterexample(Q3, grid, v0, e0);
  std::size_t moved = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const bool on_sphere = norm(m.domain()[i], NormSpec::sup_norm()) == Magnitude(3);
    EXPECT_EQ(m.images()[i] == m.domain()[i] + e0, on_sphere);
    EXPECT_EQ(m.images()[i] == m.domain()[i], !on_sphere);
    moved += on_sphere;
  }
  EXPECT_GT(moved, 0u);
  EXPECT_TRUE(verify_isometry(m, NormSpec::sup_norm()).ok());
  try {
    decompose(m);
    FAIL();
  } catch (const DecompositionFailure& e) {
    EXPECT_TRUE(m.image_of(e.probe()).has_value());
  }
}

TEST(NonAxialSupIsometryTest, IdentityWithoutProbesOnTheSphere) {
  const std::vector<Vector> grid{vec(Q3, "0,0"), vec(Q3, "1,0"), vec(Q3, "0,9"), vec(Q3, "1,1")};
  const auto m = make_remark2_counterexample(Q3, grid, vec(Q3, "1/3,0"), vec(Q3, "1,0"));
  EXPECT_EQ(m.images(), m.domain());
}

TEST(NonAxialSupIsometryTest, HypothesisChecks) {
  const auto F7 = FieldSpec::prime_field(7);
  EXPECT_THROW(make_remark2_counterexample(F7, {vec(F7, "0,0")}, vec(F7, "1,0"), vec(F7, "0,1")), HypothesisViolation);
  EXPECT_THROW(make_remark2_counterexample(Q3, {vec(Q3, "0,0")}, vec(Q3, "1,0"), vec(Q3, "1/3,0")), HypothesisViolation);
  EXPECT_THROW(make_remark2_counterexample(Q3, {vec(Q3, "0,0")}, vec(Q3, "1/3,0"), vec(Q3, "1,0"), NormSpec::one_norm()), InvalidArgument);
}
