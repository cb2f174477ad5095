#include <gtest/gtest.h>

#include "naive.hpp"
#include "ultranorm/norm.hpp"
#include "ultranorm/random.hpp"

using namespace ultranorm;

namespace {

const FieldSpec Q3 = FieldSpec::padic(3);
const FieldSpec Q5 = FieldSpec::padic(5);
const FieldSpec F2 = FieldSpec::prime_field(2);
const FieldSpec F3 = FieldSpec::prime_field(3);

Magnitude mag(long long num, long long den = 1) { return Magnitude(Rational(num, den)); }
Vector vec(const FieldSpec& f, const char* text) { return Vector::parse(f, text); }

}  // namespace

TEST(VectorTest, ParseAndPrint) {
  const auto v = vec(Q3, "9, 1/3");
  ASSERT_EQ(v.size(), 2u);
  EXPECT_EQ(v.to_string(), "9,1/3");
  EXPECT_EQ(v[1], Scalar(Q3, 1, 3));
  EXPECT_THROW(vec(Q3, "9,,1"), ParseError);
  EXPECT_THROW(Vector(Q3, {}), InvalidArgument);
  EXPECT_THROW(Vector(Q3, {Scalar(F3, 1)}), FieldMismatch);
}

TEST(VectorTest, RejectsMixedDimensions) {
  EXPECT_THROW(vec(Q3, "1,2") + vec(Q3, "1,2,3"), DimensionMismatch);
  EXPECT_THROW(vec(Q3, "1,2") - vec(Q5, "1,2"), FieldMismatch);
}

TEST(VectorTest, EnumerateSpaceIsLexicographic) {
  const auto pts = enumerate_space(F3, 2, 100);
  ASSERT_EQ(pts.size(), 9u);
  EXPECT_EQ(pts[0].to_string(), "0,0");
  EXPECT_EQ(pts[1].to_string(), "0,1");
  EXPECT_EQ(pts[3].to_string(), "1,0");
  EXPECT_EQ(pts[8].to_string(), "2,2");
  EXPECT_THROW(enumerate_space(F3, 5, 100), EnumerationTooLarge);
  EXPECT_THROW(enumerate_space(Q3, 1, 100), InvalidArgument);
}

TEST(NormTest, OneAndSupExamples) {
  // |9|_3 = 1/9 and |1/3|_3 = 3, checked against the machine-integer reference.
  const auto a = naive::padic_abs(9, 1, 3);
  const auto b = naive::padic_abs(1, 3, 3);
  const auto sum = naive::add(a, b);
  EXPECT_EQ(sum, (std::pair<std::int64_t, std::int64_t>{28, 9}));

  EXPECT_EQ(norm(vec(Q3, "9,1/3"), NormSpec::one_norm()), mag(28, 9));
  EXPECT_EQ(norm(vec(Q3, "9,1/3"), NormSpec::sup_norm()), mag(3));
}

TEST(NormTest, ZeroVectorHasZeroNorm) {
  for (const auto& spec : {NormSpec::one_norm(), NormSpec::sup_norm(), NormSpec::weighted_sup({mag(2), mag(1, 7)})}) {
    EXPECT_TRUE(norm(Vector::zero(Q3, 2), spec).is_zero());
    EXPECT_TRUE(norm(Vector::zero(F3, 2), spec).is_zero());
  }
}

TEST(NormTest, HammingWeightUnderTrivialValuation) {
  EXPECT_EQ(norm(vec(F2, "1,1"), NormSpec::one_norm()), mag(2));
  EXPECT_EQ(distance(vec(F3, "0,1,2"), vec(F3, "0,2,2"), NormSpec::one_norm()), mag(1));
}

TEST(NormTest, AgreesWithHammingOnAllOfF3Cubed) {
  const auto pts = enumerate_space(F3, 3, 100);
  const auto ref = naive::space(3, 3);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) {
      EXPECT_EQ(distance(pts[i], pts[j], NormSpec::one_norm()), Magnitude(naive::hamming(ref[i], ref[j])));
    }
  }
}

TEST(NormTest, WeightedSup) {
  // Weights outside the value group of Q_3 are allowed.
  const auto spec = NormSpec::weighted_sup({mag(2), mag(1, 5)});
  EXPECT_EQ(norm(vec(Q3, "9,1/3"), spec), mag(3, 5));
  EXPECT_EQ(norm(vec(Q3, "1/9,1/3"), spec), mag(18));
  EXPECT_THROW(norm(vec(Q3, "1,1,1"), spec), DimensionMismatch);
  EXPECT_THROW(NormSpec::weighted_sup({mag(1), Magnitude::zero()}), InvalidArgument);
}

TEST(NormTest, ParseNames) {
  EXPECT_EQ(NormSpec::parse("one"), NormSpec::one_norm());
  EXPECT_EQ(NormSpec::parse("sup"), NormSpec::sup_norm());
  EXPECT_EQ(NormSpec::parse("wsup", "1,1/3").weights().size(), 2u);
  EXPECT_THROW(NormSpec::parse("two"), ParseError);
  EXPECT_THROW(NormSpec::parse("wsup", "1,0"), ParseError);
}

TEST(DistanceTest, Examples) {
  EXPECT_EQ(distance(vec(Q3, "1,0"), vec(Q3, "0,1"), NormSpec::one_norm()), mag(2));
  const auto x = vec(Q3, "7/2,-9");
  EXPECT_TRUE(distance(x, x, NormSpec::one_norm()).is_zero());
}

TEST(NormAxiomsTest, OneNormOverQ5) {
  Rng rng(5);
  const auto samples = random_norm_samples(Q5, 3, 200, rng);
  const auto report = check_norm_axioms(NormSpec::one_norm(), Q5, samples);
  EXPECT_TRUE(report.ok());
  EXPECT_EQ(report.samples, 200u);
}

TEST(NormAxiomsTest, SupNormStrongTriangle) {
  Rng rng(6);
  for (const auto& field : {Q3, Q5, F3}) {
    const auto samples = random_norm_samples(field, 3, 200, rng);
    const auto report = check_norm_axioms(NormSpec::sup_norm(), field, samples);
    EXPECT_TRUE(report.ok()) << field.to_string();
  }
}

TEST(NormAxiomsTest, HomogeneityWithZeroScalar) {
  const std::vector<NormSample> samples{{vec(Q3, "9,1/3"), vec(Q3, "1,1"), Scalar::zero(Q3)}};
  EXPECT_TRUE(check_norm_axioms(NormSpec::one_norm(), Q3, samples).ok());
  EXPECT_TRUE(norm(Scalar::zero(Q3) * vec(Q3, "9,1/3"), NormSpec::one_norm()).is_zero());
}

TEST(NormAxiomsTest, OneNormIsNotUltrametric) {
  const auto x = vec(Q3, "1,0");
  const auto y = vec(Q3, "0,1");
  const auto one = NormSpec::one_norm();
  EXPECT_GT(norm(x + y, one), max(norm(x, one), norm(y, one)));
}

TEST(NormAxiomsTest, AbsolutenessSamplesAreExercised) {
  Rng rng(8);
  const auto samples = random_norm_samples(Q3, 4, 50, rng);
  std::size_t matching = 0;
  for (const auto& s : samples) matching += same_coordinate_valuations(s.x, s.y) ? 1 : 0;
  EXPECT_GE(matching, 25u);
}
