#include <gtest/gtest.h>

#include "arclift/error.hpp"
#include "arclift/random.hpp"
#include "arclift/series.hpp"
#include "support.hpp"

using namespace arclift;
using arclift::testing::ser;

namespace {

const BaseRing kQ{Field::rational(), 40};
const BaseRing kF5{Field::prime(5), 40};

Series random_series(SeededDraw& draw, const BaseRing& ring, int prec) {
  std::vector<Scalar> coeffs;
  for (int k = 0; k < prec; ++k) coeffs.push_back(draw.scalar(ring.field));
  return Series(ring, coeffs, prec);
}

}  // namespace

TEST(Scalar, RationalsStayReduced) {
  Scalar q = Scalar::from_fraction(Field::rational(), 6, -4);
  EXPECT_EQ(q.to_string(), "-3/2");
  EXPECT_EQ(q.rational().get_den(), 2);
  EXPECT_THROW(Scalar::from_fraction(Field::rational(), 1, 0), Error);
}

TEST(Scalar, ResiduesStayCanonical) {
  Field f5 = Field::prime(5);
  EXPECT_EQ(Scalar::from_int(f5, -1).residue(), 4u);
  EXPECT_EQ(Scalar::from_int(f5, 2).inverse().residue(), 3u);
  EXPECT_EQ(Scalar::from_fraction(f5, 1, 2).residue(), 3u);
  EXPECT_THROW(Scalar::from_fraction(f5, 1, 5), Error);
  EXPECT_THROW(Field::prime(6), Error);
}

TEST(Scalar, FieldMismatchIsRejected) {
  Scalar a = Scalar::one(Field::rational());
  Scalar b = Scalar::one(Field::prime(5));
  try {
    a += b;
    FAIL() << "mixed fields accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldMismatch);
  }
}

TEST(Scalar, FieldAxiomsOnRandomTriples) {
  for (const Field& field : {Field::rational(), Field::prime(5), Field::prime(2147483647)}) {
    SeededDraw draw(11);
    for (int i = 0; i < 200; ++i) {
      Scalar a = draw.scalar(field), b = draw.scalar(field), c = draw.scalar(field);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a - a, Scalar::zero(field));
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), Scalar::one(field));
    }
  }
}

TEST(Series, Examples) {
  EXPECT_EQ((ser("x + x^2", kQ) + ser("1 - x", kQ)).to_string(false), "1 + x^2");
  EXPECT_EQ((ser("x", kQ) * ser("x", kQ)).to_string(false), "x^2");

  Series cube = ser("x^3 + O(x^9)", kQ);
  Series sq = cube * cube;
  EXPECT_EQ(sq.to_string(), "x^6 + O(x^12)");

  EXPECT_EQ(ser("x^2 + x^5", kQ).ord(), 2);
  Series zero = Series::zero(kQ, 12);
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(zero.ord(), 12);
  EXPECT_EQ(zero.to_string(), "O(x^12)");
  EXPECT_EQ(ser("2*x^3", kQ).ord(), 3);
}

TEST(Series, InverseOfUnits) {
  EXPECT_EQ(ser("1 - x + O(x^3)", kQ).inv_unit().to_string(), "1 + x + x^2 + O(x^3)");
  EXPECT_EQ(ser("2", kF5).inv_unit().to_string(false), "3");
  EXPECT_EQ(ser("2 + 4*x + O(x^2)", kQ).inv_unit().to_string(), "1/2 - x + O(x^2)");
  EXPECT_THROW(ser("x", kQ).inv_unit(), Error);
}

TEST(Series, ExactDivision) {
  EXPECT_EQ(ser("6*x^9", kQ).div_exact(ser("2*x^4", kQ)).to_string(false), "3*x^5");
  EXPECT_EQ(ser("x^2 + x^3", kQ).div_exact(ser("x^2", kQ)).to_string(false), "1 + x");
  try {
    ser("x", kQ).div_exact(ser("x^2", kQ));
    FAIL() << "x / x^2 accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDivisible);
  }
  try {
    ser("O(x^3)", kQ).div_exact(ser("x^3", kQ));
    FAIL() << "quotient with no known digits accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrecisionExhausted);
  }
}

TEST(Series, DivisionCostsTheDivisorOrder) {
  Series a = ser("x^9 + x^12 + O(x^32)", kQ);
  EXPECT_EQ(a.div_exact(ser("x^9", kQ)).prec(), 23);
}

TEST(Series, PrecisionNeverExceedsWorkingPrecision) {
  Series a = ser("1 + x", BaseRing{Field::rational(), 10});
  EXPECT_EQ(a.prec(), 10);
  EXPECT_EQ(a.shifted_up(5).prec(), 10);
  EXPECT_EQ(a.shifted_up(5).to_string(), "x^5 + x^6 + O(x^10)");
}

TEST(Series, MultiplicationGainsTheFactorOrders) {
  Series a = ser("x^2 + O(x^10)", kQ);
  Series b = ser("x^5 + x^6 + O(x^20)", kQ);
  EXPECT_EQ((a * b).prec(), 15);
  EXPECT_EQ((a + b).prec(), 10);
}

class SeriesLaws : public ::testing::TestWithParam<BaseRing> {};

TEST_P(SeriesLaws, RingAxiomsAtCommonPrecision) {
  const BaseRing ring = GetParam();
  SeededDraw draw(5);
  for (int i = 0; i < 100; ++i) {
    Series a = random_series(draw, ring, 15), b = random_series(draw, ring, 15), c = random_series(draw, ring, 15);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST_P(SeriesLaws, InverseOfRandomUnits) {
  const BaseRing ring = GetParam();
  SeededDraw draw(6);
  int tested = 0;
  while (tested < 100) {
    Series a = random_series(draw, ring, 20);
    if (a.ord() != 0) continue;
    ++tested;
    Series product = a * a.inv_unit();
    EXPECT_EQ(product.prec(), 20);
    EXPECT_EQ(product, Series::from_int(ring, 1));
  }
}

TEST_P(SeriesLaws, DivisionUndoesMultiplication) {
  const BaseRing ring = GetParam();
  SeededDraw draw(7);
  for (int i = 0; i < 100; ++i) {
    Series a = random_series(draw, ring, 25);
    Series b = random_series(draw, ring, 25);
    int shift = static_cast<int>(i % 6);
    b = b.truncated(25 - shift).shifted_up(shift);
    if (b.is_zero() || b.ord() > 5) continue;
    Series q = (a * b).div_exact(b);
    EXPECT_LE(q.prec(), a.prec());
    EXPECT_TRUE(q.agrees_to(a, q.prec()));
  }
}

TEST_P(SeriesLaws, OrderIsAdditive) {
  const BaseRing ring = GetParam();
  SeededDraw draw(8);
  for (int i = 0; i < 100; ++i) {
    Series a = draw.series(ring), b = draw.series(ring);
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ((a * b).ord(), a.ord() + b.ord());
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, SeriesLaws, ::testing::Values(kQ, kF5),
                         [](const auto& info) { return info.param.field.is_prime() ? "F5" : "Q"; });
