#include "ordmatch/rational.h"

#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "ordmatch/extended.h"
#include "ordmatch/random.h"

namespace ordmatch {
namespace {

TEST(RationalTest, CanonicalForm) {
  EXPECT_EQ(Rational(2, 4).str(), "1/2");
  EXPECT_EQ(Rational(3).str(), "3/1");
  EXPECT_EQ(Rational(-6, -4).str(), "3/2");
  EXPECT_EQ(Rational(1, -3).str(), "-1/3");
  EXPECT_EQ(Rational(0, 7).str(), "0/1");
}

TEST(RationalTest, ParseAcceptsIntegersAndFractions) {
  EXPECT_EQ(Rational::parse("5"), Rational(5));
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("0/3"), Rational(0));
  EXPECT_THROW(Rational::parse("1/0"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("abc"), std::invalid_argument);
  EXPECT_THROW(Rational::parse("1/2/3"), std::invalid_argument);
  EXPECT_THROW(Rational::parse(""), std::invalid_argument);
}

TEST(RationalTest, Arithmetic) {
  const Rational a(1, 3), b(1, 6);
  EXPECT_EQ(a + b, Rational(1, 2));
  EXPECT_EQ(a - b, Rational(1, 6));
  EXPECT_EQ(a * b, Rational(1, 18));
  EXPECT_EQ(a / b, Rational(2));
  EXPECT_EQ(-a, Rational(-1, 3));
  EXPECT_THROW(a / Rational(0), std::domain_error);
}

TEST(RationalTest, OrderingAndPredicates) {
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational(-1, 3), Rational(-1, 2));
  EXPECT_TRUE(Rational(4, 2).is_integer());
  EXPECT_FALSE(Rational(1, 2).is_integer());
  EXPECT_EQ(Rational(-3, 7).sign(), -1);
  EXPECT_TRUE(Rational(0).is_zero());
  EXPECT_EQ(abs(Rational(-2, 3)), Rational(2, 3));
  EXPECT_EQ(min(Rational(1), Rational(2)), Rational(1));
  EXPECT_EQ(max(Rational(1), Rational(2)), Rational(2));
}

TEST(RationalTest, PowersOfTwo) {
  EXPECT_EQ(pow2(0), Rational(1));
  EXPECT_EQ(pow2(10), Rational(1024));
  EXPECT_EQ(pow2(-3), Rational(1, 8));
  EXPECT_EQ(pow2(100).str(), "1267650600228229401496703205376/1");
}

TEST(RationalTest, PromotesAndDemotesAcrossTheInlineLimit) {
  const Rational big = pow2(70);
  EXPECT_FALSE(big.is_small());
  const Rational back = big / pow2(69);
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, Rational(2));
  const Rational max64(std::numeric_limits<std::int64_t>::max());
  EXPECT_EQ((max64 + 1) - 1, max64);
  EXPECT_EQ((max64 * max64) / max64, max64);
}

// Inline and GMP paths must agree: compare against mpq_class directly.
TEST(RationalTest, MatchesGmpOnRandomOperands) {
  Rng rng(42);
  for (int t = 0; t < 2000; ++t) {
    const std::int64_t scale = std::int64_t{1} << rng.between(0, 40);
    const std::int64_t an = rng.between(-scale, scale), ad = rng.between(1, scale);
    const std::int64_t bn = rng.between(-scale, scale), bd = rng.between(1, scale);
    const Rational a(an, ad), b(bn, bd);
    const mpq_class qa = a.to_mpq(), qb = b.to_mpq();
    EXPECT_EQ((a + b).to_mpq(), mpq_class(qa + qb));
    EXPECT_EQ((a - b).to_mpq(), mpq_class(qa - qb));
    EXPECT_EQ((a * b).to_mpq(), mpq_class(qa * qb));
    if (!b.is_zero()) {
      EXPECT_EQ((a / b).to_mpq(), mpq_class(qa / qb));
    }
    EXPECT_EQ(a < b, qa < qb);
  }
}

TEST(RationalTest, StreamsAsNumOverDen) {
  std::ostringstream os;
  os << Rational(1, 3);
  EXPECT_EQ(os.str(), "1/3");
}

TEST(ExtRationalTest, InfinityOrdersAboveEveryFiniteValue) {
  EXPECT_GT(ExtRational::infinity(), ExtRational(pow2(200)));
  EXPECT_EQ(ExtRational::infinity(), ExtRational::infinity());
  EXPECT_EQ(ExtRational::ratio(Rational(1), Rational(0)), ExtRational::infinity());
  EXPECT_EQ(ExtRational::ratio(Rational(3), Rational(2)), ExtRational(Rational(3, 2)));
  EXPECT_THROW(ExtRational::ratio(Rational(0), Rational(0)), std::domain_error);
  EXPECT_EQ(ExtRational::parse("inf").str(), "inf");
  EXPECT_EQ(ExtRational::parse("6/4").str(), "3/2");
  EXPECT_THROW(ExtRational::infinity().value(), std::logic_error);
}

}  // namespace
}  // namespace ordmatch
