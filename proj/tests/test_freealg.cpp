#include <gtest/gtest.h>

#include "gradreg/freealg.hpp"

using namespace gradreg;

namespace {
const GeneratorSet xy({"x", "y"}, {1, 1});
const GeneratorSet xz({"x", "z"}, {1, 2});
RationalField Q;
}  // namespace

TEST(Order, DegreeThenLengthThenLex) {
  // z has degree 2: x*x and z tie on degree, the shorter word is smaller.
  EXPECT_LT(monomial_compare(xz, Word{1}, Word{0, 0}), 0);
  EXPECT_LT(monomial_compare(xz, Word{0}, Word{1}), 0);
  EXPECT_LT(monomial_compare(xy, Word{0, 1}, Word{1, 0}), 0);
  EXPECT_EQ(monomial_compare(xy, Word{1, 0}, Word{1, 0}), 0);
}

TEST(Poly, ParseAndPrintRoundTrip) {
  auto p = parse_polynomial(Q, xy, "2*x*y - y*x + 1/2*x^2");
  EXPECT_EQ(p.size(), 3u);
  EXPECT_TRUE(p.is_homogeneous(xy));
  EXPECT_EQ(p.degree(xy), 2);
  auto q = parse_polynomial(Q, xy, to_string(xy, p));
  EXPECT_EQ(p, q);
  EXPECT_EQ(p.leading_word(), (Word{1, 0}));
}

TEST(Poly, ParenthesesAndPowers) {
  auto p = parse_polynomial(Q, xy, "(x + y)^2");
  auto q = parse_polynomial(Q, xy, "x^2 + x*y + y*x + y^2");
  EXPECT_EQ(p, q);
  EXPECT_TRUE(parse_polynomial(Q, xy, "x*y - x*y").is_zero());
}

TEST(Poly, ParseErrorsCarryColumns) {
  try {
    parse_polynomial(Q, xy, "x*w", 4, 10);
    FAIL() << "expected InputError";
  } catch (const InputError& e) {
    EXPECT_EQ(e.line(), 4);
    EXPECT_GT(e.column(), 10);
  }
  EXPECT_THROW(parse_polynomial(Q, xy, "x +"), InputError);
  EXPECT_THROW(parse_polynomial(Q, xy, "x)"), InputError);
}

TEST(Poly, MultiplyIsAssociativeAndNoncommutative) {
  auto a = parse_polynomial(Q, xy, "x + 2*y");
  auto b = parse_polynomial(Q, xy, "x*y - y");
  auto c = parse_polynomial(Q, xy, "3*y*x + x");
  EXPECT_EQ(multiply(xy, multiply(xy, a, b), c), multiply(xy, a, multiply(xy, b, c)));
  auto x = parse_polynomial(Q, xy, "x"), y = parse_polynomial(Q, xy, "y");
  EXPECT_FALSE(multiply(xy, x, y) == multiply(xy, y, x));
}

TEST(Poly, ReduceBySingleRule) {
  // y*x -> x*y: every word normalizes to x^a y^b.
  std::vector<NcPolynomial<Rational>> rules{parse_polynomial(Q, xy, "y*x - x*y").monic()};
  auto f = parse_polynomial(Q, xy, "y*y*x*x - x*y*x*y");
  EXPECT_TRUE(reduce(xy, f, rules).is_zero());
  auto g = parse_polynomial(Q, xy, "y*x*y");
  EXPECT_EQ(reduce(xy, g, rules), parse_polynomial(Q, xy, "x*y^2"));
}

TEST(Generators, Validation) {
  EXPECT_THROW(GeneratorSet({"x", "x"}, {1, 1}), InputError);
  EXPECT_THROW(GeneratorSet({"x"}, {0}), InputError);
  EXPECT_EQ(xz.degree(Word{0, 1, 1}), 5);
  EXPECT_EQ(*xz.index_of("z"), 1u);
}
