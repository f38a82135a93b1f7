#include <gtest/gtest.h>

#include "generators.hpp"
#include "khrank/laurent.hpp"

using namespace khrank;

namespace {

Laurent2 P(const char* s) { return parse_laurent(s); }
const Laurent2 x = Laurent2::variable(Var::x);
const Laurent2 y = Laurent2::variable(Var::y);

}  // namespace

TEST(Laurent, AddExamples) {
  EXPECT_EQ(poly_add(x + y, Laurent2()), x + y);
  EXPECT_TRUE(poly_add(x + y, -x - y).is_zero());
  EXPECT_EQ(poly_add(1 + x, 1 + y), Laurent2(2) + x + y);
}

TEST(Laurent, MulExamples) {
  EXPECT_EQ(poly_mul(x + y, Laurent2(1)), x + y);
  EXPECT_EQ(poly_mul(x - 1, y - 1), P("x*y-x-y+1"));
  EXPECT_EQ(poly_mul(poly_mul(x - 1, y - 1), x + y), P("x^2*y+x*y^2-x^2-2*x*y-y^2+x+y"));
}

TEST(Laurent, NoZeroCoefficientsStored) {
  Laurent2 p = x + y - x;
  for (const auto& [m, c] : p.terms()) EXPECT_NE(c, 0);
  EXPECT_EQ(p.size(), 1u);
}

TEST(Laurent, SubstituteUnit) {
  EXPECT_EQ(substitute_unit(x + y, Var::y), x + 1);
  EXPECT_EQ(substitute_unit(P("x^2+x*y+y^2"), Var::y), P("x^2+x+1"));
  EXPECT_EQ(substitute_unit(P("y^3"), Var::y), Laurent2(1));
}

TEST(Laurent, DeterminantExamples) {
  PolyMatrix one(1);
  one(0, 0) = -y;
  EXPECT_EQ(determinant(one), -y);

  PolyMatrix m(2);
  const Laurent2 t = y;
  m(0, 0) = x;
  m(0, 1) = t;
  m(1, 0) = -t;
  m(1, 1) = x + t;
  EXPECT_EQ(determinant(m), P("x^2+x*t+t^2"));
}

TEST(Laurent, NormalizeUnitExamples) {
  EXPECT_EQ(normalize_unit(P("-x^-1-x^-2*y")), x + y);
  EXPECT_EQ(normalize_unit(x + y), x + y);
  EXPECT_EQ(normalize_unit(Laurent2(-1)), Laurent2(1));
  try {
    normalize_unit(Laurent2());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "zero polynomial has no unit normalization");
  }
}

TEST(Laurent, DoteqExamples) {
  EXPECT_TRUE(doteq_equal(x + y, P("-x^-1-x^-2*y")));
  EXPECT_FALSE(doteq_equal(x + y, x - y));
  EXPECT_TRUE(doteq_equal(Laurent2(), Laurent2()));
  EXPECT_FALSE(doteq_equal(Laurent2(), Laurent2(1)));
}

TEST(Laurent, AbsCoeffSumExamples) {
  EXPECT_EQ(abs_coeff_sum(Laurent2()), 0);
  EXPECT_EQ(abs_coeff_sum(poly_mul(poly_mul(x - 1, y - 1), x + y)), 8);
  const Laurent2 e = poly_mul(poly_mul(x - 1, y - 1), P("x^2+x*y+y^2"));
  EXPECT_EQ(e, P("x^3*y+x^2*y^2+x*y^3-x^3-2*x^2*y-2*x*y^2-y^3+x^2+x*y+y^2"));
  EXPECT_EQ(abs_coeff_sum(e), 12);
}

TEST(Laurent, TextRoundTrip) {
  EXPECT_EQ(to_string(P("x^2+x*y+y^2")), "x^2+x*y+y^2");
  EXPECT_EQ(to_string(P("-1")), "-1");
  EXPECT_EQ(to_string(Laurent2()), "0");
  EXPECT_EQ(to_string(-y, {"x", "t"}), "-t");
  EXPECT_EQ(P("3*t^-2"), Laurent2::monomial(3, 0, -2));
  auto r = gen::rng(11);
  for (int i = 0; i < 200; ++i) {
    const Laurent2 p = gen::laurent(r, 6, 4);
    EXPECT_EQ(parse_laurent(to_string(p)), p) << to_string(p);
  }
  EXPECT_THROW(parse_laurent("x+"), ParseError);
  EXPECT_THROW(parse_laurent("x^"), ParseError);
  EXPECT_THROW(parse_laurent("z"), ParseError);
}

TEST(Laurent, ExponentRangeChecked) {
  EXPECT_THROW(Laurent2::monomial(1, std::int64_t{1} << 40, 0), Error);
  const Laurent2 big = Laurent2::monomial(1, (std::int64_t{1} << 31) - 1, 0);
  EXPECT_THROW(big * x, Error);
}

TEST(Laurent, ExactDivide) {
  EXPECT_EQ(exact_divide(poly_mul(x + y, x - 1), x - 1), x + y);
  EXPECT_EQ(exact_divide(P("x^-1*y"), y), P("x^-1"));
  EXPECT_THROW(exact_divide(x + 1, x - 1), Error);
  EXPECT_THROW(exact_divide(x, Laurent2()), Error);
}

TEST(LaurentProperty, RingAxioms) {
  auto r = gen::rng(1);
  for (int i = 0; i < 300; ++i) {
    const Laurent2 a = gen::laurent(r), b = gen::laurent(r), c = gen::laurent(r);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
  }
}

TEST(LaurentProperty, NormalizeIdempotentAndUnitInvariant) {
  auto r = gen::rng(2);
  for (int i = 0; i < 300; ++i) {
    const Laurent2 p = gen::nonzero_laurent(r);
    const Laurent2 n = normalize_unit(p);
    EXPECT_EQ(normalize_unit(n), n);
    EXPECT_EQ(n.min_exponent(Var::x), 0);
    EXPECT_EQ(n.min_exponent(Var::y), 0);
    EXPECT_GT(n.terms().begin()->second, 0);
    for (int sign : {1, -1}) {
      const Laurent2 u = p.times_unit(sign, gen::uniform(r, -3, 3), gen::uniform(r, -3, 3));
      EXPECT_TRUE(doteq_equal(p, u));
      EXPECT_TRUE(doteq_equal(u, p));
    }
  }
}

TEST(LaurentProperty, DoteqIsTransitive) {
  auto r = gen::rng(3);
  for (int i = 0; i < 100; ++i) {
    const Laurent2 p = gen::nonzero_laurent(r);
    const Laurent2 q = p.times_unit(-1, gen::uniform(r, -3, 3), gen::uniform(r, -3, 3));
    const Laurent2 s = q.times_unit(-1, gen::uniform(r, -3, 3), gen::uniform(r, -3, 3));
    EXPECT_TRUE(doteq_equal(p, p));
    EXPECT_TRUE(doteq_equal(p, q) && doteq_equal(q, s) && doteq_equal(p, s));
  }
}

TEST(LaurentProperty, AbsCoeffSumSubmultiplicative) {
  auto r = gen::rng(4);
  for (int i = 0; i < 300; ++i) {
    const Laurent2 p = gen::laurent(r), q = gen::laurent(r);
    EXPECT_LE(abs_coeff_sum(p * q), abs_coeff_sum(p) * abs_coeff_sum(q));
    const Laurent2 m1 = gen::monomial(r), m2 = gen::monomial(r);
    EXPECT_EQ(abs_coeff_sum(m1 * m2), abs_coeff_sum(m1) * abs_coeff_sum(m2));
  }
}

TEST(LaurentProperty, BareissMatchesCofactor) {
  auto r = gen::rng(5);
  for (int i = 0; i < 100; ++i) {
    const PolyMatrix m = gen::matrix(r, 3, true);
    EXPECT_EQ(determinant_bareiss(m), determinant_cofactor(m));
  }
  for (std::size_t n : {4u, 5u}) {
    for (int i = 0; i < 10; ++i) {
      const PolyMatrix m = gen::matrix(r, n);
      EXPECT_EQ(determinant_bareiss(m), determinant_cofactor(m));
    }
  }
}

TEST(LaurentProperty, DeterminantMultiplicative) {
  auto r = gen::rng(6);
  for (std::size_t n : {2u, 3u}) {
    for (int i = 0; i < 60; ++i) {
      const PolyMatrix a = gen::matrix(r, n), b = gen::matrix(r, n);
      EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
    }
  }
  for (int i = 0; i < 5; ++i) {
    const PolyMatrix a = gen::matrix(r, 5), b = gen::matrix(r, 5);
    EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
  }
}

TEST(PolyMatrix, RejectsSizeZero) { EXPECT_THROW(PolyMatrix(0), Error); }
