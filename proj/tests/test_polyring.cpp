#include <gtest/gtest.h>

#include <random>

#include "mfres/error.hpp"
#include "mfres/polyring.hpp"
#include "support.hpp"

using namespace mfres;
using testing_support::P;

namespace {

RingPtr xy() { return make_ring({"x", "y"}); }

}  // namespace

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-7")), "-7");
  EXPECT_EQ(to_string(parse_rational("0/5")), "0");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Ring, RejectsBadNames) {
  EXPECT_THROW(make_ring({"x", "x"}), Error);
  EXPECT_THROW(make_ring({"2x"}), Error);
  auto r = make_ring({"x_0", "Y1"});
  EXPECT_EQ(r->index_of("Y1"), 1u);
  EXPECT_FALSE(r->index_of("z").has_value());
}

TEST(Parser, Examples) {
  auto r = xy();
  Polynomial p = P(r, "x^2 - 2*x*y + y^2");
  EXPECT_EQ(p.num_terms(), 3u);
  EXPECT_EQ(p, (P(r, "x") - P(r, "y")).pow(2));
  EXPECT_EQ(P(make_ring({"x"}), "0").num_terms(), 0u);
  try {
    P(make_ring({"x"}), "x + ");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Parser, Grammar) {
  auto r = xy();
  EXPECT_EQ(P(r, "1/2*x"), P(r, "x") * Rational(1, 2));
  EXPECT_EQ(P(r, "(x+y)^3"), (P(r, "x") + P(r, "y")) * (P(r, "x") + P(r, "y")) * (P(r, "x") + P(r, "y")));
  EXPECT_EQ(P(r, " - x *  y "), -(P(r, "x") * P(r, "y")));
  EXPECT_EQ(P(r, "x^0"), Polynomial::constant(r, 1));
  EXPECT_EQ(P(r, "-(x - 1)"), P(r, "1 - x"));
  EXPECT_EQ(P(r, "123456789012345678901234567890*x").coefficient(Monomial(std::vector<unsigned>{1, 0})),
            Rational("123456789012345678901234567890"));
  EXPECT_THROW(P(r, "2x"), ParseError);
  EXPECT_THROW(P(r, "x y"), ParseError);
  EXPECT_THROW(P(r, "x^-1"), ParseError);
  EXPECT_THROW(P(r, "x^2^2"), ParseError);
  EXPECT_THROW(P(r, "z"), ParseError);
  EXPECT_THROW(P(r, "(x"), ParseError);
  EXPECT_THROW(P(r, "1/0"), ParseError);
  EXPECT_THROW(P(r, ""), ParseError);
}

TEST(Parser, UnknownVariableOffset) {
  try {
    P(xy(), "x + zz");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 4u);
    EXPECT_NE(std::string(e.what()).find("zz"), std::string::npos);
  }
}

TEST(Polynomial, Printing) {
  auto r = xy();
  EXPECT_EQ(P(r, "y^2 + x^2 - 2*x*y").to_string(), "x^2 - 2*x*y + y^2");
  EXPECT_EQ(P(r, "x*1/2").to_string(), "1/2*x");
  EXPECT_EQ(P(r, "-1").to_string(), "-1");
  EXPECT_EQ(Polynomial::zero(r).to_string(), "0");
}

TEST(Polynomial, RingAxiomsRandom) {
  auto r = make_ring({"x", "y", "z"});
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    Polynomial p = testing_support::random_poly(r, rng, 4, 4, 5);
    Polynomial q = testing_support::random_poly(r, rng, 4, 4, 5);
    Polynomial s = testing_support::random_poly(r, rng, 4, 4, 5);
    EXPECT_EQ((p + q) * s, p * s + q * s);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p * q) * s, p * (q * s));
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(p + Polynomial::zero(r), p);
  }
}

TEST(Polynomial, ParserRoundTripRandom) {
  auto r = make_ring({"x", "y", "z"});
  std::mt19937 rng(12);
  for (int t = 0; t < 200; ++t) {
    Polynomial p = testing_support::random_poly(r, rng, 5, 5, 9) * Rational(1, 1 + t % 7);
    Polynomial back = P(r, p.to_string());
    EXPECT_EQ(back, p);
    EXPECT_EQ(back.to_string(), p.to_string());
  }
}

TEST(Differentiate, Examples) {
  auto r = xy();
  EXPECT_EQ(differentiate(P(r, "x^3 + y^3"), 0), P(r, "3*x^2"));
  EXPECT_EQ(differentiate(P(r, "x*y"), 1), P(r, "x"));
  EXPECT_TRUE(differentiate(P(r, "5"), 0).is_zero());
  EXPECT_THROW(differentiate(P(r, "x"), 2), DomainError);
}

TEST(Differentiate, LeibnizRandom) {
  auto r = make_ring({"x", "y", "z"});
  std::mt19937 rng(13);
  for (int t = 0; t < 200; ++t) {
    Polynomial p = testing_support::random_poly(r, rng, 4, 4, 5);
    Polynomial q = testing_support::random_poly(r, rng, 4, 4, 5);
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_EQ(differentiate(p * q, i), differentiate(p, i) * q + p * differentiate(q, i));
  }
}

TEST(Jacobian, Examples) {
  auto r = xy();
  EXPECT_EQ(jacobian_generators(P(r, "x*y")), (std::vector<Polynomial>{P(r, "y"), P(r, "x")}));
  EXPECT_EQ(jacobian_generators(P(r, "x^3+y^3")), (std::vector<Polynomial>{P(r, "3*x^2"), P(r, "3*y^2")}));
  auto r3 = make_ring({"x", "y", "z"});
  EXPECT_EQ(jacobian_generators(P(r3, "x^2+y*z")),
            (std::vector<Polynomial>{P(r3, "2*x"), P(r3, "z"), P(r3, "y")}));
}

TEST(Hessian, Examples) {
  auto r = xy();
  EXPECT_EQ(hessian_determinant(P(r, "x*y")), P(r, "-1"));
  EXPECT_EQ(hessian_determinant(P(r, "x^3+y^3")), P(r, "36*x*y"));
  EXPECT_EQ(hessian_determinant(P(r, "x^2+y^2")), P(r, "4"));
}

TEST(Hessian, RelabelingInvariance) {
  auto r = make_ring({"x", "y", "z"});
  std::mt19937 rng(14);
  std::vector<std::size_t> perm{2, 0, 1};
  for (int t = 0; t < 30; ++t) {
    Polynomial f = testing_support::random_poly(r, rng, 4, 5, 4);
    EXPECT_EQ(hessian_determinant(f.relabel(r, perm)), hessian_determinant(f).relabel(r, perm));
  }
}

TEST(PolyMatrix, DeterminantAndAdjugate) {
  auto r = xy();
  std::mt19937 rng(15);
  for (std::size_t n = 1; n <= 3; ++n)
    for (int t = 0; t < 10; ++t) {
      PolyMatrix a = testing_support::random_matrix(r, rng, n, 2, 2);
      PolyMatrix scalar = PolyMatrix::scalar(a.determinant(), n);
      EXPECT_EQ(a * a.adjugate(), scalar);
      EXPECT_EQ(a.adjugate() * a, scalar);
      EXPECT_EQ(a.transpose().determinant(), a.determinant());
    }
}

TEST(Monomial, Orders) {
  Monomial a(std::vector<unsigned>{2, 0}), b(std::vector<unsigned>{1, 1}), c(std::vector<unsigned>{0, 3});
  EXPECT_GT(compare_monomials(OrderKind::degrevlex, c, a), 0);
  EXPECT_GT(compare_monomials(OrderKind::lex, a, c), 0);
  EXPECT_GT(compare_monomials(OrderKind::degrevlex, a, b), 0);
  EXPECT_EQ(a.lcm(c), Monomial(std::vector<unsigned>{2, 3}));
  EXPECT_TRUE(a.coprime(c));
  EXPECT_FALSE(a.divides(b));
}
