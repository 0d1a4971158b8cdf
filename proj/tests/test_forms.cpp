#include <gtest/gtest.h>

#include <random>

#include "mfres/error.hpp"
#include "mfres/forms.hpp"
#include "support.hpp"

using namespace mfres;
using namespace testing_support;

namespace {

RingPtr xy() { return make_ring({"x", "y"}); }

DifferentialForm d(const RingPtr& r, std::size_t i) { return DifferentialForm::differential(r, i); }
DifferentialForm fn(const RingPtr& r, const std::string& s) { return DifferentialForm::function(P(r, s)); }

FormMatrix random_form_matrix(const RingPtr& r, std::mt19937& rng, std::size_t rows, std::size_t cols,
                              unsigned degree) {
  FormMatrix m(r, rows, cols, degree);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_form(r, rng, degree);
  return m;
}

}  // namespace

TEST(Wedge, Examples) {
  auto r = xy();
  DifferentialForm dxdy = wedge(d(r, 0), d(r, 1));
  EXPECT_EQ(dxdy.coefficient(0b11), P(r, "1"));
  EXPECT_TRUE(wedge(d(r, 0), d(r, 0)).is_zero());
  EXPECT_EQ(wedge(d(r, 0) * P(r, "y"), d(r, 1) * P(r, "x")), dxdy * P(r, "x*y"));
  EXPECT_EQ(wedge(d(r, 1), d(r, 0)), -dxdy);
  EXPECT_THROW(wedge(d(r, 0), d(make_ring({"u", "v"}), 0)), DomainError);
}

TEST(ExteriorDerivative, Examples) {
  auto r = xy();
  EXPECT_EQ(exterior_derivative(fn(r, "x*y")), d(r, 0) * P(r, "y") + d(r, 1) * P(r, "x"));
  EXPECT_EQ(exterior_derivative(d(r, 1) * P(r, "x")), wedge(d(r, 0), d(r, 1)));
  EXPECT_TRUE(exterior_derivative(d(r, 0)).is_zero());
}

TEST(Forms, DSquaredIsZeroRandom) {
  auto r = make_ring({"a", "b", "c", "e"});
  std::mt19937 rng(31);
  for (int t = 0; t < 60; ++t) {
    DifferentialForm w = random_form(r, rng, static_cast<unsigned>(t % 3));
    EXPECT_TRUE(exterior_derivative(exterior_derivative(w)).is_zero());
  }
}

TEST(Forms, GradedCommutativityAndLeibnizRandom) {
  auto r = make_ring({"a", "b", "c", "e"});
  std::mt19937 rng(32);
  for (int t = 0; t < 60; ++t) {
    unsigned p = t % 3, q = (t / 3) % 3;
    DifferentialForm a = random_form(r, rng, p), b = random_form(r, rng, q);
    DifferentialForm ab = wedge(a, b), ba = wedge(b, a);
    EXPECT_EQ(ab, (p * q) % 2 == 0 ? ba : -ba);
    DifferentialForm lhs = exterior_derivative(ab);
    DifferentialForm rhs = wedge(exterior_derivative(a), b);
    DifferentialForm second = wedge(a, exterior_derivative(b));
    rhs += p % 2 == 0 ? second : -second;
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Forms, TraceExamples) {
  auto r = xy();
  MatrixFactorization n = make_mf(r, "x*y", 1, {"x"}, {"y"}, "N1");
  EXPECT_EQ(matrix_form_product_trace({FormMatrix::differential(n.a()), FormMatrix::differential(n.b())}),
            wedge(d(r, 0), d(r, 1)));
  PolyMatrix a = mat(r, 2, {"x", "y", "y", "-x"});
  EXPECT_TRUE(matrix_form_product_trace({FormMatrix::differential(a), FormMatrix::differential(a)}).is_zero());
  EXPECT_EQ(matrix_form_product_trace({FormMatrix::identity(r, 1)}), fn(r, "1"));
  EXPECT_THROW(matrix_form_product_trace({}), DomainError);
}

TEST(Forms, TraceCyclicityWithSignRandom) {
  auto r = make_ring({"a", "b", "c", "e"});
  std::mt19937 rng(33);
  for (int t = 0; t < 20; ++t) {
    unsigned p = 1 + t % 2, q = 1 + (t / 2) % 2;
    FormMatrix x = random_form_matrix(r, rng, 2, 3, p);
    FormMatrix y = random_form_matrix(r, rng, 3, 2, q);
    DifferentialForm xy_tr = matrix_form_product_trace({x, y});
    DifferentialForm yx_tr = matrix_form_product_trace({y, x});
    EXPECT_EQ(xy_tr, (p * q) % 2 == 0 ? yx_tr : -yx_tr);
  }
}

TEST(Forms, EvenPowerOfOddMatrixHasZeroTrace) {
  auto r = make_ring({"a", "b", "c", "e"});
  std::mt19937 rng(34);
  for (int t = 0; t < 10; ++t) {
    FormMatrix z = random_form_matrix(r, rng, 2, 2, 1);
    EXPECT_TRUE(matrix_form_product_trace({z, z}).is_zero());
    FormMatrix z3 = random_form_matrix(r, rng, 3, 3, 1);
    EXPECT_TRUE(matrix_form_product_trace({z3, z3, z3, z3}).is_zero());
  }
}

TEST(Chern, Examples) {
  auto r = xy();
  EXPECT_EQ(chern_character_form(make_mf(r, "x*y", 1, {"x"}, {"y"}, "N1")), wedge(d(r, 0), d(r, 1)));
  EXPECT_EQ(chern_character_form(make_mf(r, "x^3+y^3", 1, {"x+y"}, {"x^2-x*y+y^2"}, "C1")),
            wedge(d(r, 0), d(r, 1)) * P(r, "3*y - 3*x"));
  EXPECT_TRUE(
      chern_character_form(make_mf(r, "x^2+y^2", 2, {"x", "y", "y", "-x"}, {"x", "y", "y", "-x"}, "S")).is_zero());
  EXPECT_TRUE(
      chern_character_form(make_mf(r, "x^3+y^2", 2, {"y", "x", "x^2", "-y"}, {"y", "x", "x^2", "-y"}, "P")).is_zero());
  auto r3 = make_ring({"x", "y", "z"});
  EXPECT_THROW(chern_character_form(make_mf(r3, "x^2+y*z", 2, {"x", "y", "z", "-x"}, {"x", "y", "z", "-x"}, "S")),
               DomainError);
}

TEST(Chern, ShiftNegates) {
  auto r = xy();
  MatrixFactorization c = make_mf(r, "x^3+y^3", 1, {"x+y"}, {"x^2-x*y+y^2"}, "C1");
  EXPECT_EQ(chern_character_form(shift(c)), -chern_character_form(c));
}

TEST(Chern, FourVariables) {
  // f = xy + zw, tensor of two nodes: ch is dx^dy^dz^dw up to the factor 2 * 2!/4!
  auto r = make_ring({"x", "y", "z", "w"});
  MatrixFactorization k = make_mf(r, "x*y + z*w", 2, {"x", "z", "-w", "y"}, {"y", "-z", "w", "x"}, "K");
  DifferentialForm ch = chern_character_form(k);
  EXPECT_EQ(ch.degree(), 4u);
  EXPECT_FALSE(ch.is_zero());
  EXPECT_TRUE(ch.top_coefficient().is_constant());
}

TEST(EulerLemma, Examples) {
  auto r = xy();
  MatrixFactorization n = make_mf(r, "x*y", 1, {"x"}, {"y"}, "N1");
  EulerLemmaSides s = euler_lemma_sides(n, 1);
  EXPECT_EQ(s.lhs, wedge(d(r, 0), d(r, 1)) * P(r, "x*y"));
  EXPECT_EQ(s.lhs, s.rhs);
  EXPECT_TRUE(euler_lemma_check(make_mf(r, "x^3+y^3", 1, {"x+y"}, {"x^2-x*y+y^2"}, "C1"), 1));
  auto r3 = make_ring({"x", "y", "z"});
  EXPECT_TRUE(euler_lemma_check(make_mf(r3, "x^2+y*z", 2, {"x", "y", "z", "-x"}, {"x", "y", "z", "-x"}, "S"), 1));
  EXPECT_THROW(euler_lemma_check(n, 0), DomainError);
  EXPECT_THROW(euler_lemma_check(n, 2), DomainError);
}

TEST(EulerLemma, RandomAdjugateFactorizations) {
  std::mt19937 rng(35);
  auto r2 = make_ring({"x", "y"});
  auto r4 = make_ring({"x", "y", "z", "w"});
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    for (std::size_t n : {1u, 2u}) {
      if (auto mf = random_adjugate_mf(r2, rng, n, 2)) {
        EXPECT_TRUE(euler_lemma_check(*mf, 1));
        ++checked;
      }
    }
  }
  for (int t = 0; t < 4; ++t) {
    if (auto mf = random_adjugate_mf(r4, rng, 2, 1)) {
      EXPECT_TRUE(euler_lemma_check(*mf, 1));
      EXPECT_TRUE(euler_lemma_check(*mf, 2));
      ++checked;
    }
  }
  EXPECT_GE(checked, 30);
}
