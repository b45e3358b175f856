#include <gtest/gtest.h>

#include "spinforms/polynomial.hpp"

using namespace spinforms;
using Q = Rational;
using P = Polynomial<Q>;

namespace {

TEST(Polynomial, ArithmeticAndEvaluation) {
  const P x = P::variable(0), y = P::variable(1);
  const P p = x * x - P(Q(3)) * x * y + P(2);
  const std::vector<Q> at{Q(1, 2), Q(-2)};
  EXPECT_EQ(p(std::span<const Q>(at)), Q(1, 4) + Q(3) + Q(2));
  EXPECT_EQ((p - p).is_zero(), true);
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ(p.variables_used(), 2);
  EXPECT_EQ((x + y) * (x - y), x * x - y * y);
}

TEST(Polynomial, Derivative) {
  const P x = P::variable(0), y = P::variable(1), z = P::variable(2);
  const P p = x * x * y + P(5) * z - y;
  EXPECT_EQ(p.derivative(0), P(2) * x * y);
  EXPECT_EQ(p.derivative(1), x * x - P(1));
  EXPECT_EQ(p.derivative(2), P(5));
  EXPECT_TRUE(p.derivative(3).is_zero());
}

TEST(Polynomial, DerivativesCommute) {
  const P x = P::variable(0), y = P::variable(1), w = P::variable(3);
  const P p = x * x * x * y * w + P(Q(1, 3)) * y * y * w - x * w;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(p.derivative(i).derivative(j), p.derivative(j).derivative(i));
}

TEST(Polynomial, VariableRange) {
  EXPECT_THROW(P::variable(kMaxVars), ContractViolation);
  EXPECT_THROW(P::variable(-1), ContractViolation);
  const std::vector<int> e{1, 0, 2};
  EXPECT_EQ(P::monomial(Q(7), std::span<const int>(e)), P(7) * P::variable(0) * P::variable(2) * P::variable(2));
  const std::vector<int> bad{-1};
  EXPECT_THROW(P::monomial(Q(1), std::span<const int>(bad)), ContractViolation);
}

TEST(Polynomial, FloatCoefficients) {
  using D = Polynomial<double>;
  const D p = D(1.5) * D::variable(0) + D(2);
  const std::vector<double> at{2.0};
  EXPECT_DOUBLE_EQ(p(std::span<const double>(at)), 5.0);
}

} // namespace
