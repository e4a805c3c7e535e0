#include <gtest/gtest.h>

#include <random>

#include "../support/random_instances.hpp"
#include "dapprox/curve.hpp"
#include "dapprox/errors.hpp"
#include "dapprox/modular.hpp"
#include "dapprox/polynomial.hpp"

namespace dapprox {
namespace {

TEST(IntPolynomial, ValidatesShape) {
  EXPECT_THROW(IntPolynomial({Integer(1), Integer(2)}), PreconditionError);
  EXPECT_THROW(IntPolynomial({Integer(1), Integer(2), Integer(0)}), PreconditionError);
  EXPECT_THROW(IntPolynomial::parse("0,,x"), PreconditionError);
  EXPECT_THROW(IntPolynomial::parse("0,0,1/2"), PreconditionError);
  EXPECT_THROW(IntPolynomial::monomial(2, 0), PreconditionError);
  const IntPolynomial p = IntPolynomial::parse("0,0,-1");
  EXPECT_EQ(p.degree(), 2u);
  EXPECT_EQ(p.a_d(), 1);
  EXPECT_EQ(p, IntPolynomial::monomial(2, 1));
  EXPECT_EQ(p.to_string(), "0,0,-1");
  EXPECT_EQ(IntPolynomial::parse("3,0,2").a_d(), -2);
}

TEST(IntPolynomial, EvaluationAndDerivative) {
  const IntPolynomial p = IntPolynomial::parse("3,0,-2");
  EXPECT_EQ(p.evaluate(Rational(5, 3)), Rational(-23, 9));
  EXPECT_EQ(p.derivative_at(Rational(5, 3)), Rational(-20, 3));
  EXPECT_EQ(p.eval_scaled_derivative(Integer(5), Integer(3)), Integer(-20));
}

TEST(EvalScaled, Examples) {
  EXPECT_EQ(eval_scaled(IntPolynomial::parse("0,0,-1"), Integer(3), Integer(2)), Integer(-9));
  EXPECT_EQ(eval_scaled(IntPolynomial::parse("0,1,0,-1"), Integer(1), Integer(1)), Integer(0));
  EXPECT_EQ(eval_scaled(IntPolynomial::parse("3,0,-2"), Integer(5), Integer(3)), Integer(-23));
}

TEST(EvalScaled, EqualsScaledRationalEvaluation) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 500; ++i) {
    std::vector<Integer> c(3 + gen() % 3);
    for (auto& v : c) v = static_cast<long>(gen() % 21) - 10;
    if (c.back() == 0) c.back() = 3;
    const IntPolynomial poly(c);
    const Integer p = static_cast<long>(gen() % 201) - 100;
    const Integer q = static_cast<long>(gen() % 50) + 1;
    const Rational expected = poly.evaluate(make_rational(p, q)) * Rational(ipow(q, poly.degree()));
    ASSERT_EQ(expected.get_den(), 1);
    ASSERT_EQ(poly.eval_scaled(p, q), expected.get_num());
  }
}

TEST(DerivativeBound, Examples) {
  const IntPolynomial p = IntPolynomial::parse("0,0,-1");
  EXPECT_EQ(derivative_sup_bound(p, 0).k_m, Rational(3));
  EXPECT_EQ(derivative_sup_bound(p, -1).k_m, Rational(3));
  EXPECT_EQ(derivative_sup_bound(IntPolynomial::parse("7,0,-1"), 0).k_m, Rational(3));
  EXPECT_EQ(derivative_sup_bound(IntPolynomial::parse("7,0,-1"), 4).k_m,
            derivative_sup_bound(p, 4).k_m);
}

TEST(DerivativeBound, DominatesSampledDerivative) {
  std::mt19937_64 gen(4);
  const std::vector<IntPolynomial> polys{IntPolynomial::parse("0,0,-1"),
                                         IntPolynomial::parse("1,-3,0,2,-5"),
                                         IntPolynomial::parse("0,7,-4,-1")};
  for (const auto& poly : polys) {
    for (std::int64_t m : {-3, -1, 0, 2}) {
      const DerivativeBound bound = derivative_sup_bound(poly, m);
      ASSERT_GE(bound.k_m, 1);
      for (int i = 0; i < 3400; ++i) {
        const Rational x = Rational(to_integer(m)) +
                           make_rational(Integer(static_cast<long>(gen() % 100001)), Integer(100000));
        ASSERT_LE(1 + abs(poly.derivative_at(x)), bound.k_m);
      }
    }
  }
}

TEST(ReduceSimultaneous, WorkedExample) {
  const IntPolynomial poly = IntPolynomial::parse("0,0,-1");
  const auto alpha = AlphaValue::user_supplied(Rational(19, 64));
  const auto hit = reduce_simultaneous(poly, alpha, Rational(33, 64), Integer(1), 2, Integer(0),
                                       Rational(2), derivative_sup_bound(poly, 0));
  EXPECT_EQ(hit.b, Integer(1));
  EXPECT_EQ(hit.error, Rational(3, 64));
  EXPECT_EQ(hit.gcd_bq, Integer(1));
  EXPECT_EQ(hit.p, std::optional<Integer>(Integer(1)));
}

TEST(ReduceSimultaneous, ExactPointHasZeroError) {
  const IntPolynomial poly = IntPolynomial::parse("1,2,-3");
  // x = p/q = 2/3 and alpha chosen so that P(x) + alpha = r/q exactly.
  const Rational x(2, 3);
  const Rational alpha = Rational(5, 3) - poly.evaluate(x);
  const auto hit = reduce_simultaneous(poly, AlphaValue::user_supplied(alpha), x, Integer(2), 3,
                                       Integer(5), Rational(3), derivative_sup_bound(poly, 0));
  EXPECT_EQ(hit.error, 0);
  EXPECT_EQ(Rational(hit.b) / 9, alpha);
}

TEST(ReduceSimultaneous, QEqualsOne) {
  const IntPolynomial poly = IntPolynomial::parse("0,0,-1");
  const auto bound = derivative_sup_bound(poly, 0);
  const auto hit = reduce_simultaneous(poly, AlphaValue::user_supplied(Rational(1, 3)),
                                       Rational(1, 10), Integer(0), 1, Integer(0), Rational(3), bound);
  EXPECT_LT(hit.error, bound.k_m);
}

TEST(ReduceSimultaneous, NamesTheFailedInequality) {
  const IntPolynomial poly = IntPolynomial::parse("0,0,-1");
  const auto bound = derivative_sup_bound(poly, 0);
  const auto alpha = AlphaValue::user_supplied(Rational(19, 64));
  try {
    reduce_simultaneous(poly, alpha, Rational(3, 4), Integer(1), 2, Integer(0), Rational(2), bound);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("|x - p/q|"), std::string::npos);
  }
  try {
    reduce_simultaneous(poly, alpha, Rational(33, 64), Integer(1), 2, Integer(1), Rational(2), bound);
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("|P(x) + alpha - r/q|"), std::string::npos);
  }
  EXPECT_THROW(reduce_simultaneous(poly, alpha, Rational(33, 64), Integer(1), 2, Integer(0),
                                   Rational(2), derivative_sup_bound(poly, 3)),
               PreconditionError);
}

TEST(LiftConstrained, Examples) {
  const IntPolynomial square = IntPolynomial::parse("0,0,-1");
  const auto a = AlphaValue::user_supplied(Rational(19, 64));
  const auto lift = lift_constrained(square, a, Integer(1), 2, Integer(1), Rational(2),
                                     derivative_sup_bound(square, 0));
  EXPECT_EQ(lift.r, Integer(0));
  EXPECT_EQ(lift.radius.coefficient, Rational(6));

  const auto zero = lift_constrained(square, AlphaValue::user_supplied(Rational(0)), Integer(0), 9,
                                     Integer(0), Rational(3), derivative_sup_bound(square, 0));
  EXPECT_EQ(zero.r, Integer(0));

  const IntPolynomial cubic = IntPolynomial::parse("0,0,0,-1");
  const auto c = lift_constrained(cubic, AlphaValue::user_supplied(Rational(2, 125)), Integer(2), 5,
                                  Integer(3), Rational(4), derivative_sup_bound(cubic, 0));
  EXPECT_EQ(c.r, Integer(-1));
}

TEST(LiftConstrained, RejectsCongruenceFailure) {
  const IntPolynomial cubic = IntPolynomial::parse("0,0,0,-1");
  try {
    lift_constrained(cubic, AlphaValue::user_supplied(Rational(3, 125)), Integer(3), 5, Integer(3),
                     Rational(4), derivative_sup_bound(cubic, 0));
    FAIL();
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("not satisfied"), std::string::npos);
  }
  EXPECT_FALSE(satisfies_lift_congruence(cubic, Integer(3), 5, Integer(3)));
  EXPECT_TRUE(satisfies_lift_congruence(cubic, Integer(2), 5, Integer(3)));
}

TEST(Reduction, RandomRoundTrip) {
  std::mt19937_64 gen(31);
  for (int i = 0; i < 200; ++i) {
    const auto in = testing::random_simultaneous_instance(gen);
    const auto hit = reduce_simultaneous(in.poly, in.alpha, in.x, in.p, in.q, in.r, in.tau, in.bound);
    const Integer qq = to_integer(in.q);
    ASSERT_TRUE((PowerRadius{in.bound.k_m, qq, Rational(-in.tau)}.strictly_exceeds(hit.error)));
    // Congruence consistency: b = a_d p^d (mod q).
    const Integer diff = in.poly.leading_negated() * ipow(in.p, in.poly.degree()) - hit.b;
    ASSERT_TRUE(mpz_divisible_p(diff.get_mpz_t(), qq.get_mpz_t()));
    const auto lift = lift_constrained(in.poly, in.alpha, hit.b, in.q, in.p, in.tau, in.bound);
    ASSERT_EQ(lift.r, in.r);
    for (int k = 0; k < 5; ++k) {
      const Rational x2 = make_rational(in.p, qq) + testing::small_offset(gen, in.q, in.tau);
      if (x2 < Rational(to_integer(in.bound.interval_index)) ||
          x2 > Rational(to_integer(in.bound.interval_index)) + 1) {
        continue;
      }
      const Rational dev = abs(in.poly.evaluate(x2) + in.alpha.value() - make_rational(lift.r, qq));
      ASSERT_TRUE(lift.radius.strictly_exceeds(dev));
    }
  }
}

}  // namespace
}  // namespace dapprox
