#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "dapprox/arithmetic.hpp"
#include "dapprox/errors.hpp"
#include "dapprox/modular.hpp"
#include "dapprox/residues.hpp"

namespace dapprox {
namespace {

TEST(UnityRoots, Examples) {
  EXPECT_EQ(unity_roots_count(8, 2), 4u);
  EXPECT_EQ(unity_roots_count(7, 3), 3u);
  EXPECT_EQ(unity_roots_count(5, 2), 2u);
  EXPECT_EQ(unity_roots_count(1, 4), 1u);
  EXPECT_EQ(unity_roots_count(16, 4), 8u);  // the gcd(2d, phi) branch
}

TEST(UnitPowerCount, Examples) {
  EXPECT_EQ(unit_power_count(7, 3), 2u);
  EXPECT_EQ(unit_power_count(8, 2), 1u);
  EXPECT_EQ(unit_power_count(1, 5), 1u);
}

TEST(PowerResidueCount, Examples) {
  EXPECT_EQ(power_residue_count(8, 2), 3u);
  EXPECT_EQ(power_residue_count(7, 3), 3u);
  EXPECT_EQ(power_residue_count(12, 2), 4u);
  EXPECT_EQ(power_residue_count(12, 2), power_residue_count(4, 2) * power_residue_count(3, 2));
  EXPECT_EQ(power_residue_count(1, 2), 1u);
}

TEST(PowerResidues, EnumeratedSets) {
  EXPECT_EQ(power_residues(5, 2).elements, (std::vector<std::uint64_t>{0, 1, 4}));
  EXPECT_EQ(power_residues(1, 2).elements, (std::vector<std::uint64_t>{0}));
  EXPECT_EQ(power_residues(6, 2).elements, (std::vector<std::uint64_t>{0, 1, 3, 4}));
  EXPECT_EQ(unit_power_residues(8, 2).elements, (std::vector<std::uint64_t>{1}));
  EXPECT_TRUE(power_residues(7, 3).contains(6));
  EXPECT_FALSE(power_residues(7, 3).contains(2));
}

TEST(PowerResidues, RefusesAboveThreshold) {
  EXPECT_THROW(power_residues(2'000'000, 2), ThresholdExceeded);
  EXPECT_THROW(power_residues(101, 2, 100), ThresholdExceeded);
  EXPECT_THROW(count_solutions_enumerated(Integer(1), 101, 2, 1, 100), ThresholdExceeded);
  EXPECT_NO_THROW(power_residues(100, 2, 100));
}

TEST(ScaledPowerResidueCount, Examples) {
  EXPECT_EQ(scaled_power_residue_count(4, 2, 2), 2u);
  EXPECT_EQ(scaled_power_residue_count(9, 2, 3), 2u);
  EXPECT_EQ(scaled_power_residue_count(7, 2, 1), 4u);
  EXPECT_EQ(scaled_power_residues(9, 2, 3).elements, (std::vector<std::uint64_t>{0, 3}));
  EXPECT_THROW(scaled_power_residue_count(7, 2, 0), PreconditionError);
}

TEST(IsPowerResidue, Examples) {
  EXPECT_TRUE(is_power_residue(Integer(2), 7, 2, 1));
  EXPECT_FALSE(is_power_residue(Integer(5), 8, 2, 1));
  for (std::uint64_t q : {1u, 2u, 8u, 9u, 360u, 1001u}) {
    EXPECT_TRUE(is_power_residue(Integer(0), q, 3, 5));
  }
  EXPECT_TRUE(is_power_residue(Integer(-5), 7, 2, 1));  // -5 = 2 (mod 7)
}

TEST(CountSolutions, Examples) {
  EXPECT_EQ(count_solutions(Integer(2), 7, 2, 1), 2u);
  EXPECT_EQ(count_solutions(Integer(0), 8, 2, 1), 2u);
  EXPECT_EQ(count_solutions(Integer(3), 5, 2, 1), 0u);
  EXPECT_EQ(count_solutions(Integer(0), 1, 2, 1), 1u);
}

// Checks the three closed forms against enumeration on one range.
void check_profiles(std::uint64_t qmax, unsigned dmax) {
  for (unsigned d = 2; d <= dmax; ++d) {
    for (std::uint64_t q = 1; q <= qmax; ++q) {
      ASSERT_EQ(power_residue_profile(q, d), power_residue_profile_enumerated(q, d))
          << "q=" << q << " d=" << d;
    }
  }
}

TEST(ClosedForms, MatchEnumeration) { check_profiles(700, 6); }

TEST(ClosedForms, ProfileInvariants) {
  for (unsigned d = 2; d <= 6; ++d) {
    for (std::uint64_t q = 1; q <= 3000; ++q) {
      const auto p = power_residue_profile(q, d);
      const std::uint64_t phi = euler_phi(factorize(q));
      ASSERT_EQ(phi % p.u, 0u);
      ASSERT_EQ(p.e, phi / p.u);
      ASSERT_LE(p.e, p.r);
      ASSERT_LE(p.r, q);
    }
  }
}

TEST(ClosedForms, Multiplicative) {
  std::mt19937_64 gen(17);
  int checked = 0;
  while (checked < 3000) {
    const std::uint64_t a = gen() % 2000 + 1, b = gen() % 2000 + 1;
    if (std::gcd(a, b) != 1) continue;
    ++checked;
    const unsigned d = 2 + static_cast<unsigned>(gen() % 5);
    const auto pa = power_residue_profile(a, d), pb = power_residue_profile(b, d),
               pab = power_residue_profile(a * b, d);
    ASSERT_EQ(pab.u, pa.u * pb.u);
    ASSERT_EQ(pab.e, pa.e * pb.e);
    ASSERT_EQ(pab.r, pa.r * pb.r);
  }
}

TEST(Membership, MatchesEnumerationForEveryResidue) {
  const std::vector<std::int64_t> scalars{1, -1, 2, 3, -6, 4, 12};
  for (unsigned d = 2; d <= 4; ++d) {
    for (std::int64_t a_d : scalars) {
      for (std::uint64_t q = 1; q <= 200; ++q) {
        const ResidueSet all = scaled_power_residues(q, d, a_d);
        // a_d G_d^x(q) by enumeration.
        std::vector<char> unit_class(q, 0);
        for (std::uint64_t m = 0; m < q; ++m) {
          if (std::gcd(m, q) == 1) {
            unit_class[mul_mod(reduce_signed(a_d, q), pow_mod(m, d, q), q)] = 1;
          }
        }
        for (std::uint64_t b = 0; b < q; ++b) {
          const Integer bb = to_integer(b);
          ASSERT_EQ(is_power_residue(bb, q, d, a_d), all.contains(b))
              << "b=" << b << " q=" << q << " d=" << d << " a_d=" << a_d;
          ASSERT_EQ(is_unit_power_residue(bb, q, d, a_d), unit_class[b] != 0)
              << "b=" << b << " q=" << q << " d=" << d << " a_d=" << a_d;
          ASSERT_EQ(count_solutions(bb, q, d, a_d), count_solutions_enumerated(bb, q, d, a_d))
              << "b=" << b << " q=" << q << " d=" << d << " a_d=" << a_d;
        }
      }
    }
  }
}

TEST(Membership, NegativeAndLargeRepresentatives) {
  std::mt19937_64 gen(23);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t q = gen() % 500 + 1;
    const std::int64_t b = static_cast<std::int64_t>(gen() % 2'000'000) - 1'000'000;
    const Integer bb = to_integer(b);
    const Integer shifted = bb + to_integer(q) * 123456789;
    ASSERT_EQ(count_solutions(bb, q, 3, -2), count_solutions_enumerated(bb, q, 3, -2));
    ASSERT_EQ(is_power_residue(bb, q, 3, -2), is_power_residue(shifted, q, 3, -2));
  }
}

TEST(BoundChains, SmallModuli) {
  for (unsigned d = 2; d <= 6; ++d) {
    for (std::int64_t a_d : {1, -3, 12}) {
      for (std::uint64_t q = 1; q <= 5000; ++q) {
        const Factorization f = factorize(q);
        const unsigned w = distinct_prime_count(f);
        const Integer scaled = to_integer(scaled_power_residue_count(q, d, a_d));
        const Integer four_d_w = ipow(to_integer(std::uint64_t{4} * d), w);
        ASSERT_LE(to_integer(q), scaled * four_d_w * to_integer(std::uint64_t(std::abs(a_d))));
        const Integer upper = ipow(Integer(2), w) * to_integer(divisor_count(f)) * to_integer(q);
        ASSERT_LE(to_integer(power_residue_count(f, d)), upper);
        const std::uint64_t u = unity_roots_count(f, d);
        ASSERT_GE(u, 1u);
        ASSERT_LE(to_integer(u), ipow(to_integer(std::uint64_t{2} * d), w));
      }
    }
  }
}

TEST(HenselLift, Examples) {
  const IntPolynomial cubic = IntPolynomial::monomial(3, 1);
  EXPECT_EQ(hensel_lift(Integer(3), Integer(2), 5, cubic), Integer(3));
  const IntPolynomial square = IntPolynomial::monomial(2, 1);
  EXPECT_EQ(hensel_lift(Integer(10), Integer(2), 7, square), Integer(3));
  // Unit solution: b = a_d, p~ = 1.
  const IntPolynomial quartic = IntPolynomial::parse("3,-1,0,5,-2");
  const Integer p = hensel_lift(Integer(1), Integer(2), 15, quartic);
  EXPECT_EQ(p % 15, 1);
  EXPECT_LT(p, 3375);
  const Integer eq2 = quartic.eval_scaled(p, Integer(15)) + 2;
  EXPECT_EQ(eq2 % 3375, 0);
}

TEST(HenselLift, RejectsInadmissibleInput) {
  const IntPolynomial square = IntPolynomial::monomial(2, 1);
  EXPECT_THROW(hensel_lift(Integer(2), Integer(3), 7, square), PreconditionError);  // 4 != 3
  EXPECT_THROW(hensel_lift(Integer(1), Integer(1), 4, square), PreconditionError);  // 2 | q
  EXPECT_THROW(hensel_lift(Integer(0), Integer(0), 5, IntPolynomial::monomial(3, 1)),
               PreconditionError);
  EXPECT_THROW(hensel_lift(Integer(1), Integer(5), 5, IntPolynomial::monomial(3, 5)),
               PreconditionError);  // 5 | a_d
  EXPECT_THROW(hensel_lift(Integer(1), Integer(1), 3, IntPolynomial::monomial(3, 1)),
               PreconditionError);  // 3 | d
}

TEST(HenselLift, RandomRoundTripAndUniqueness) {
  std::mt19937_64 gen(29);
  int lifted = 0;
  while (lifted < 150) {
    const unsigned d = 2 + static_cast<unsigned>(gen() % 3);
    const std::uint64_t q = gen() % 200 + 2;
    std::vector<Integer> coeffs(d + 1);
    for (auto& c : coeffs) c = static_cast<long>(gen() % 11) - 5;
    const std::int64_t a_d = static_cast<std::int64_t>(gen() % 7) - 3;
    if (a_d == 0) continue;
    coeffs[d] = -to_integer(a_d);
    const IntPolynomial poly(coeffs);
    const std::uint64_t pt = gen() % q;
    if (std::gcd(q, pt * d * static_cast<std::uint64_t>(std::abs(a_d))) != 1) continue;
    const Integer b = to_integer(a_d) * ipow(to_integer(pt), d) + to_integer(q) * (long)(gen() % 9);
    const Integer p = hensel_lift(to_integer(pt), b, q, poly);
    const Integer modulus = ipow(to_integer(q), d - 1);
    ASSERT_GE(p, 0);
    ASSERT_LT(p, modulus);
    const Integer residual = poly.eval_scaled(p, to_integer(q)) + b;
    ASSERT_TRUE(mpz_divisible_p(residual.get_mpz_t(), modulus.get_mpz_t()));
    ASSERT_EQ(Integer(p % to_integer(q)), to_integer(pt));
    // Uniqueness per prime power: no other x = p~ (mod pi^k) solves the
    // congruence modulo pi^(k(d-1)).
    const Factorization f = factorize(q);
    for (const auto& pp : f.factors()) {
      const Integer pik = ipow(to_integer(pp.prime), pp.exponent);
      const Integer target = ipow(to_integer(pp.prime), pp.exponent * (d - 1));
      if (target > 200'000) continue;
      int roots = 0;
      for (Integer x = Integer(to_integer(pt) % pik); x < target; x += pik) {
        const Integer r = poly.eval_scaled(x, to_integer(q)) + b;
        if (mpz_divisible_p(r.get_mpz_t(), target.get_mpz_t())) ++roots;
      }
      ASSERT_EQ(roots, 1) << "q=" << q << " prime=" << pp.prime;
    }
    ++lifted;
  }
}

}  // namespace
}  // namespace dapprox
