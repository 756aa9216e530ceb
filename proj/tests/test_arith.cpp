#include <random>

#include <gtest/gtest.h>

#include "acft/arith.hpp"
#include "oracles.hpp"

using namespace acft;

TEST(Factorize, SmallValues) {
  EXPECT_TRUE(factorize(1).factors.empty());
  EXPECT_EQ(factorize(63).factors, (std::vector<PrimePower>{{3, 2}, {7, 1}}));
  EXPECT_EQ(factorize(5460).factors,
            (std::vector<PrimePower>{{2, 2}, {3, 1}, {5, 1}, {7, 1}, {13, 1}}));
}

TEST(Factorize, ReexpandsAndPrimesIncrease) {
  std::mt19937_64 rng(7);
  std::vector<u64> inputs;
  for (u64 n = 1; n <= 20000; ++n) inputs.push_back(n);
  for (int i = 0; i < 2000; ++i) inputs.push_back(rng() | 1);
  inputs.push_back(18446744073709551557ull);             // largest 64-bit prime
  inputs.push_back(4294967291ull * 4294967279ull);       // two 32-bit primes
  inputs.push_back(1000003ull * 1000033ull * 1000037ull);
  for (u64 n : inputs) {
    const auto f = factorize(n);
    ASSERT_EQ(f.expand(), n) << n;
    ASSERT_EQ(f.value, n);
    for (std::size_t i = 0; i < f.factors.size(); ++i) {
      ASSERT_TRUE(is_prime(f.factors[i].prime)) << n;
      ASSERT_GE(f.factors[i].exponent, 1u);
      if (i) ASSERT_LT(f.factors[i - 1].prime, f.factors[i].prime);
    }
  }
}

TEST(IsPrime, AgreesWithTrialDivision) {
  for (u64 n = 0; n < 100000; ++n) ASSERT_EQ(is_prime(n), oracle::is_prime(n)) << n;
  EXPECT_FALSE(is_prime(3215031751ull));  // strong pseudoprime to 2,3,5,7
  EXPECT_FALSE(is_prime(3825123056546413051ull));
}

TEST(EulerPhi, Examples) {
  EXPECT_EQ(euler_phi(u64{1}), 1u);
  EXPECT_EQ(euler_phi(u64{21}), 12u);
  EXPECT_EQ(euler_phi(u64{63}), 36u);
}

TEST(EulerPhi, CountsCoprimeResidues) {
  for (u64 n = 1; n <= 3000; ++n) ASSERT_EQ(euler_phi(n), oracle::phi(n)) << n;
}

TEST(EulerPhi, MatchesTotientSieveToOneMillion) {
  constexpr u64 N = 1'000'000;
  std::vector<u64> phi(N + 1);
  for (u64 i = 0; i <= N; ++i) phi[i] = i;
  for (u64 p = 2; p <= N; ++p)
    if (phi[p] == p)
      for (u64 k = p; k <= N; k += p) phi[k] -= phi[k] / p;
  for (u64 n = 1; n <= N; ++n) ASSERT_EQ(euler_phi(n), phi[n]) << n;
}

TEST(Kronecker, Examples) {
  EXPECT_EQ(kronecker_symbol(-1, 7), -1);
  EXPECT_EQ(kronecker_symbol(-20, 3), 1);
  for (i64 a = -50; a <= 50; ++a) EXPECT_EQ(kronecker_symbol(a, 1), 1);
}

TEST(Kronecker, LegendreByEulerCriterion) {
  for (u64 p = 3; p < 300; ++p) {
    if (!oracle::is_prime(p)) continue;
    for (i64 a = -300; a <= 300; ++a) {
      const u64 r = static_cast<u64>(((a % static_cast<i64>(p)) + static_cast<i64>(p)) % static_cast<i64>(p));
      int expect = 0;
      if (r != 0) expect = detail::powmod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
      ASSERT_EQ(kronecker_symbol(a, static_cast<i64>(p)), expect) << a << " " << p;
    }
  }
}

TEST(Kronecker, MultiplicativeInTopArgument) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<i64> top(-100000, 100000);
  std::uniform_int_distribution<i64> bottom(0, 50000);
  for (int i = 0; i < 20000; ++i) {
    const i64 a = top(rng), b = top(rng), n = 2 * bottom(rng) + 1;
    ASSERT_EQ(kronecker_symbol(a * b, n), kronecker_symbol(a, n) * kronecker_symbol(b, n));
  }
}

TEST(Misc, IsqrtAndSquares) {
  for (u64 n = 0; n < 100000; ++n) {
    const u64 r = isqrt(n);
    ASSERT_LE(r * r, n);
    ASSERT_GT((r + 1) * (r + 1), n);
  }
  const u64 big = 4294967295ull;
  EXPECT_EQ(isqrt(~u64{0}), big);
  EXPECT_TRUE(is_square(big * big));
  EXPECT_FALSE(is_square(big * big - 1));
}

TEST(Misc, CrtValuationDivisors) {
  EXPECT_EQ(crt({{2, 3}, {3, 5}, {2, 7}}), 23u);
  EXPECT_EQ(valuation(5460, 2), 2u);
  EXPECT_EQ(divisors(12), (std::vector<u64>{1, 2, 3, 4, 6, 12}));
  EXPECT_TRUE(is_squarefree(1));
  EXPECT_FALSE(is_squarefree(12));
  EXPECT_EQ(big_pow(3, 40).str(), "12157665459056928801");
}
