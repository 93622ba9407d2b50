#include "zsig/factor.hpp"
#include "zsig/primality.hpp"

#include <gtest/gtest.h>

using namespace zsig;

namespace {

bool naive_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

BigInt product(const Factorization& f) { return f.factored_part() * f.cofactor; }

}  // namespace

TEST(IsPrime, Examples) {
    EXPECT_FALSE(is_prime(1));
    EXPECT_TRUE(is_prime(31));
    EXPECT_FALSE(is_prime(57));
    EXPECT_FALSE(is_prime(0));
}

TEST(IsPrime, MatchesTrialDivision) {
    for (std::uint64_t n = 0; n <= 200000; ++n) ASSERT_EQ(is_prime_u64(n), naive_prime(n)) << n;
}

TEST(IsPrime, StrongPseudoprimes) {
    // Smallest strong pseudoprimes to the first k prime bases.
    for (const char* s : {"2047", "1373653", "25326001", "3215031751", "2152302898747", "3474749660383",
                          "341550071728321", "3825123056546413051", "318665857834031151167461",
                          "3317044064679887385961981"})
        EXPECT_FALSE(is_prime(BigInt(s))) << s;
    EXPECT_FALSE(is_prime_u64(3215031751ull));
    EXPECT_TRUE(is_prime_u64(18446744073709551557ull));
    EXPECT_TRUE(is_prime(BigInt("170141183460469231731687303715884105727")));   // 2^127 - 1
    EXPECT_FALSE(is_prime(BigInt("170141183460469231731687303715884105729")));
}

TEST(Factorize, Examples) {
    const FactorBudget budget;
    auto f = factorize(63, budget);
    ASSERT_TRUE(f.complete);
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.exponent_of(3), 2u);
    EXPECT_EQ(f.exponent_of(7), 1u);

    f = factorize(1, budget);
    EXPECT_TRUE(f.complete);
    EXPECT_TRUE(f.factors.empty());

    // 2^18 - 1, confirmed by trial division.
    f = factorize(262143, budget);
    ASSERT_TRUE(f.complete);
    ASSERT_EQ(f.factors.size(), 4u);
    EXPECT_EQ(f.exponent_of(3), 3u);
    EXPECT_EQ(f.exponent_of(7), 1u);
    EXPECT_EQ(f.exponent_of(19), 1u);
    EXPECT_EQ(f.exponent_of(73), 1u);
    EXPECT_THROW(factorize(0, budget), InvalidArgument);
}

TEST(Factorize, SmallRangeReconstructs) {
    FactorBudget budget;
    budget.trial_bound = 50;
    for (unsigned long x = 1; x <= 20000; ++x) {
        const auto f = factorize(x, budget);
        ASSERT_TRUE(f.complete);
        EXPECT_EQ(product(f), x);
        for (const auto& pp : f.factors) EXPECT_TRUE(is_prime(pp.prime));
    }
}

TEST(Factorize, RhoAndEcmSplits) {
    FactorBudget budget;
    budget.trial_bound = 1000;
    // Two 31-bit primes: rho territory.
    const BigInt a = BigInt(2147483647) * BigInt(2147483629);
    auto f = factorize(a, budget);
    ASSERT_TRUE(f.complete);
    EXPECT_EQ(f.factors.size(), 2u);
    EXPECT_TRUE(f.all_proven());

    // 2^128 + 1 = 59649589127497217 * 5704689200685129054721.
    const BigInt fermat7 = pow(BigInt(2), 128) + 1;
    f = factorize(fermat7, budget);
    ASSERT_TRUE(f.complete);
    EXPECT_EQ(f.exponent_of(BigInt("59649589127497217")), 1u);
    EXPECT_EQ(f.exponent_of(BigInt("5704689200685129054721")), 1u);
    EXPECT_TRUE(f.all_proven());
}

TEST(Factorize, PerfectPowers) {
    const BigInt p = BigInt("1000000007");
    const auto f = factorize(pow(p, 5) * 8, FactorBudget{});
    ASSERT_TRUE(f.complete);
    EXPECT_EQ(f.exponent_of(p), 5u);
    EXPECT_EQ(f.exponent_of(2), 3u);
}

TEST(Factorize, ExhaustedBudgetIsReported) {
    FactorBudget budget;
    budget.trial_bound = 100;
    budget.rho_steps = 1;
    budget.ecm_curves = 0;
    const BigInt semi = BigInt("1000000007") * BigInt("998244353");
    const auto f = factorize(semi, budget);
    EXPECT_FALSE(f.complete);
    EXPECT_EQ(product(f), semi);
    EXPECT_NE(f.cofactor, 1);
}
