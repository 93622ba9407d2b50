#include "zsig/zsigmondy.hpp"

#include <gtest/gtest.h>

using namespace zsig;

namespace {

std::vector<BigInt> primes_of(const std::vector<ZsigPrime>& v) {
    std::vector<BigInt> out;
    for (const auto& z : v) out.push_back(z.prime);
    return out;
}

bool power_of_two(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

}  // namespace

TEST(ZsigmondyPrimes, Examples) {
    EXPECT_TRUE(zsigmondy_primes(Triple(2, 1, 6)).empty());
    EXPECT_EQ(zsigmondy_primes(Triple(2, 1, 4)), (std::vector<ZsigPrime>{{5, 1}}));
    EXPECT_EQ(zsigmondy_primes(Triple(2, 1, 18)), (std::vector<ZsigPrime>{{19, 1}}));
    EXPECT_TRUE(zsigmondy_primes(Triple(5, 3, 2)).empty());
}

TEST(ZsigmondyPrimes, BudgetExhaustionThrowsWithPartialData) {
    FactorBudget tiny;
    tiny.trial_bound = 10;
    tiny.rho_steps = 1;
    tiny.ecm_curves = 0;
    // Phi_31(2,1) = 2^31 - 1 is prime, so choose a composite with two large factors:
    // Phi_29(2,1) = 233 * 1103 * 2089.
    try {
        (void)zsigmondy_primes(Triple(2, 1, 29), tiny);
        FAIL() << "expected FactorizationIncomplete";
    } catch (const FactorizationIncomplete& e) {
        EXPECT_FALSE(e.partial().complete);
        EXPECT_EQ(e.partial().factored_part() * e.partial().cofactor, eval_homogeneous(29, 2, 1));
    }
}

TEST(LargeZsigmondyPrimes, Examples) {
    EXPECT_EQ(primes_of(large_zsigmondy_primes(Triple(2, 1, 5))), std::vector<BigInt>{31});
    EXPECT_TRUE(large_zsigmondy_primes(Triple(2, 1, 4)).empty());
    EXPECT_EQ(primes_of(large_zsigmondy_primes(Triple(7, 2, 2))), std::vector<BigInt>{3});
}

TEST(LargeZsigmondyPrimes, MThreshold) {
    // 31 > 5M + 1 holds for M <= 5 only.
    EXPECT_EQ(large_zsigmondy_primes(Triple(2, 1, 5), {}, 5).size(), 1u);
    EXPECT_TRUE(large_zsigmondy_primes(Triple(2, 1, 5), {}, 6).empty());
    EXPECT_THROW(large_zsigmondy_primes(Triple(2, 1, 5), {}, 0), InvalidArgument);
}

TEST(ClassifyPrimeDivisor, Examples) {
    auto c = classify_prime_divisor(2, Triple(3, 1, 4));
    EXPECT_EQ(c.kind, DivisorCase::TwoPower);
    EXPECT_EQ(c.beta, 2u);
    c = classify_prime_divisor(5, Triple(3, 1, 4));
    EXPECT_EQ(c.kind, DivisorCase::Zsigmondy);
    EXPECT_EQ(c.k, 4u);
    c = classify_prime_divisor(3, Triple(2, 1, 18));
    EXPECT_EQ(c.kind, DivisorCase::LargestPrime);
    EXPECT_EQ(c.k, 2u);
    EXPECT_EQ(c.beta, 2u);
    EXPECT_THROW(classify_prime_divisor(5, Triple(2, 1, 18)), InvalidArgument);
    EXPECT_THROW(classify_prime_divisor(9, Triple(2, 1, 18)), InvalidArgument);
}

TEST(ClassifyPrimeDivisor, EveryPrimeFitsOneCase) {
    for (unsigned long a = 2; a <= 12; ++a)
        for (unsigned long b = 1; b < a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (std::uint64_t n = 1; n <= 40; ++n) {
                const Triple t(a, b, n);
                const auto f = factorize(eval_homogeneous(t), FactorBudget{});
                ASSERT_TRUE(f.complete);
                for (const auto& pp : f.factors) EXPECT_NO_THROW(classify_prime_divisor(pp.prime, t)) << t.to_string();
            }
        }
}

TEST(ZsigmondyPrimes, BruteForceOverPowerDifferences) {
    // A prime of order exactly n divides Phi_n(a,b); one that is not large is n + 1.
    for (unsigned long a = 2; a <= 10; ++a)
        for (unsigned long b = 1; b < a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (std::uint64_t n = 1; n <= 24; ++n) {
                const Triple t(a, b, n);
                const BigInt diff = pow(BigInt(a), n) - pow(BigInt(b), n);
                const auto f = factorize(diff, FactorBudget{});
                ASSERT_TRUE(f.complete);
                std::vector<ZsigPrime> brute;
                for (const auto& pp : f.factors) {
                    bool earlier = false;
                    for (std::uint64_t m = 1; m < n && !earlier; ++m) {
                        const BigInt dm = pow(BigInt(a), m) - pow(BigInt(b), m);
                        earlier = mpz_divisible_p(dm.get_mpz_t(), pp.prime.get_mpz_t()) != 0;
                    }
                    if (earlier) continue;
                    const BigInt phi = eval_homogeneous(t);
                    EXPECT_TRUE(mpz_divisible_p(phi.get_mpz_t(), pp.prime.get_mpz_t())) << t.to_string();
                    brute.push_back({pp.prime, pp.exponent});
                    const bool large = pp.exponent >= 2 || pp.prime > n + 1;
                    if (!large) EXPECT_EQ(pp.prime, n + 1) << t.to_string();
                }
                EXPECT_EQ(zsigmondy_primes(t), brute) << t.to_string();
            }
        }
}

TEST(ZsigmondyPrimes, ClassicExceptionsOnly) {
    for (unsigned long a = 2; a <= 14; ++a)
        for (unsigned long b = 1; b < a; ++b) {
            if (std::gcd(a, b) != 1) continue;
            for (std::uint64_t n = 2; n <= 30; ++n) {
                const Triple t(a, b, n);
                const bool expected_empty = (a == 2 && b == 1 && n == 6) || (n == 2 && power_of_two(a + b));
                EXPECT_EQ(zsigmondy_primes(t).empty(), expected_empty) << t.to_string();
            }
        }
}

TEST(FastDecision, Examples) {
    auto d = has_large_zsigmondy_fast(Triple(2, 1, 12));
    EXPECT_FALSE(d.has_large);
    EXPECT_FALSE(d.stripped_prime.has_value());
    EXPECT_EQ(d.zsigmondy_part, 13);
    d = has_large_zsigmondy_fast(Triple(3, 2, 12));
    EXPECT_TRUE(d.has_large);
    EXPECT_EQ(d.phi_value, 61);
    d = has_large_zsigmondy_fast(Triple(5, 1, 2));
    EXPECT_FALSE(d.has_large);
    EXPECT_EQ(d.zsigmondy_part, 3);
    EXPECT_EQ(d.stripped_exponent, 1u);
}

TEST(Sufficiency, Examples) {
    EXPECT_TRUE(sufficiency_check(Triple(2, 1, 7)));
    EXPECT_FALSE(sufficiency_check(Triple(2, 1, 18)));
    EXPECT_FALSE(sufficiency_check(Triple(2, 1, 6)));
    EXPECT_THROW(sufficiency_check(Triple(2, 1, 2)), InvalidArgument);
}

TEST(ClassifyException, Examples) {
    EXPECT_EQ(classify_exception(Triple(5, 4, 6)).kind, ExceptionKind::CaseIII_N6);
    EXPECT_EQ(classify_exception(Triple(7, 2, 2)).kind, ExceptionKind::None);
    EXPECT_EQ(classify_exception(Triple(2, 1, 10)).kind, ExceptionKind::CaseIV_N10_12_18);
    EXPECT_EQ(classify_exception(Triple(2, 1, 6)).kind, ExceptionKind::ZsigClassic216);
    EXPECT_EQ(classify_exception(Triple(2, 1, 4)).kind, ExceptionKind::CaseII_N4);

    const auto e = classify_exception(Triple(7, 5, 2));  // a + b = 12 = 2^2 * 3
    EXPECT_EQ(e.kind, ExceptionKind::CaseI_N2);
    EXPECT_EQ(e.s, 2u);
    EXPECT_EQ(e.t, 1u);
    const auto c = classify_exception(Triple(5, 3, 2));  // 8 = 2^3
    EXPECT_EQ(c.kind, ExceptionKind::ZsigClassicN2);
    EXPECT_EQ(c.s, 3u);
    EXPECT_EQ(c.t, 0u);
}

TEST(Analyze, Examples) {
    auto r = analyze(Triple(2, 1, 6));
    EXPECT_FALSE(r.has_zsigmondy);
    EXPECT_FALSE(r.has_large);
    EXPECT_EQ(r.exception.kind, ExceptionKind::ZsigClassic216);
    EXPECT_TRUE(r.consistent());

    r = analyze(Triple(3, 1, 6));
    EXPECT_TRUE(r.has_zsigmondy);
    EXPECT_EQ(primes_of(r.zsig_primes), std::vector<BigInt>{7});
    EXPECT_FALSE(r.has_large);
    EXPECT_EQ(r.exception.kind, ExceptionKind::CaseIII_N6);
    EXPECT_TRUE(r.consistent());

    r = analyze(Triple(4, 3, 2));
    EXPECT_TRUE(r.has_large);
    EXPECT_EQ(primes_of(r.large_zsig_primes), std::vector<BigInt>{7});
    EXPECT_EQ(r.exception.kind, ExceptionKind::None);
    EXPECT_TRUE(r.consistent());
}

TEST(Analyze, TableOmissionsAreFlagged) {
    // Phi_10(3,2) = 55 = 5 * 11 and Phi_6(5,1) = 21 = 3 * 7: the only
    // Zsigmondy prime is n + 1 and no table case lists the triple.
    for (const Triple& t : {Triple(3, 2, 10), Triple(5, 1, 6)}) {
        const auto r = analyze(t);
        EXPECT_TRUE(r.factorization_complete);
        EXPECT_FALSE(r.has_large) << t.to_string();
        EXPECT_FALSE(r.fast.has_large) << t.to_string();
        EXPECT_EQ(r.exception.kind, ExceptionKind::None);
        ASSERT_EQ(r.violations.size(), 1u);
        EXPECT_NE(r.violations[0].find("exception table"), std::string::npos);
    }
}

TEST(Analyze, IncompleteFactorizationIsInBand) {
    FactorBudget tiny;
    tiny.trial_bound = 10;
    tiny.rho_steps = 1;
    tiny.ecm_curves = 0;
    const auto r = analyze(Triple(2, 1, 29), tiny);
    EXPECT_FALSE(r.factorization_complete);
    EXPECT_TRUE(r.has_large);
}
