#pragma once

// Zsigmondy and large Zsigmondy primes of (a, b, n).
//
// A prime q is a Zsigmondy prime of (a, b, n) when q | a^n - b^n but
// q does not divide a^m - b^m for 1 <= m < n, i.e. the order of a/b mod q is n.
// It is large when q^2 | a^n - b^n or q > n + 1 (more generally q > M n + 1).
//
// Every Zsigmondy prime divides Phi_n(a, b), and Phi_n(a, b) has at most one
// prime divisor that is not a Zsigmondy prime: 2 when n is a power of two,
// otherwise P(n), the largest prime factor of n, and then only to the first
// power (all of v_2(a + b) when n = 2). That gives three independent ways to
// decide whether a large Zsigmondy prime exists:
//
//   * factor Phi_n(a, b) and test each prime (large_zsigmondy_primes);
//   * strip the single non-Zsigmondy prime from Phi_n(a, b) and compare the
//     remaining part C' with n + 1 (has_large_zsigmondy_fast). Each
//     Zsigmondy prime is 1 mod n, so C' = 1 means there are none,
//     C' = n + 1 means exactly one and it is not large, and C' > n + 1
//     forces a prime above n + 1 or a repeated n + 1;
//   * look the triple up in the finite exception table (classify_exception).
//
// analyze() runs all three and records any disagreement.

#include "zsig/arith.hpp"
#include "zsig/bigint.hpp"
#include "zsig/cyclotomic.hpp"
#include "zsig/factor.hpp"
#include "zsig/valuation.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace zsig {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

enum class DivisorCase {
    TwoPower,      // p = 2 and n = 2^beta
    Zsigmondy,     // p >= 3 and the order of a/b mod p is n
    LargestPrime,  // p = P(n) >= 3, n = p^beta k, v_p(Phi_n(a,b)) = 1
};

struct PrimeDivisorClass {
    DivisorCase kind;
    BigInt p;
    std::uint64_t k = 0;  // order of a/b mod p
    unsigned beta = 0;    // exponent of p in n (TwoPower: n = 2^beta)
};

enum class ExceptionKind {
    None,
    ZsigClassicN2,    // n = 2, a + b = 2^s: no Zsigmondy prime at all
    ZsigClassic216,   // (2, 1, 6): no Zsigmondy prime at all
    CaseI_N2,         // n = 2, a + b = 3 * 2^s
    CaseII_N4,        // n = 4, (a, b) in {(2,1), (3,1)}
    CaseIII_N6,       // n = 6, (a, b) in {(3,1), (3,2), (5,4)}
    CaseIV_N10_12_18  // n in {10, 12, 18}, (a, b) = (2, 1)
};

struct ExceptionCase {
    ExceptionKind kind = ExceptionKind::None;
    // For the n = 2 variants: a + b = 2^s 3^t.
    unsigned s = 0;
    unsigned t = 0;

    bool is_exception() const { return kind != ExceptionKind::None; }
    friend bool operator==(const ExceptionCase&, const ExceptionCase&) = default;
};

inline std::string_view to_string(ExceptionKind k) {
    switch (k) {
        case ExceptionKind::None: return "None";
        case ExceptionKind::ZsigClassicN2: return "ZsigClassicN2";
        case ExceptionKind::ZsigClassic216: return "ZsigClassic216";
        case ExceptionKind::CaseI_N2: return "CaseI_N2";
        case ExceptionKind::CaseII_N4: return "CaseII_N4";
        case ExceptionKind::CaseIII_N6: return "CaseIII_N6";
        case ExceptionKind::CaseIV_N10_12_18: return "CaseIV_N10_12_18";
    }
    return "?";
}

inline std::string_view to_string(DivisorCase c) {
    switch (c) {
        case DivisorCase::TwoPower: return "TwoPowerCase";
        case DivisorCase::Zsigmondy: return "ZsigmondyCase";
        case DivisorCase::LargestPrime: return "LargestPrimeCase";
    }
    return "?";
}

/// A Zsigmondy prime together with v_q(a^n - b^n).
struct ZsigPrime {
    BigInt prime;
    unsigned exponent = 0;
    friend bool operator==(const ZsigPrime&, const ZsigPrime&) = default;
};

struct FastDecision {
    bool has_large = false;
    BigInt phi_value;
    /// Phi_n(a, b) with the non-Zsigmondy prime removed: a product of Zsigmondy primes.
    BigInt zsigmondy_part;
    /// The removed prime and how often it was removed (nullopt if it did not divide).
    std::optional<BigInt> stripped_prime;
    unsigned stripped_exponent = 0;
};

struct ZsigReport {
    explicit ZsigReport(Triple t, std::uint64_t m = 1) : triple(std::move(t)), M(m) {}

    Triple triple;
    std::uint64_t M = 1;
    BigInt phi_value;
    Factorization factorization;
    std::vector<PrimeDivisorClass> classes;
    std::vector<ZsigPrime> zsig_primes;
    std::vector<ZsigPrime> large_zsig_primes;
    bool has_zsigmondy = false;
    bool has_large = false;
    ExceptionCase exception;
    bool factorization_complete = true;
    FastDecision fast;
    std::optional<bool> sufficiency;  // n >= 3 only
    std::optional<bool> bounds_ok;    // n >= 3 only
    /// Failed cross-checks; empty when every route agrees.
    std::vector<std::string> violations;

    bool consistent() const { return violations.empty(); }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Zsigmondy primes among the prime factors of Phi_n(a, b).
inline std::vector<ZsigPrime> zsigmondy_from(const Triple& t, const Factorization& f) {
    std::vector<ZsigPrime> out;
    for (const auto& pp : f.factors) {
        if (multiplicative_order_dividing(pp.prime, t.a, t.b, t.n) == t.n) out.push_back({pp.prime, pp.exponent});
    }
    return out;
}

inline std::vector<ZsigPrime> large_from(const Triple& t, const std::vector<ZsigPrime>& zs, std::uint64_t M) {
    const BigInt threshold = big(M) * big(t.n) + 1;
    std::vector<ZsigPrime> out;
    for (const auto& z : zs)
        if (z.exponent >= 2 || z.prime > threshold) out.push_back(z);
    return out;
}

}  // namespace detail

/// Primes q | Phi_n(a, b) of order exactly n, ascending, with v_q(a^n - b^n).
/// Throws FactorizationIncomplete when the budget does not suffice.
inline std::vector<ZsigPrime> zsigmondy_primes(const Triple& t, const FactorBudget& budget = {}) {
    const Factorization f = factorize(eval_homogeneous(t), budget);
    if (!f.complete) throw FactorizationIncomplete(f);
    return detail::zsigmondy_from(t, f);
}

/// Zsigmondy primes q with q^2 | a^n - b^n or q > M n + 1.
inline std::vector<ZsigPrime> large_zsigmondy_primes(const Triple& t, const FactorBudget& budget = {},
                                                     std::uint64_t M = 1) {
    if (M < 1) throw InvalidArgument("M must be >= 1");
    return detail::large_from(t, zsigmondy_primes(t, budget), M);
}

/// Which kind of prime divisor of Phi_n(a, b) p is. Throws InvalidArgument if
/// p is not a prime divisor, std::logic_error if no case applies.
inline PrimeDivisorClass classify_prime_divisor(const BigInt& p, const Triple& t) {
    if (!is_prime(p)) throw InvalidArgument(p.get_str() + " is not prime");
    const BigInt phi = eval_homogeneous(t);
    if (!mpz_divisible_p(phi.get_mpz_t(), p.get_mpz_t()))
        throw InvalidArgument(p.get_str() + " does not divide Phi_n(a,b)");
    const std::uint64_t n = t.n;

    if (p == 2) {
        // n = 1 is the degenerate 2^0 instance: 2 | a - b.
        const unsigned beta = vp_u64(n, 2);
        if (!detail::is_power_of_two(n))
            throw std::logic_error("2 divides Phi_n(a,b) but n is not a power of two: " + t.to_string());
        return {DivisorCase::TwoPower, p, 1, beta};
    }

    const std::uint64_t k = multiplicative_order_dividing(p, t.a, t.b, n);
    if (k == n) return {DivisorCase::Zsigmondy, p, k, 0};

    const std::uint64_t pp = to_u64(p);  // p | n here, so it fits
    const std::uint64_t m = n / k;
    const unsigned beta = vp_u64(m, pp);
    std::uint64_t check = k;
    for (unsigned i = 0; i < beta; ++i) check *= pp;
    if (beta == 0 || check != n)
        throw std::logic_error("prime " + p.get_str() + " of order " + std::to_string(k) + " fits no case for " +
                               t.to_string());
    if (pp != largest_prime_divisor(n))
        throw std::logic_error("non-Zsigmondy prime " + p.get_str() + " is not P(n) for " + t.to_string());
    if (vp_cyclotomic(p, t.a, t.b, n) != 1)
        throw std::logic_error("v_p(Phi_n) != 1 for P(n) = " + p.get_str() + " at " + t.to_string());
    return {DivisorCase::LargestPrime, p, k, beta};
}

/// Factorization-free decision; see the header comment for the argument.
inline FastDecision has_large_zsigmondy_fast(const Triple& t) {
    if (t.n < 2) throw InvalidArgument("n must be >= 2");
    FastDecision d;
    d.phi_value = eval_homogeneous(t);
    d.zsigmondy_part = d.phi_value;
    const BigInt p = big(largest_prime_divisor(t.n));
    if (mpz_divisible_p(d.zsigmondy_part.get_mpz_t(), p.get_mpz_t())) {
        d.stripped_prime = p;
        if (t.n == 2) {
            BigInt rest;
            d.stripped_exponent =
                static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), d.zsigmondy_part.get_mpz_t(), p.get_mpz_t()));
            d.zsigmondy_part = rest;
        } else {
            d.zsigmondy_part /= p;
            d.stripped_exponent = 1;
            if (mpz_divisible_p(d.zsigmondy_part.get_mpz_t(), p.get_mpz_t()))
                throw std::logic_error("P(n)^2 divides Phi_n(a,b) for " + t.to_string());
        }
    }
    d.has_large = d.zsigmondy_part > big(t.n) + 1;
    return d;
}

/// (n + 1) P(n) < Phi_n(a, b). True implies a large Zsigmondy prime exists.
inline bool sufficiency_check(const Triple& t) {
    if (t.n < 3) throw InvalidArgument("sufficiency_check needs n >= 3");
    return (big(t.n) + 1) * big(largest_prime_divisor(t.n)) < eval_homogeneous(t);
}

/// Table lookup against the exceptions to the existence of large Zsigmondy
/// primes. Pure pattern matching; the only arithmetic is the odd part of a + b.
inline ExceptionCase classify_exception(const Triple& t) {
    if (t.n < 2) throw InvalidArgument("n must be >= 2");
    auto is = [&](unsigned long a, unsigned long b) { return t.a == a && t.b == b; };
    ExceptionCase e;
    switch (t.n) {
        case 2: {
            BigInt sum = t.a + t.b, odd;
            e.s = static_cast<unsigned>(mpz_remove(odd.get_mpz_t(), sum.get_mpz_t(), BigInt(2).get_mpz_t()));
            if (odd == 1) {
                e.kind = ExceptionKind::ZsigClassicN2;
            } else if (odd == 3) {
                e.kind = ExceptionKind::CaseI_N2;
                e.t = 1;
            } else {
                e.s = 0;
            }
            return e;
        }
        case 4:
            if (is(2, 1) || is(3, 1)) e.kind = ExceptionKind::CaseII_N4;
            return e;
        case 6:
            if (is(2, 1)) e.kind = ExceptionKind::ZsigClassic216;
            else if (is(3, 1) || is(3, 2) || is(5, 4)) e.kind = ExceptionKind::CaseIII_N6;
            return e;
        case 10:
        case 12:
        case 18:
            if (is(2, 1)) e.kind = ExceptionKind::CaseIV_N10_12_18;
            return e;
        default: return e;
    }
}

/// Full report for one triple with every cross-check recorded in violations.
/// An exhausted factorization budget is reported through
/// factorization_complete = false; has_large then falls back to the fast decision.
inline ZsigReport analyze(const Triple& t, const FactorBudget& budget = {}, std::uint64_t M = 1) {
    if (t.n < 2) throw InvalidArgument("n must be >= 2");
    if (M < 1) throw InvalidArgument("M must be >= 1");
    ZsigReport r(t, M);
    auto violate = [&](std::string what) { r.violations.push_back(std::move(what)); };

    r.fast = has_large_zsigmondy_fast(t);
    r.phi_value = r.fast.phi_value;
    r.exception = classify_exception(t);
    r.factorization = factorize(r.phi_value, budget);
    r.factorization_complete = r.factorization.complete;

    for (const auto& pp : r.factorization.factors) {
        try {
            r.classes.push_back(classify_prime_divisor(pp.prime, t));
        } catch (const std::logic_error& e) {
            violate(std::string("classification: ") + e.what());
        }
    }
    r.zsig_primes = detail::zsigmondy_from(t, r.factorization);
    r.large_zsig_primes = detail::large_from(t, r.zsig_primes, M);

    const BigInt n1 = big(t.n) + 1;
    for (const auto& z : r.zsig_primes) {
        if (!mpz_divisible_ui_p(BigInt(z.prime - 1).get_mpz_t(), t.n))
            violate("Zsigmondy prime " + z.prime.get_str() + " is not 1 mod n");
        if (detail::vp_power_difference(z.prime, t.a, t.b, big(t.n)) != z.exponent)
            violate("v_q(a^n-b^n) differs from v_q(Phi_n) for q = " + z.prime.get_str());
        const bool large = z.exponent >= 2 || z.prime > n1;
        if (!large && (z.prime != n1 || z.exponent != 1))
            violate("non-large Zsigmondy prime " + z.prime.get_str() + " is not n+1 to the first power");
    }

    if (r.factorization_complete) {
        r.has_zsigmondy = !r.zsig_primes.empty();
        r.has_large = !r.large_zsig_primes.empty();
        if (M == 1 && r.has_large != r.fast.has_large) violate("fast decision disagrees with factorization");
        if (r.has_zsigmondy != (r.fast.zsigmondy_part > 1)) violate("Zsigmondy part disagrees with factorization");
    } else {
        r.has_zsigmondy = r.fast.zsigmondy_part > 1;
        r.has_large = (M == 1) ? r.fast.has_large : !r.large_zsig_primes.empty();
    }

    if (M == 1 && r.exception.is_exception() == r.has_large)
        violate(std::string("exception table (") + std::string(to_string(r.exception.kind)) +
                ") disagrees with computed has_large = " + (r.has_large ? "true" : "false"));

    if (t.n >= 3) {
        r.sufficiency = sufficiency_check(t);
        r.bounds_ok = bounds_check(t.n, t.a, t.b);
        if (*r.sufficiency && !r.has_large) violate("sufficiency holds but no large Zsigmondy prime");
        if (!*r.bounds_ok) violate("strict cyclotomic bounds fail");
    }
    return r;
}

}  // namespace zsig
