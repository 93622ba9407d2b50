#pragma once

// p-adic valuations in closed form: lifting the exponent for x^m - y^m and
// the cyclotomic analogue for Phi_n(a, b). Nothing here evaluates Phi_n; the
// closed forms are meant to be checked against direct factorization.

#include "zsig/arith.hpp"
#include "zsig/bigint.hpp"
#include "zsig/cyclotomic.hpp"
#include "zsig/factor.hpp"

#include <cstdint>
#include <string>

namespace zsig {

/// An lte_valuation call outside the LTE hypotheses. Callers fall back
/// to a direct vp computation.
class LtePreconditionError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// p prime, p not dividing a*b, and k the order of a/b modulo p.
struct OrderContext {
    BigInt p;
    BigInt a;
    BigInt b;
    BigInt k;
};

namespace detail {

inline void require_prime(const BigInt& p) {
    if (!is_prime(p)) throw InvalidArgument(p.get_str() + " is not prime");
}

// a * b^-1 mod p
inline BigInt ratio_mod(const BigInt& p, const BigInt& a, const BigInt& b) {
    BigInt bm = b % p, inv;
    if (sgn(bm) < 0) bm += p;
    if (mpz_invert(inv.get_mpz_t(), bm.get_mpz_t(), p.get_mpz_t()) == 0)
        throw InvalidArgument("b is not invertible modulo " + p.get_str());
    BigInt r = a * inv % p;
    if (sgn(r) < 0) r += p;
    return r;
}

inline BigInt powm(const BigInt& base, const BigInt& e, const BigInt& m) {
    BigInt r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Order of r modulo p given a multiple of it with known factorization.
inline BigInt order_from_multiple(const BigInt& r, const BigInt& p, const BigInt& multiple,
                                  const std::vector<BigInt>& multiple_primes) {
    if (powm(r, multiple, p) != 1) throw InvalidArgument("not a multiple of the order");
    BigInt k = multiple;
    for (const BigInt& q : multiple_primes) {
        while (mpz_divisible_p(k.get_mpz_t(), q.get_mpz_t()) && powm(r, k / q, p) == 1) k /= q;
    }
    return k;
}

// v_p(a^k - b^k) for p not dividing ab, without expanding the powers.
inline unsigned vp_power_difference(const BigInt& p, const BigInt& a, const BigInt& b, const BigInt& k) {
    for (unsigned long e = 2;; e *= 2) {
        const BigInt modulus = pow(p, e);
        BigInt diff = powm(a, k, modulus) - powm(b, k, modulus);
        mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), modulus.get_mpz_t());
        if (sgn(diff) != 0) return vp(diff, p);
    }
}

}  // namespace detail

/// Least k >= 1 with p | a^k - b^k, using a known multiple of the order
/// (for instance n when p | a^n - b^n). Avoids factoring p - 1.
inline std::uint64_t multiplicative_order_dividing(const BigInt& p, const BigInt& a, const BigInt& b,
                                                   std::uint64_t multiple) {
    detail::require_prime(p);
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) || mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        throw InvalidArgument("p divides a*b");
    std::vector<BigInt> primes;
    for (auto [q, e] : factor_u64(multiple)) primes.push_back(big(q));
    return to_u64(detail::order_from_multiple(detail::ratio_mod(p, a, b), p, big(multiple), primes));
}

/// Least k >= 1 with p | a^k - b^k; k divides p - 1. Factors p - 1.
inline BigInt multiplicative_order(const BigInt& p, const BigInt& a, const BigInt& b) {
    detail::require_prime(p);
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) || mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        throw InvalidArgument("p divides a*b");
    if (p == 2) return 1;
    const BigInt pm1 = p - 1;
    FactorBudget budget;
    budget.ecm_curves = 1u << 20;
    const Factorization f = factorize(pm1, budget);
    if (!f.complete) throw FactorizationIncomplete(f);
    std::vector<BigInt> primes;
    for (const auto& pp : f.factors) primes.push_back(pp.prime);
    return detail::order_from_multiple(detail::ratio_mod(p, a, b), p, pm1, primes);
}

inline OrderContext order_context(const BigInt& p, const BigInt& a, const BigInt& b) {
    return OrderContext{p, a, b, multiplicative_order(p, a, b)};
}

/// v_p(x^m - y^m) by lifting the exponent. Requires p prime, x = y (mod p),
/// p not dividing x*y, and x^m != y^m; otherwise LtePreconditionError.
inline unsigned lte_valuation(const BigInt& p, const BigInt& x, const BigInt& y, std::uint64_t m) {
    if (!is_prime(p)) throw LtePreconditionError(p.get_str() + " is not prime");
    if (m < 1) throw LtePreconditionError("m must be >= 1");
    const BigInt diff = x - y;
    if (!mpz_divisible_p(diff.get_mpz_t(), p.get_mpz_t())) throw LtePreconditionError("x and y differ modulo p");
    if (mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) throw LtePreconditionError("p divides x*y");
    if (sgn(diff) == 0) throw LtePreconditionError("x = y, valuation is infinite");
    const BigInt absdiff = abs(diff);
    if (p != 2) return vp(absdiff, p) + (fits_u64(p) ? vp_u64(m, to_u64(p)) : 0u);
    if (m % 2 == 1) return vp(absdiff, p);
    const BigInt sq = abs(x * x - y * y);
    if (sgn(sq) == 0) throw LtePreconditionError("x = -y, valuation is infinite");
    return vp(sq, p) + vp_u64(m, 2) - 1;
}

/// v_p(Phi_n(a, b)) in closed form.
///
/// Odd p (p not dividing ab), with k the order of a/b mod p:
///   v_p(a^k - b^k) if n = k; 1 if n = p^beta k with beta >= 1; 0 otherwise.
/// p = 2 with a, b odd:
///   v_2(a - b) if n = 1; v_2(a + b) if n = 2; 1 if n = 2^beta, beta >= 2; 0 otherwise.
/// p = 2 with a, b of mixed parity: a^n - b^n is odd, so 0.
inline unsigned vp_cyclotomic(const BigInt& p, const BigInt& a, const BigInt& b, std::uint64_t n) {
    const Triple t(a, b, n);
    detail::require_prime(p);
    if (p == 2) {
        if (mpz_even_p(a.get_mpz_t()) || mpz_even_p(b.get_mpz_t())) return 0;
        if (n == 1) return vp(a - b, p);
        if (n == 2) return vp(a + b, p);
        return (n & (n - 1)) == 0 ? 1 : 0;
    }
    if (mpz_divisible_p(a.get_mpz_t(), p.get_mpz_t()) || mpz_divisible_p(b.get_mpz_t(), p.get_mpz_t()))
        throw InvalidArgument("p divides a*b");
    const BigInt k = multiplicative_order(p, a, b);
    const BigInt nn = big(n);
    if (nn == k) return detail::vp_power_difference(p, a, b, k);
    if (!mpz_divisible_p(nn.get_mpz_t(), k.get_mpz_t())) return 0;
    BigInt m = nn / k, rest;
    const auto beta = mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    return (beta >= 1 && rest == 1) ? 1 : 0;
}

}  // namespace zsig
