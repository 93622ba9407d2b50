#pragma once

// Elementary number-theoretic functions.
//
// Index-like arguments (n in phi(n), mu(n), P(n)) are 64-bit; values that can
// grow (anything fed to vp, gcd, factorize) are BigInt.

#include "zsig/bigint.hpp"
#include "zsig/factor.hpp"
#include "zsig/primality.hpp"

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace zsig {

/// gcd(0, 0) = 0; result is nonnegative.
inline BigInt gcd(const BigInt& x, const BigInt& y) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return g;
}

/// (prime, exponent) pairs of a 64-bit integer, ascending. Always complete.
inline std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("cannot factor 0");
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    };
    take(2);
    for (std::uint64_t p = 3; p < 1024 && p * p <= n; p += 2) take(p);
    std::vector<std::uint64_t> stack;
    if (n > 1) stack.push_back(n);
    while (!stack.empty()) {
        std::uint64_t m = stack.back();
        stack.pop_back();
        if (is_prime_u64(m)) {
            out.emplace_back(m, 1);
            continue;
        }
        // No factor below 1024 remains, so m is not a small perfect power
        // that rho would loop on; rho always succeeds given enough steps.
        std::uint64_t d = detail::rho_u64(m, ~0ull);
        stack.push_back(d);
        stack.push_back(m / d);
    }
    std::sort(out.begin(), out.end());
    std::vector<std::pair<std::uint64_t, unsigned>> merged;
    for (auto [p, e] : out) {
        if (!merged.empty() && merged.back().first == p) merged.back().second += e;
        else merged.emplace_back(p, e);
    }
    return merged;
}

inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("euler_phi(0) is undefined");
    std::uint64_t r = n;
    for (auto [p, e] : factor_u64(n)) r = r / p * (p - 1);
    return r;
}

inline int mobius(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("mobius(0) is undefined");
    int sign = 1;
    for (auto [p, e] : factor_u64(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

/// P(n), the largest prime divisor of n >= 2.
inline std::uint64_t largest_prime_divisor(std::uint64_t n) {
    if (n < 2) throw InvalidArgument("largest_prime_divisor needs n >= 2");
    return factor_u64(n).back().first;
}

/// All positive divisors of n, ascending.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> ds{1};
    for (auto [p, e] : factor_u64(n)) {
        const std::size_t count = ds.size();
        std::uint64_t pk = 1;
        for (unsigned i = 0; i < e; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < count; ++j) ds.push_back(ds[j] * pk);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// v_p(x): the largest e with p^e | x. Needs x >= 1 and p prime.
inline unsigned vp(const BigInt& x, const BigInt& p) {
    if (sgn(x) <= 0) throw InvalidArgument("vp requires x >= 1");
    if (!is_prime(p)) throw InvalidArgument("vp requires a prime p, got " + p.get_str());
    BigInt rest;
    return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

/// Exponent of the prime p in the 64-bit integer n (n >= 1).
inline unsigned vp_u64(std::uint64_t n, std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

}  // namespace zsig
