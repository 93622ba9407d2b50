#pragma once

// Primality testing.
//
//  * n < 2^64: Miller-Rabin with the first twelve prime bases. Exact.
//  * n < 3317044064679887385961981: Miller-Rabin with the first thirteen
//    prime bases (2..41). Exact (Sorenson-Webster bound).
//  * above that: Miller-Rabin with the same thirteen bases followed by a
//    strong Lucas test with Selfridge parameters (a BPSW-type test). This is
//    a probable-prime answer; callers that publish primes from this regime
//    re-verify them with a Pocklington proof (see factor.hpp).

#include "zsig/bigint.hpp"

#include <array>
#include <cstdint>

namespace zsig {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

inline constexpr std::array<std::uint64_t, 13> kWitnessBases{2,  3,  5,  7,  11, 13, 17,
                                                             19, 23, 29, 31, 37, 41};

inline bool strong_probable_prime_u64(std::uint64_t n, std::uint64_t a) {
    a %= n;
    if (a == 0) return true;
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int r = 1; r < s; ++r) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

inline bool strong_probable_prime(const BigInt& n, const BigInt& a) {
    BigInt nm1 = n - 1;
    BigInt d = nm1;
    mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    BigInt x;
    mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == nm1) return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        x = x * x % n;
        if (x == nm1) return true;
        if (x == 1) return false;
    }
    return false;
}

// Strong Lucas probable-prime test, Selfridge method A (P = 1, Q = (1-D)/4).
inline bool strong_lucas_probable_prime(const BigInt& n) {
    if (mpz_perfect_square_p(n.get_mpz_t())) return false;
    long d_param = 5;
    for (;;) {
        BigInt dd = d_param;
        int j = mpz_jacobi(dd.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0 && abs(dd) != n) return false;
        d_param = d_param > 0 ? -(d_param + 2) : -(d_param - 2);
    }
    const BigInt D = d_param;
    const BigInt P = 1;
    const BigInt Q = (1 - d_param) / 4;

    BigInt d = n + 1;
    mp_bitcnt_t s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    auto mod = [&](BigInt v) {
        mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        return v;
    };
    auto half = [&](BigInt v) {
        if (mpz_odd_p(v.get_mpz_t())) v += n;
        mpz_tdiv_q_2exp(v.get_mpz_t(), v.get_mpz_t(), 1);
        return v;
    };

    BigInt U = 1, V = P, Qk = mod(Q);
    for (long bit = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2)) - 2; bit >= 0; --bit) {
        U = mod(U * V);
        V = mod(V * V - 2 * Qk);
        Qk = mod(Qk * Qk);
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) {
            BigInt u2 = half(mod(P * U + V));
            BigInt v2 = half(mod(D * U + P * V));
            U = u2;
            V = v2;
            Qk = mod(Qk * Q);
        }
    }
    if (U == 0 || V == 0) return true;
    for (mp_bitcnt_t r = 1; r < s; ++r) {
        V = mod(V * V - 2 * Qk);
        if (V == 0) return true;
        Qk = mod(Qk * Qk);
    }
    return false;
}

}  // namespace detail

/// Inputs strictly below this value get an exact answer from is_prime.
inline const BigInt& deterministic_primality_limit() {
    static const BigInt limit("3317044064679887385961981");
    return limit;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : detail::kWitnessBases) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 41 * 41) return true;
    for (std::size_t i = 0; i < 12; ++i)
        if (!detail::strong_probable_prime_u64(n, detail::kWitnessBases[i])) return false;
    return true;
}

inline bool is_prime(const BigInt& n) {
    if (sgn(n) <= 0) return false;
    if (fits_u64(n)) return is_prime_u64(to_u64(n));
    for (std::uint64_t p : detail::kWitnessBases)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
    for (std::uint64_t p : detail::kWitnessBases)
        if (!detail::strong_probable_prime(n, BigInt(static_cast<unsigned long>(p)))) return false;
    if (n < deterministic_primality_limit()) return true;
    return detail::strong_lucas_probable_prime(n);
}

/// True when is_prime(n) is a proof rather than a probable-prime verdict.
inline bool primality_is_deterministic(const BigInt& n) { return n < deterministic_primality_limit(); }

}  // namespace zsig
