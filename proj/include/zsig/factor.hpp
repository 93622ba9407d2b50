#pragma once

// Integer factorization with an explicit effort budget.
//
// Pipeline for x >= 1:
//   1. trial division by the primes up to FactorBudget::trial_bound;
//   2. each composite cofactor is split by Brent's variant of Pollard rho
//      (FactorBudget::rho_steps iterations), then by Lenstra's elliptic curve
//      method on Montgomery curves (FactorBudget::ecm_curves curves);
//   3. every prime factor above the exact Miller-Rabin range is re-verified
//      with a Pocklington n-1 proof built from a recursive factorization of
//      p-1. Primes that pass the probable-prime test but resist the proof
//      keep proven = false.
// Budget exhaustion never throws: the unsplit remainder is kept as
// Factorization::cofactor and complete is false.

#include "zsig/bigint.hpp"
#include "zsig/primality.hpp"

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numeric>
#include <utility>
#include <vector>

namespace zsig {

struct FactorBudget {
    std::uint64_t trial_bound = 1'000'000;
    std::uint64_t rho_steps = 1u << 16;
    std::uint64_t ecm_curves = 1200;
    /// Recursion depth for Pocklington proofs of large prime factors.
    unsigned proof_depth = 6;
};

struct PrimePower {
    BigInt prime;
    unsigned exponent = 0;
    /// false only for a probable prime above the exact range whose proof failed.
    bool proven = true;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct Factorization {
    BigInt value;
    std::vector<PrimePower> factors;  // strictly increasing primes
    BigInt cofactor = 1;              // unfactored composite part; 1 iff complete
    bool complete = true;

    /// Product of prime^exponent over factors (excludes the cofactor).
    BigInt factored_part() const {
        BigInt r = 1;
        for (const auto& f : factors) r *= pow(f.prime, f.exponent);
        return r;
    }
    bool all_proven() const {
        return std::all_of(factors.begin(), factors.end(), [](const PrimePower& f) { return f.proven; });
    }
    unsigned exponent_of(const BigInt& p) const {
        for (const auto& f : factors)
            if (f.prime == p) return f.exponent;
        return 0;
    }
};

/// Raised by operations that need a complete factorization and did not get one.
class FactorizationIncomplete : public std::runtime_error {
public:
    explicit FactorizationIncomplete(Factorization partial)
        : std::runtime_error("factorization budget exhausted; unfactored cofactor " + partial.cofactor.get_str()),
          partial_(std::move(partial)) {}
    const Factorization& partial() const { return partial_; }

private:
    Factorization partial_;
};

// ---------------------------------------------------------------------------
// Small prime table
// ---------------------------------------------------------------------------

struct PrimeTable {
    struct Group {
        std::size_t begin, end;
        std::uint64_t product;
    };
    std::uint64_t bound = 0;
    std::vector<std::uint32_t> primes;
    std::vector<Group> groups;  // consecutive primes whose product fits 64 bits
};

inline std::shared_ptr<const PrimeTable> prime_table(std::uint64_t bound) {
    static std::mutex mu;
    static std::shared_ptr<const PrimeTable> cached;
    if (bound > 0xFFFFFFFFull) throw InvalidArgument("trial division bound must be below 2^32");
    std::lock_guard lock(mu);
    if (cached && cached->bound >= bound) return cached;

    auto t = std::make_shared<PrimeTable>();
    t->bound = std::max<std::uint64_t>(bound, 1000);
    std::vector<bool> composite(t->bound + 1, false);
    for (std::uint64_t i = 2; i <= t->bound; ++i) {
        if (composite[i]) continue;
        t->primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= t->bound; j += i) composite[j] = true;
    }
    std::size_t i = 0;
    while (i < t->primes.size()) {
        PrimeTable::Group g{i, i, 1};
        while (g.end < t->primes.size()) {
            unsigned __int128 next = static_cast<unsigned __int128>(g.product) * t->primes[g.end];
            if (next >> 64) break;
            g.product = static_cast<std::uint64_t>(next);
            ++g.end;
        }
        t->groups.push_back(g);
        i = g.end;
    }
    cached = std::move(t);
    return cached;
}

namespace detail {

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

inline std::uint64_t absdiff(std::uint64_t a, std::uint64_t b) { return a > b ? a - b : b - a; }

// Brent-Pollard rho on a 64-bit composite. Returns a proper factor or 0.
inline std::uint64_t rho_u64(std::uint64_t n, std::uint64_t budget) {
    if (n % 2 == 0) return 2;
    std::uint64_t spent = 0;
    for (std::uint64_t c = 1; spent < budget; ++c) {
        auto f = [&](std::uint64_t v) {
            std::uint64_t r = mulmod(v, v, n) + c;
            return r >= n ? r - n : r;
        };
        std::uint64_t y = 2 + c, x = y, ys = y, q = 1, g = 1;
        const std::uint64_t m = 128;
        for (std::uint64_t r = 1; g == 1 && spent < budget; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            spent += r;
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, absdiff(x, y), n);
                }
                spent += std::min(m, r - k);
                g = gcd_u64(q, n);
            }
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd_u64(absdiff(x, ys), n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

inline BigInt rho_big(const BigInt& n, std::uint64_t budget) {
    if (mpz_even_p(n.get_mpz_t())) return 2;
    std::uint64_t spent = 0;
    BigInt tmp;
    for (unsigned long c = 1; spent < budget; ++c) {
        auto f = [&](BigInt& v) {
            mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
            mpz_add_ui(v.get_mpz_t(), v.get_mpz_t(), c);
            mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
        };
        BigInt y = 2 + c, x = y, ys = y, q = 1, g = 1;
        const std::uint64_t m = 128;
        for (std::uint64_t r = 1; g == 1 && spent < budget; r <<= 1) {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) f(y);
            spent += r;
            for (std::uint64_t k = 0; k < r && g == 1; k += m) {
                ys = y;
                for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
                    f(y);
                    tmp = x - y;
                    q = q * tmp % n;
                }
                spent += std::min(m, r - k);
                mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            }
        }
        if (g == n) {
            do {
                f(ys);
                tmp = x - ys;
                mpz_gcd(g.get_mpz_t(), tmp.get_mpz_t(), n.get_mpz_t());
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

// ---------------------------------------------------------------------------
// ECM, Montgomery form By^2 = x^3 + Ax^2 + x, projective (X : Z).
// ---------------------------------------------------------------------------

struct Stage2Plan {
    static constexpr std::uint64_t kD = 2310;
    std::uint64_t m_first = 1;
    std::vector<std::vector<std::uint16_t>> rows;  // rows[i] lists j for m = m_first + i
};

inline std::shared_ptr<const Stage2Plan> stage2_plan(std::uint64_t b1, std::uint64_t b2) {
    static std::mutex mu;
    static std::vector<std::pair<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const Stage2Plan>>> cache;
    std::lock_guard lock(mu);
    for (const auto& [key, plan] : cache)
        if (key.first == b1 && key.second == b2) return plan;

    constexpr std::uint64_t D = Stage2Plan::kD;
    std::vector<bool> sieve(b2 + D + 1, true);
    sieve[0] = sieve[1] = false;
    for (std::uint64_t i = 2; i * i <= b2 + D; ++i)
        if (sieve[i])
            for (std::uint64_t k = i * i; k <= b2 + D; k += i) sieve[k] = false;

    auto plan = std::make_shared<Stage2Plan>();
    plan->m_first = std::max<std::uint64_t>(b1 / D, 1);
    for (std::uint64_t m = plan->m_first; m * D <= b2 + D / 2; ++m) {
        std::vector<std::uint16_t> row;
        for (std::uint64_t j = 1; j < D / 2; j += 2) {
            if (std::gcd(j, D) != 1) continue;
            const std::uint64_t lo = m * D - j, hi = m * D + j;
            const bool hit = (lo > b1 && lo <= b2 && sieve[lo]) || (hi > b1 && hi <= b2 && sieve[hi]);
            if (hit) row.push_back(static_cast<std::uint16_t>(j));
        }
        plan->rows.push_back(std::move(row));
    }
    cache.emplace_back(std::make_pair(b1, b2), plan);
    return plan;
}

class Ecm {
public:
    explicit Ecm(const BigInt& n) : n_(n) {}

    // Runs one curve with Suyama parameter sigma. Returns a proper factor or 0.
    BigInt run_curve(unsigned long sigma, std::uint64_t b1, std::uint64_t b2) {
        BigInt u = BigInt(sigma) * sigma - 5;
        BigInt v = BigInt(sigma) * 4;
        BigInt x0 = mod(u * u * u);
        BigInt z0 = mod(v * v * v);
        BigInt vmu = v - u;
        BigInt num = mod(vmu * vmu * vmu * (3 * u + v));
        BigInt den = mod(16 * x0 * v);
        BigInt inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n_.get_mpz_t()) == 0) {
            BigInt g;
            mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), n_.get_mpz_t());
            return (g != 1 && g != n_) ? g : BigInt(0);
        }
        a24_ = mod(num * inv);

        Point p{x0, z0};
        // Stage 1: multiply by every prime power up to b1.
        const auto table = prime_table(std::max<std::uint64_t>(b1, 1000));
        for (std::uint32_t prime : table->primes) {
            if (prime > b1) break;
            std::uint64_t q = prime;
            while (q * prime <= b1) q *= prime;
            p = multiply(p, q);
        }
        BigInt g = gcd_n(p.z);
        if (g != 1) return g == n_ ? BigInt(0) : g;

        return stage2(p, b1, b2);
    }

private:
    struct Point {
        BigInt x, z;
    };

    BigInt mod(const BigInt& v) const {
        BigInt r;
        mpz_mod(r.get_mpz_t(), v.get_mpz_t(), n_.get_mpz_t());
        return r;
    }
    BigInt gcd_n(const BigInt& v) const {
        BigInt g;
        mpz_gcd(g.get_mpz_t(), v.get_mpz_t(), n_.get_mpz_t());
        return g;
    }

    Point dbl(const Point& p) {
        s_ = p.x + p.z;
        s_ = mod(s_ * s_);
        d_ = p.x - p.z;
        d_ = mod(d_ * d_);
        t_ = s_ - d_;
        return {mod(s_ * d_), mod(t_ * (d_ + a24_ * t_))};
    }
    Point add(const Point& p, const Point& q, const Point& diff) {
        BigInt a = mod((p.x - p.z) * (q.x + q.z));
        BigInt b = mod((p.x + p.z) * (q.x - q.z));
        s_ = a + b;
        d_ = a - b;
        return {mod(diff.z * mod(s_ * s_)), mod(diff.x * mod(d_ * d_))};
    }
    Point multiply(const Point& p, std::uint64_t k) {
        if (k == 1) return p;
        Point r0 = p, r1 = dbl(p);
        for (int bit = 62 - __builtin_clzll(k); bit >= 0; --bit) {
            if ((k >> bit) & 1) {
                r0 = add(r1, r0, p);
                r1 = dbl(r1);
            } else {
                r1 = add(r1, r0, p);
                r0 = dbl(r0);
            }
        }
        return r0;
    }

    // Baby-step giant-step continuation over primes in (b1, b2]. Each prime
    // is written m*D +- j with j < D/2 coprime to D; a hit is detected by the
    // cross product of the projective x-coordinates of m*D*q and j*q.
    BigInt stage2(const Point& q, std::uint64_t b1, std::uint64_t b2) {
        const auto plan = stage2_plan(b1, b2);
        const std::uint64_t D = Stage2Plan::kD;

        std::vector<Point> baby(D / 2);
        baby[1] = q;
        Point q2 = dbl(q);
        baby[3] = add(q2, q, q);
        for (std::uint64_t j = 5; j < D / 2; j += 2) baby[j] = add(baby[j - 2], q2, baby[j - 4]);

        const Point giant = multiply(q, D);
        Point cur = multiply(q, plan->m_first * D);
        Point next = multiply(q, (plan->m_first + 1) * D);
        BigInt acc = 1, term;
        for (const auto& row : plan->rows) {
            for (std::uint16_t j : row) {
                term = cur.x * baby[j].z - baby[j].x * cur.z;
                acc = mod(acc * term);
            }
            Point after = add(next, giant, cur);
            cur = std::move(next);
            next = std::move(after);
        }
        BigInt g = gcd_n(acc);
        return (g != 1 && g != n_) ? g : BigInt(0);
    }

    BigInt n_;
    BigInt a24_;
    BigInt s_, d_, t_;
};

inline BigInt ecm_split(const BigInt& n, std::uint64_t curves, std::uint64_t& curves_used) {
    struct Stage {
        std::uint64_t b1, count;
    };
    static constexpr Stage kSchedule[] = {{2000, 25}, {11000, 90}, {50000, 300}, {250000, ~0ull}};
    Ecm ecm(n);
    unsigned long sigma = 6;
    for (const Stage& st : kSchedule) {
        for (std::uint64_t i = 0; i < st.count && curves_used < curves; ++i, ++curves_used) {
            BigInt g = ecm.run_curve(sigma++, st.b1, st.b1 * 100);
            if (g != 0) return g;
        }
        if (curves_used >= curves) break;
    }
    return 0;
}

// Returns (root, k) with n = root^k and k maximal (k = 1 when n is no perfect power).
inline std::pair<BigInt, unsigned> perfect_power(const BigInt& n) {
    if (!mpz_perfect_power_p(n.get_mpz_t()) || n < 4) return {n, 1};
    for (unsigned long k = bit_length(n); k >= 2; --k) {
        BigInt r;
        if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) != 0) return {r, static_cast<unsigned>(k)};
    }
    return {n, 1};
}

}  // namespace detail

Factorization factorize(const BigInt& x, const FactorBudget& budget = {});

/// Pocklington n-1 proof for a probable prime q. Exact for q below the
/// deterministic Miller-Rabin limit without further work.
inline bool prove_prime(const BigInt& q, const FactorBudget& budget) {
    if (!is_prime(q)) return false;
    if (primality_is_deterministic(q)) return true;
    if (budget.proof_depth == 0) return false;
    FactorBudget inner = budget;
    inner.proof_depth = budget.proof_depth - 1;
    const BigInt qm1 = q - 1;
    Factorization f = factorize(qm1, inner);
    BigInt proven_part = 1;
    std::vector<BigInt> proven_primes;
    for (const auto& pp : f.factors) {
        if (!pp.proven) continue;
        proven_part *= pow(pp.prime, pp.exponent);
        proven_primes.push_back(pp.prime);
    }
    if (proven_part * proven_part <= q) return false;
    BigInt e, t, g;
    for (const BigInt& r : proven_primes) {
        bool witnessed = false;
        for (unsigned long w = 2; w < 200 && !witnessed; ++w) {
            BigInt base = w;
            mpz_powm(t.get_mpz_t(), base.get_mpz_t(), qm1.get_mpz_t(), q.get_mpz_t());
            if (t != 1) return false;
            e = qm1 / r;
            mpz_powm(t.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), q.get_mpz_t());
            t -= 1;
            mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
            witnessed = (g == 1);
        }
        if (!witnessed) return false;
    }
    return true;
}

inline Factorization factorize(const BigInt& x, const FactorBudget& budget) {
    if (sgn(x) <= 0) throw InvalidArgument("factorize requires x >= 1");
    Factorization out;
    out.value = x;

    std::vector<std::pair<BigInt, unsigned>> found;  // (prime, multiplicity)
    BigInt rest = x;

    // Trial division.
    const auto table = prime_table(budget.trial_bound);
    bool rest_is_prime_or_one = false;
    for (const auto& grp : table->groups) {
        if (rest == 1) break;
        const std::uint64_t first = table->primes[grp.begin];
        if (first > budget.trial_bound) break;
        if (BigInt(static_cast<unsigned long>(first)) * first > rest) {
            rest_is_prime_or_one = true;
            break;
        }
        unsigned long r = mpz_fdiv_ui(rest.get_mpz_t(), grp.product);
        for (std::size_t i = grp.begin; i < grp.end; ++i) {
            const std::uint32_t p = table->primes[i];
            if (p > budget.trial_bound) break;
            if (r % p != 0) continue;
            unsigned e = 0;
            while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
                mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
                ++e;
            }
            found.emplace_back(BigInt(static_cast<unsigned long>(p)), e);
        }
    }

    std::vector<std::pair<BigInt, unsigned>> pending;  // (composite-or-prime, multiplicity)
    BigInt leftover = 1;
    if (rest != 1) {
        if (rest_is_prime_or_one) found.emplace_back(rest, 1);
        else pending.emplace_back(rest, 1);
    }

    while (!pending.empty()) {
        auto [n, mult] = pending.back();
        pending.pop_back();
        if (n == 1) continue;
        if (is_prime(n)) {
            found.emplace_back(n, mult);
            continue;
        }
        auto [root, k] = detail::perfect_power(n);
        if (k > 1) {
            pending.emplace_back(root, mult * k);
            continue;
        }
        BigInt d = 0;
        if (fits_u64(n)) {
            std::uint64_t g = detail::rho_u64(to_u64(n), budget.rho_steps);
            if (g != 0) d = big(g);
        } else {
            d = detail::rho_big(n, budget.rho_steps);
        }
        if (d == 0 && budget.ecm_curves > 0) {
            std::uint64_t used = 0;
            d = detail::ecm_split(n, budget.ecm_curves, used);
        }
        if (d == 0) {
            leftover *= pow(n, mult);
            continue;
        }
        BigInt other = n / d;
        // Pull common factors apart so both pieces are coprime.
        BigInt g;
        mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), other.get_mpz_t());
        if (g != 1) {
            pending.emplace_back(g, mult);
            pending.emplace_back(d / g, mult);
            pending.emplace_back(other / g, mult);
        } else {
            pending.emplace_back(d, mult);
            pending.emplace_back(other, mult);
        }
    }

    std::sort(found.begin(), found.end(), [](const auto& l, const auto& r) { return l.first < r.first; });
    for (auto& [p, e] : found) {
        if (!out.factors.empty() && out.factors.back().prime == p) {
            out.factors.back().exponent += e;
        } else {
            out.factors.push_back(PrimePower{p, e, true});
        }
    }
    for (auto& f : out.factors)
        if (!primality_is_deterministic(f.prime)) f.proven = prove_prime(f.prime, budget);

    out.cofactor = leftover;
    out.complete = (leftover == 1);
    return out;
}

}  // namespace zsig
