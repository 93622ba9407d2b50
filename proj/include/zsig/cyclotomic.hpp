#pragma once

// Cyclotomic polynomials Phi_n(x) and their homogeneous values
// Phi_n(a, b) = b^phi(n) Phi_n(a / b).
//
// Coefficients come from exact division of x^n - 1 by the product of the
// (memoized) Phi_d, d | n, d < n. Three evaluators of Phi_n(a, b) are kept
// deliberately independent so they can be checked against one another:
//
//   eval_homogeneous  Horner on the coefficient vector
//   eval_mobius       prod_{d | n} (a^(n/d) - b^(n/d))^mu(d), one exact division
//   eval_recursive    Phi_{pm}(a,b) = Phi_m(a^p, b^p)               (p | m)
//                     Phi_{pm}(a,b) = Phi_m(a^p, b^p) / Phi_m(a, b)  (p does not divide m)
//                     down to Phi_1 = a - b and Phi_2 = a + b.

#include "zsig/arith.hpp"
#include "zsig/bigint.hpp"
#include "zsig/poly.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace zsig {

/// A validated (a, b, n): a > b >= 1, gcd(a, b) = 1, n >= 1.
struct Triple {
    BigInt a;
    BigInt b;
    std::uint64_t n = 1;

    Triple(BigInt a_, BigInt b_, std::uint64_t n_) : a(std::move(a_)), b(std::move(b_)), n(n_) {
        if (sgn(b) <= 0) throw InvalidArgument("b must be >= 1");
        if (a <= b) throw InvalidArgument("a must exceed b");
        if (gcd(a, b) != 1) throw InvalidArgument("a and b must be coprime");
        if (n < 1) throw InvalidArgument("n must be >= 1");
    }

    std::string to_string() const { return "(" + a.get_str() + "," + b.get_str() + "," + std::to_string(n) + ")"; }

    friend bool operator==(const Triple& l, const Triple& r) { return l.a == r.a && l.b == r.b && l.n == r.n; }
    friend bool operator<(const Triple& l, const Triple& r) {
        if (l.a != r.a) return l.a < r.a;
        if (l.b != r.b) return l.b < r.b;
        return l.n < r.n;
    }
};

// ---------------------------------------------------------------------------
// Coefficient table
// ---------------------------------------------------------------------------

class CyclotomicTable {
public:
    /// Dense coefficient vectors are only built up to this index.
    static constexpr std::uint64_t kMaxIndex = 1'000'000;

    static CyclotomicTable& instance() {
        static CyclotomicTable table;
        return table;
    }

    /// Entries with n above the limit are computed on demand and not stored.
    void set_memo_limit(std::uint64_t limit) { memo_limit_.store(limit); }
    std::uint64_t memo_limit() const { return memo_limit_.load(); }

    std::shared_ptr<const IntPoly> get(std::uint64_t n) {
        if (n == 0) throw InvalidArgument("cyclotomic index must be >= 1");
        if (n > kMaxIndex) throw InvalidArgument("cyclotomic index above " + std::to_string(kMaxIndex));
        {
            std::shared_lock lock(mu_);
            if (auto it = table_.find(n); it != table_.end()) return it->second;
        }
        auto poly = std::make_shared<const IntPoly>(compute(n));
        if (n <= memo_limit_.load()) {
            std::unique_lock lock(mu_);
            // First writer wins so every reader sees one immutable entry.
            auto [it, inserted] = table_.emplace(n, poly);
            return it->second;
        }
        return poly;
    }

private:
    CyclotomicTable() = default;

    IntPoly compute(std::uint64_t n) {
        if (n == 1) return IntPoly({BigInt(-1), BigInt(1)});
        if (n == 2) return IntPoly({BigInt(1), BigInt(1)});
        IntPoly rest = IntPoly::x_pow_minus_one(n);
        auto ds = divisors(n);
        // Largest proper divisors first keeps the running quotient short.
        for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
            if (*it == n) continue;
            rest = rest.exact_divide(*get(*it));
        }
        return rest;
    }

    std::shared_mutex mu_;
    std::unordered_map<std::uint64_t, std::shared_ptr<const IntPoly>> table_;
    std::atomic<std::uint64_t> memo_limit_{4096};
};

/// Exact integer coefficients of Phi_n(x), ascending degree.
inline IntPoly cyclotomic_coeffs(std::uint64_t n) { return *CyclotomicTable::instance().get(n); }

// ---------------------------------------------------------------------------
// Evaluators
// ---------------------------------------------------------------------------

inline BigInt eval_homogeneous(std::uint64_t n, const BigInt& a, const BigInt& b) {
    const Triple t(a, b, n);
    if (n == 1) return a - b;
    if (n == 2) return a + b;
    const auto poly = CyclotomicTable::instance().get(n);
    return poly->eval_homogeneous(a, b, static_cast<std::uint64_t>(poly->degree()));
}

inline BigInt eval_homogeneous(const Triple& t) { return eval_homogeneous(t.n, t.a, t.b); }

inline BigInt eval_mobius(std::uint64_t n, const BigInt& a, const BigInt& b) {
    const Triple t(a, b, n);
    if (n == 1) return a - b;
    if (n == 2) return a + b;
    BigInt num = 1, den = 1;
    for (std::uint64_t d : divisors(n)) {
        const int mu = mobius(d);
        if (mu == 0) continue;
        const std::uint64_t e = n / d;
        BigInt term = pow(a, e) - pow(b, e);
        (mu > 0 ? num : den) *= term;
    }
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw std::logic_error("eval_mobius: inexact division for n=" + std::to_string(n));
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

namespace detail {

inline BigInt eval_recursive_unchecked(std::uint64_t n, const BigInt& a, const BigInt& b) {
    if (n == 1) return a - b;
    if (n == 2) return a + b;
    const std::uint64_t p = largest_prime_divisor(n);
    const std::uint64_t m = n / p;
    const BigInt ap = pow(a, p), bp = pow(b, p);
    if (m % p == 0) return eval_recursive_unchecked(m, ap, bp);
    BigInt num = eval_recursive_unchecked(m, ap, bp);
    BigInt den = eval_recursive_unchecked(m, a, b);
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw std::logic_error("eval_recursive: inexact division for n=" + std::to_string(n));
    BigInt q;
    mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace detail

inline BigInt eval_recursive(std::uint64_t n, const BigInt& a, const BigInt& b) {
    const Triple t(a, b, n);
    return detail::eval_recursive_unchecked(n, a, b);
}

// ---------------------------------------------------------------------------
// Identities and bounds
// ---------------------------------------------------------------------------

/// a^n - b^n == prod_{d | n} Phi_d(a, b), computed exactly.
inline bool product_identity_check(std::uint64_t n, const BigInt& a, const BigInt& b) {
    const Triple t(a, b, n);
    BigInt prod = 1;
    for (std::uint64_t d : divisors(n)) prod *= eval_homogeneous(d, a, b);
    return prod == pow(a, n) - pow(b, n);
}

/// (a-b)^phi(n) < Phi_n(a,b) < (a+b)^phi(n); defined for n >= 3 only.
inline bool bounds_check(std::uint64_t n, const BigInt& a, const BigInt& b) {
    const Triple t(a, b, n);
    if (n < 3) throw InvalidArgument("bounds_check needs n >= 3");
    const std::uint64_t phi = euler_phi(n);
    const BigInt v = eval_homogeneous(n, a, b);
    return pow(a - b, phi) < v && v < pow(a + b, phi);
}

}  // namespace zsig
