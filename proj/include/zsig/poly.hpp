#pragma once

// Dense univariate polynomials over Z with exact coefficients.

#include "zsig/bigint.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zsig {

class IntPoly {
public:
    IntPoly() = default;
    /// coeffs[k] is the coefficient of x^k.
    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    static IntPoly monomial(std::uint64_t degree, const BigInt& c = 1) {
        std::vector<BigInt> v(degree + 1);
        v[degree] = c;
        return IntPoly(std::move(v));
    }

    /// x^n - 1
    static IntPoly x_pow_minus_one(std::uint64_t n) {
        std::vector<BigInt> v(n + 1);
        v[0] = -1;
        v[n] += 1;
        return IntPoly(std::move(v));
    }

    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const BigInt& leading() const { return coeffs_.back(); }
    BigInt coeff(std::uint64_t k) const { return k < coeffs_.size() ? coeffs_[k] : BigInt(0); }

    friend bool operator==(const IntPoly& l, const IntPoly& r) { return l.coeffs_ == r.coeffs_; }

    friend IntPoly operator*(const IntPoly& l, const IntPoly& r) {
        if (l.is_zero() || r.is_zero()) return {};
        std::vector<BigInt> out(l.coeffs_.size() + r.coeffs_.size() - 1);
        for (std::size_t i = 0; i < l.coeffs_.size(); ++i) {
            if (sgn(l.coeffs_[i]) == 0) continue;
            for (std::size_t j = 0; j < r.coeffs_.size(); ++j) out[i + j] += l.coeffs_[i] * r.coeffs_[j];
        }
        return IntPoly(std::move(out));
    }

    /// p(x^k)
    IntPoly compose_x_power(std::uint64_t k) const {
        if (k == 0) throw InvalidArgument("compose_x_power needs k >= 1");
        if (is_zero()) return {};
        std::vector<BigInt> out(static_cast<std::size_t>(degree()) * k + 1);
        for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i * k] = coeffs_[i];
        return IntPoly(std::move(out));
    }

    /// Quotient of *this by a monic divisor; throws std::logic_error when the
    /// remainder is nonzero.
    IntPoly exact_divide(const IntPoly& divisor) const;

    /// sum_k c_k a^k b^(total_degree - k). total_degree must be >= degree().
    BigInt eval_homogeneous(const BigInt& a, const BigInt& b, std::uint64_t total_degree) const {
        if (is_zero()) return 0;
        if (static_cast<long>(total_degree) < degree()) throw InvalidArgument("total degree below polynomial degree");
        BigInt r = coeffs_.back();
        BigInt bpow = 1;
        for (long k = degree() - 1; k >= 0; --k) {
            bpow *= b;
            r *= a;
            const BigInt& c = coeffs_[static_cast<std::size_t>(k)];
            if (sgn(c) != 0) r += c * bpow;
        }
        // leftover b-power when total_degree exceeds the degree
        if (static_cast<long>(total_degree) > degree()) r *= pow(b, total_degree - static_cast<std::uint64_t>(degree()));
        return r;
    }

    BigInt eval(const BigInt& x) const { return eval_homogeneous(x, 1, coeffs_.empty() ? 0 : degree()); }

    /// Coefficients in ascending degree separated by single spaces.
    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (i) s += ' ';
            s += coeffs_[i].get_str();
        }
        return s.empty() ? "0" : s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

namespace detail {

// Long division by a monic divisor in 64-bit arithmetic. Returns nullopt on
// any overflow so the caller can redo the work with BigInt.
inline std::optional<std::pair<std::vector<std::int64_t>, bool>> exact_divide_i64(const std::vector<BigInt>& num,
                                                                                   const std::vector<BigInt>& den) {
    auto to_i64 = [](const std::vector<BigInt>& v, std::vector<std::int64_t>& out) {
        out.resize(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].fits_slong_p()) return false;
            out[i] = v[i].get_si();
        }
        return true;
    };
    std::vector<std::int64_t> r, d;
    if (!to_i64(num, r) || !to_i64(den, d)) return std::nullopt;
    const std::size_t dn = d.size() - 1;
    std::vector<std::int64_t> q(r.size() - dn, 0);
    for (std::size_t i = r.size(); i-- > dn;) {
        const std::int64_t c = r[i];
        q[i - dn] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) {
            std::int64_t prod;
            if (__builtin_mul_overflow(c, d[j], &prod)) return std::nullopt;
            if (__builtin_sub_overflow(r[i - dn + j], prod, &r[i - dn + j])) return std::nullopt;
        }
    }
    bool exact = true;
    for (std::size_t i = 0; i < dn; ++i) exact = exact && r[i] == 0;
    return std::make_pair(std::move(q), exact);
}

}  // namespace detail

inline IntPoly IntPoly::exact_divide(const IntPoly& divisor) const {
    if (divisor.is_zero() || divisor.leading() != 1) throw InvalidArgument("exact_divide needs a monic divisor");
    if (degree() < divisor.degree()) {
        if (is_zero()) return {};
        throw std::logic_error("polynomial division left a nonzero remainder");
    }
    if (auto fast = detail::exact_divide_i64(coeffs_, divisor.coeffs_)) {
        if (!fast->second) throw std::logic_error("polynomial division left a nonzero remainder");
        std::vector<BigInt> q;
        q.reserve(fast->first.size());
        for (std::int64_t c : fast->first) q.emplace_back(static_cast<long>(c));
        return IntPoly(std::move(q));
    }
    std::vector<BigInt> r = coeffs_;
    const auto& d = divisor.coeffs_;
    const std::size_t dn = d.size() - 1;
    std::vector<BigInt> q(r.size() - dn);
    for (std::size_t i = r.size(); i-- > dn;) {
        const BigInt c = r[i];
        q[i - dn] = c;
        if (sgn(c) == 0) continue;
        for (std::size_t j = 0; j <= dn; ++j) r[i - dn + j] -= c * d[j];
    }
    for (std::size_t i = 0; i < dn; ++i)
        if (sgn(r[i]) != 0) throw std::logic_error("polynomial division left a nonzero remainder");
    return IntPoly(std::move(q));
}

}  // namespace zsig
