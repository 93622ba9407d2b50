#pragma once

// Unbounded integers for the whole library. GMP's C++ wrapper supplies the
// representation; everything that can outgrow a machine word goes through
// BigInt so nothing wraps silently.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zsig {

using BigInt = mpz_class;

/// Rejected input: precondition or invariant violated by the caller.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline BigInt big(std::uint64_t v) {
    BigInt r;
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return r;
}

inline BigInt pow(const BigInt& base, std::uint64_t exponent) {
    if (exponent > ~0UL) throw InvalidArgument("exponent too large");
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
    return r;
}

inline bool fits_u64(const BigInt& v) {
    return sgn(v) >= 0 && mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

inline std::uint64_t to_u64(const BigInt& v) {
    if (!fits_u64(v)) throw InvalidArgument("value does not fit in 64 bits: " + v.get_str());
    std::uint64_t r = 0;
    mpz_export(&r, nullptr, -1, sizeof(r), 0, 0, v.get_mpz_t());
    return r;
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }

/// Parses a decimal integer, rejecting anything else (including empty input).
inline BigInt parse_bigint(const std::string& text) {
    if (text.empty()) throw InvalidArgument("empty integer literal");
    std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (i == text.size()) throw InvalidArgument("malformed integer: " + text);
    for (std::size_t j = i; j < text.size(); ++j)
        if (text[j] < '0' || text[j] > '9') throw InvalidArgument("malformed integer: " + text);
    BigInt r;
    if (r.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0)
        throw InvalidArgument("malformed integer: " + text);
    return r;
}

inline std::size_t bit_length(const BigInt& v) {
    return sgn(v) == 0 ? 0 : mpz_sizeinbase(v.get_mpz_t(), 2);
}

}  // namespace zsig
