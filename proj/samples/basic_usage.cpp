// Walk through the library on a few triples.

#include "zsig/cyclotomic.hpp"
#include "zsig/valuation.hpp"
#include "zsig/zsigmondy.hpp"

#include <iostream>

int main() {
    using namespace zsig;

    std::cout << "Phi_12(x) = " << cyclotomic_coeffs(12).to_string() << "  (ascending)\n";

    const Triple t(big(2), big(1), 18);
    std::cout << "Phi_18(2,1) = " << eval_homogeneous(t) << " = " << eval_mobius(18, t.a, t.b) << " = "
              << eval_recursive(18, t.a, t.b) << "\n";

    for (const auto& z : zsigmondy_primes(t)) std::cout << "Zsigmondy prime " << z.prime << "^" << z.exponent << "\n";

    const auto c = classify_prime_divisor(big(3), t);
    std::cout << "3 divides Phi_18(2,1) as " << to_string(c.kind) << " (k=" << c.k << ", beta=" << c.beta << ")\n";

    std::cout << "v_2(3^2 - 1^2) = " << lte_valuation(big(2), big(3), big(1), 2) << "\n";

    for (const Triple& u : {Triple(big(4), big(3), 2), Triple(big(3), big(1), 6), Triple(big(3), big(2), 12)}) {
        const ZsigReport r = analyze(u);
        std::cout << u.to_string() << ": Phi = " << r.phi_value << ", large = " << (r.has_large ? "yes" : "no")
                  << ", table case " << to_string(r.exception.kind) << "\n";
    }
}
