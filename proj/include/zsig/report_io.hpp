#pragma once

// Rendering of coefficient listings, single-triple reports and scan reports
// as JSON, CSV or plain text. Big integers are written as decimal strings in
// JSON so no consumer loses precision.
//
// Scan JSON schema (field names are fixed):
//   {
//     "config":     {"a_max", "n_max", "trial_bound", "rho_budget", "ecm_curves"},
//     "summary":    {"triples_scanned", "exceptions", "mismatches", "incomplete",
//                    "unproven_primes", "verified", "elapsed_seconds"},
//     "exceptions": [{"a", "b", "n", "case", "witness"}],
//     "mismatches": [{"a", "b", "n", "reasons": [..]}],
//     "incomplete": [{"a", "b", "n", "cofactor"}]
//   }
// The worker count is not echoed: it does not affect the result, and
// reports from serial and parallel runs are byte-identical apart from
// elapsed_seconds.

#include "json.hpp"
#include "zsig/cyclotomic.hpp"
#include "zsig/scan.hpp"
#include "zsig/zsigmondy.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace zsig {

using Json = nlohmann::ordered_json;

inline std::string to_string(OutputFormat f) {
    switch (f) {
        case OutputFormat::Json: return "json";
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Text: return "text";
    }
    return "?";
}

inline OutputFormat parse_format(const std::string& s) {
    if (s == "json") return OutputFormat::Json;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "text") return OutputFormat::Text;
    throw InvalidArgument("unknown format '" + s + "' (expected json, csv or text)");
}

namespace detail {

inline Json int_json(const BigInt& v) {
    if (fits_u64(v)) return to_u64(v);
    return v.get_str();
}

inline Json witness_json(const ExceptionCase& e, std::uint64_t a, std::uint64_t b) {
    switch (e.kind) {
        case ExceptionKind::None: return Json::object();
        case ExceptionKind::ZsigClassicN2:
        case ExceptionKind::CaseI_N2: return Json{{"s", e.s}, {"t", e.t}};
        default: return Json{{"pair", Json::array({a, b})}};
    }
}

inline std::string join_primes(const std::vector<ZsigPrime>& ps) {
    std::string s;
    for (const auto& p : ps) {
        if (!s.empty()) s += ';';
        s += p.prime.get_str();
    }
    return s;
}

inline std::string factorization_string(const Factorization& f) {
    std::string s;
    for (const auto& pp : f.factors) {
        if (!s.empty()) s += " * ";
        s += pp.prime.get_str();
        if (pp.exponent > 1) s += "^" + std::to_string(pp.exponent);
    }
    if (!f.complete) s += (s.empty() ? "" : " * ") + std::string("[unfactored ") + f.cofactor.get_str() + "]";
    return s.empty() ? "1" : s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// coeffs
// ---------------------------------------------------------------------------

inline std::string render_coeffs(std::uint64_t n, OutputFormat fmt) {
    const IntPoly poly = cyclotomic_coeffs(n);
    if (fmt == OutputFormat::Json) {
        Json coeffs = Json::array();
        for (const auto& c : poly.coeffs()) coeffs.push_back(c.fits_slong_p() ? Json(c.get_si()) : Json(c.get_str()));
        Json j{{"n", n}, {"degree", poly.degree()}, {"phi", euler_phi(n)}, {"coeffs", coeffs}};
        return j.dump(2) + "\n";
    }
    if (fmt == OutputFormat::Csv) {
        std::string s = "degree,coefficient\n";
        for (std::size_t k = 0; k < poly.coeffs().size(); ++k) s += std::to_string(k) + "," + poly.coeffs()[k].get_str() + "\n";
        return s;
    }
    return poly.to_string() + "\n";
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

inline Json to_json(const ZsigReport& r) {
    Json factors = Json::array();
    for (const auto& pp : r.factorization.factors)
        factors.push_back({{"prime", pp.prime.get_str()}, {"exponent", pp.exponent}, {"proven", pp.proven}});
    Json classes = Json::array();
    for (const auto& c : r.classes)
        classes.push_back({{"prime", c.p.get_str()}, {"case", std::string(to_string(c.kind))}, {"k", c.k}, {"beta", c.beta}});
    auto primes = [](const std::vector<ZsigPrime>& ps) {
        Json a = Json::array();
        for (const auto& p : ps) a.push_back({{"prime", p.prime.get_str()}, {"exponent", p.exponent}});
        return a;
    };
    Json j;
    j["a"] = detail::int_json(r.triple.a);
    j["b"] = detail::int_json(r.triple.b);
    j["n"] = r.triple.n;
    j["M"] = r.M;
    j["phi_value"] = r.phi_value.get_str();
    j["factorization"] = {{"factors", factors}, {"complete", r.factorization_complete},
                          {"cofactor", r.factorization.cofactor.get_str()}};
    j["classification"] = classes;
    j["zsig_primes"] = primes(r.zsig_primes);
    j["large_zsig_primes"] = primes(r.large_zsig_primes);
    j["has_zsigmondy"] = r.has_zsigmondy;
    j["has_large"] = r.has_large;
    j["exception"] = {{"case", std::string(to_string(r.exception.kind))},
                      {"witness", r.exception.kind == ExceptionKind::ZsigClassicN2 ||
                                          r.exception.kind == ExceptionKind::CaseI_N2
                                      ? Json{{"s", r.exception.s}, {"t", r.exception.t}}
                                      : Json::object()}};
    Json fast{{"has_large", r.fast.has_large}, {"zsigmondy_part", r.fast.zsigmondy_part.get_str()}};
    if (r.fast.stripped_prime) {
        fast["stripped_prime"] = r.fast.stripped_prime->get_str();
        fast["stripped_exponent"] = r.fast.stripped_exponent;
    }
    j["fast_decision"] = fast;
    if (r.sufficiency) j["sufficiency"] = *r.sufficiency;
    if (r.bounds_ok) j["bounds_ok"] = *r.bounds_ok;
    j["violations"] = r.violations;
    return j;
}

inline std::string render_report(const ZsigReport& r, OutputFormat fmt) {
    if (fmt == OutputFormat::Json) return to_json(r).dump(2) + "\n";
    if (fmt == OutputFormat::Csv) {
        std::ostringstream os;
        os << "a,b,n,phi_value,zsig_primes,large_primes,exception,exit_status\n";
        const int status = !r.violations.empty() ? 1 : !r.factorization_complete ? 2 : r.has_large ? 0 : 1;
        os << r.triple.a << ',' << r.triple.b << ',' << r.triple.n << ',' << r.phi_value << ','
           << detail::join_primes(r.zsig_primes) << ',' << detail::join_primes(r.large_zsig_primes) << ','
           << to_string(r.exception.kind) << ',' << status << '\n';
        return os.str();
    }
    std::ostringstream os;
    auto list = [](const std::vector<ZsigPrime>& ps) {
        if (ps.empty()) return std::string("(none)");
        std::string s;
        for (const auto& p : ps) {
            if (!s.empty()) s += ", ";
            s += p.prime.get_str();
            if (p.exponent > 1) s += "^" + std::to_string(p.exponent);
        }
        return s;
    };
    os << "triple          " << r.triple.to_string() << "\n";
    if (r.M != 1) os << "M               " << r.M << "\n";
    os << "Phi_n(a,b)      " << r.phi_value << "\n";
    os << "factorization   " << detail::factorization_string(r.factorization) << "\n";
    for (const auto& c : r.classes)
        os << "  " << c.p << "  " << to_string(c.kind) << " k=" << c.k << " beta=" << c.beta << "\n";
    os << "zsigmondy       " << list(r.zsig_primes) << "\n";
    os << "large           " << list(r.large_zsig_primes) << "\n";
    os << "has_zsigmondy   " << (r.has_zsigmondy ? "true" : "false") << "\n";
    os << "has_large       " << (r.has_large ? "true" : "false") << "\n";
    os << "exception       " << to_string(r.exception.kind) << "\n";
    os << "fast decision   zsigmondy part " << r.fast.zsigmondy_part;
    if (r.fast.stripped_prime) os << " (stripped " << *r.fast.stripped_prime << "^" << r.fast.stripped_exponent << ")";
    os << " -> " << (r.fast.has_large ? "large prime exists" : "no large prime") << "\n";
    if (r.sufficiency) os << "sufficiency     " << (*r.sufficiency ? "true" : "false") << "\n";
    for (const auto& v : r.violations) os << "VIOLATION       " << v << "\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------------

inline std::size_t unproven_prime_count(const ScanReport& r) {
    std::size_t c = 0;
    for (const auto& row : r.rows) c += row.unproven_primes.size();
    return c;
}

inline Json to_json(const ScanReport& r) {
    Json j;
    j["config"] = {{"a_max", r.config.a_max},
                   {"n_max", r.config.n_max},
                   {"trial_bound", r.config.trial_division_bound},
                   {"rho_budget", r.config.rho_step_budget},
                   {"ecm_curves", r.config.ecm_curves}};
    j["summary"] = {{"triples_scanned", r.triples_scanned},
                    {"exceptions", r.exceptions_found.size()},
                    {"mismatches", r.mismatches.size()},
                    {"incomplete", r.incomplete.size()},
                    {"unproven_primes", unproven_prime_count(r)},
                    {"verified", r.verified()},
                    {"elapsed_seconds", r.elapsed_seconds}};
    Json ex = Json::array();
    for (const auto& e : r.exceptions_found)
        ex.push_back({{"a", e.a},
                      {"b", e.b},
                      {"n", e.n},
                      {"case", std::string(to_string(e.exception.kind))},
                      {"witness", detail::witness_json(e.exception, e.a, e.b)}});
    j["exceptions"] = ex;
    Json mm = Json::array();
    for (const auto& m : r.mismatches) mm.push_back({{"a", m.a}, {"b", m.b}, {"n", m.n}, {"reasons", m.reasons}});
    j["mismatches"] = mm;
    Json inc = Json::array();
    for (const auto& i : r.incomplete)
        inc.push_back({{"a", i.a}, {"b", i.b}, {"n", i.n}, {"cofactor", i.cofactor.get_str()}});
    j["incomplete"] = inc;
    return j;
}

inline std::string render_scan(const ScanReport& r, OutputFormat fmt) {
    if (fmt == OutputFormat::Json) return to_json(r).dump(2) + "\n";
    std::ostringstream os;
    if (fmt == OutputFormat::Csv) {
        os << "a,b,n,phi_value,zsig_primes,large_primes,exception,exit_status\n";
        for (const auto& row : r.rows)
            os << row.a << ',' << row.b << ',' << row.n << ',' << row.phi_value << ','
               << detail::join_primes(row.zsig_primes) << ',' << detail::join_primes(row.large_primes) << ','
               << to_string(row.exception.kind) << ',' << row.exit_status() << '\n';
        return os.str();
    }
    os << "scan a <= " << r.config.a_max << ", n <= " << r.config.n_max << "\n";
    os << "triples scanned   " << r.triples_scanned << "\n";
    os << "exceptions        " << r.exceptions_found.size() << "\n";
    os << "mismatches        " << r.mismatches.size() << "\n";
    os << "incomplete        " << r.incomplete.size() << "\n";
    os << "unproven primes   " << unproven_prime_count(r) << "\n";
    os << "verified          " << (r.verified() ? "yes" : "no") << "\n";
    os << "\nno large Zsigmondy prime:\n";
    for (const auto& e : r.exceptions_found)
        os << "  (" << e.a << "," << e.b << "," << e.n << ")  " << to_string(e.exception.kind) << "\n";
    if (!r.mismatches.empty()) {
        os << "\nmismatches:\n";
        for (const auto& m : r.mismatches)
            for (const auto& reason : m.reasons) os << "  (" << m.a << "," << m.b << "," << m.n << ")  " << reason << "\n";
    }
    if (!r.incomplete.empty()) {
        os << "\nincomplete:\n";
        for (const auto& i : r.incomplete)
            os << "  (" << i.a << "," << i.b << "," << i.n << ")  cofactor " << i.cofactor << "\n";
    }
    return os.str();
}

}  // namespace zsig
