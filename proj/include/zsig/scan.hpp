#pragma once

// Exhaustive range scan: every coprime (a, b, n) with 2 <= a <= a_max,
// 1 <= b < a, 2 <= n <= n_max is analyzed and its computed existence of a
// large Zsigmondy prime compared with the exception table.
//
// Work is partitioned by (a, b) pair. Workers share nothing but the
// immutable cyclotomic coefficient table; rows land in per-pair slots, so the
// report is identical for any worker count.

#include "zsig/cyclotomic.hpp"
#include "zsig/factor.hpp"
#include "zsig/zsigmondy.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <mutex>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace zsig {

enum class OutputFormat { Json, Csv, Text };

struct ScanConfig {
    std::uint64_t a_max = 2;
    std::uint64_t n_max = 2;
    std::uint64_t trial_division_bound = FactorBudget{}.trial_bound;
    std::uint64_t rho_step_budget = FactorBudget{}.rho_steps;
    std::uint64_t ecm_curves = FactorBudget{}.ecm_curves;
    unsigned parallelism = 1;  // 0 = hardware concurrency
    OutputFormat output_format = OutputFormat::Json;

    void validate() const {
        if (a_max < 2) throw InvalidArgument("a_max must be >= 2");
        if (n_max < 2) throw InvalidArgument("n_max must be >= 2");
        if (trial_division_bound < 2) throw InvalidArgument("trial division bound must be >= 2");
        if (rho_step_budget < 1) throw InvalidArgument("rho step budget must be positive");
    }
    FactorBudget budget() const {
        FactorBudget b;
        b.trial_bound = trial_division_bound;
        b.rho_steps = rho_step_budget;
        b.ecm_curves = ecm_curves;
        return b;
    }
};

/// One analyzed triple, flattened for serialization.
struct ScanRow {
    std::uint64_t a = 0, b = 0, n = 0;
    BigInt phi_value;
    std::vector<ZsigPrime> zsig_primes;
    std::vector<ZsigPrime> large_primes;
    std::vector<BigInt> unproven_primes;
    bool has_zsigmondy = false;
    bool has_large = false;
    bool fast_has_large = false;
    bool complete = true;
    BigInt cofactor = 1;
    ExceptionCase exception;
    std::vector<std::string> violations;

    /// 0 large prime found, 1 exception or mismatch, 2 incomplete factorization.
    int exit_status() const {
        if (!violations.empty()) return 1;
        if (!complete) return 2;
        return has_large ? 0 : 1;
    }
};

/// A scanned triple without a large Zsigmondy prime, labelled with the
/// exception-table case it matched (None if the table does not list it).
struct ScanException {
    std::uint64_t a, b, n;
    ExceptionCase exception;
};

struct ScanMismatch {
    std::uint64_t a, b, n;
    std::vector<std::string> reasons;
};

struct ScanIncomplete {
    std::uint64_t a, b, n;
    BigInt cofactor;
};

struct ScanReport {
    ScanConfig config;
    std::uint64_t triples_scanned = 0;
    std::vector<ScanException> exceptions_found;
    std::vector<ScanMismatch> mismatches;
    std::vector<ScanIncomplete> incomplete;
    std::vector<ScanRow> rows;  // canonical (a, b, n) order
    double elapsed_seconds = 0;

    bool verified() const { return mismatches.empty() && incomplete.empty(); }
    int exit_code() const {
        if (!mismatches.empty()) return 1;
        if (!incomplete.empty()) return 2;
        return 0;
    }
};

inline ScanRow scan_one(std::uint64_t a, std::uint64_t b, std::uint64_t n, const FactorBudget& budget) {
    ScanRow row;
    row.a = a;
    row.b = b;
    row.n = n;
    try {
        const Triple t(big(a), big(b), n);
        ZsigReport r = analyze(t, budget);
        row.phi_value = r.phi_value;
        row.zsig_primes = std::move(r.zsig_primes);
        row.large_primes = std::move(r.large_zsig_primes);
        for (const auto& pp : r.factorization.factors)
            if (!pp.proven) row.unproven_primes.push_back(pp.prime);
        row.has_zsigmondy = r.has_zsigmondy;
        row.has_large = r.has_large;
        row.fast_has_large = r.fast.has_large;
        row.complete = r.factorization_complete;
        row.cofactor = r.factorization.cofactor;
        row.exception = r.exception;
        row.violations = std::move(r.violations);
    } catch (const std::exception& e) {
        row.violations.push_back(std::string("analysis failed: ") + e.what());
    }
    return row;
}

using ScanProgress = std::function<void(std::size_t done, std::size_t total)>;

inline ScanReport run_scan(const ScanConfig& config, const ScanProgress& progress = {}) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const FactorBudget budget = config.budget();

    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
    for (std::uint64_t a = 2; a <= config.a_max; ++a)
        for (std::uint64_t b = 1; b < a; ++b)
            if (std::gcd(a, b) == 1) pairs.emplace_back(a, b);

    // Warm shared tables before fanning out.
    (void)prime_table(budget.trial_bound);
    for (std::uint64_t n = 1; n <= config.n_max; ++n) (void)CyclotomicTable::instance().get(n);

    std::vector<std::vector<ScanRow>> slots(pairs.size());
    std::atomic<std::size_t> next{0}, done{0};
    std::mutex progress_mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < pairs.size(); i = next++) {
            auto [a, b] = pairs[i];
            for (std::uint64_t n = 2; n <= config.n_max; ++n) slots[i].push_back(scan_one(a, b, n, budget));
            const std::size_t d = ++done;
            if (progress) {
                std::lock_guard lock(progress_mu);
                progress(d, pairs.size());
            }
        }
    };
    unsigned jobs = config.parallelism == 0 ? std::max(1u, std::thread::hardware_concurrency()) : config.parallelism;
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(pairs.size(), 1)));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }

    ScanReport report;
    report.config = config;
    for (auto& slot : slots)
        for (auto& row : slot) report.rows.push_back(std::move(row));
    std::sort(report.rows.begin(), report.rows.end(), [](const ScanRow& l, const ScanRow& r) {
        return std::tie(l.a, l.b, l.n) < std::tie(r.a, r.b, r.n);
    });
    for (const auto& row : report.rows) {
        ++report.triples_scanned;
        if (row.complete && !row.has_large) report.exceptions_found.push_back({row.a, row.b, row.n, row.exception});
        if (!row.violations.empty()) report.mismatches.push_back({row.a, row.b, row.n, row.violations});
        if (!row.complete) report.incomplete.push_back({row.a, row.b, row.n, row.cofactor});
    }
    report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace zsig
