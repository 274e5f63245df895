#pragma once

// Power-residue tests modulo single primes and scans over prime ranges.
//
// For an odd prime p not dividing k or any element's support, "a is a k-th
// power residue mod p" is equivalent to "a is a k-th power in Z_p" (Hensel).
// The scanner only checks the residue side; the exclusion policy below is
// what keeps the equivalence applicable.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "locus/rational.hpp"

namespace locus::sieve {

inline constexpr std::uint64_t kDefaultRangeCeiling = 1'000'000'000;

struct ScanOptions {
    std::uint64_t range_ceiling = kDefaultRangeCeiling;
    unsigned threads = 1;
};

struct ScanParams {
    std::vector<FactoredRational> elements;
    std::int64_t k = 1;
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    /// Effective exclusions: caller's set plus 2, primes dividing k, and all supports.
    std::vector<std::uint64_t> excluded;
};

struct SieveReport {
    ScanParams params;
    /// Increasing. Primes in range where no element is a k-th power residue.
    std::vector<std::uint64_t> failing_primes;
    std::uint64_t tested_count = 0;

    /// |failing| / tested as a reduced "num/den" string ("0/1" when nothing was tested).
    std::string failing_density() const;
};

/// a mod p as an element of [1, p-1]; p must not divide the support of a.
std::uint64_t residue_mod(const FactoredRational& a, std::uint64_t p);

/// a^((p-1)/d) == 1 (mod p) with d = gcd(k, p-1). Throws BadPrime for p = 2,
/// even p, or p dividing the support of a.
bool is_kth_power_mod_p(const FactoredRational& a, std::int64_t k, std::uint64_t p);

bool set_has_kth_power_mod_p(std::span<const FactoredRational> elements, std::int64_t k, std::uint64_t p);

/// Sorted union of `extra`, {2}, primes dividing k and every element's support.
std::vector<std::uint64_t> auto_exclusions(std::span<const FactoredRational> elements, std::int64_t k,
                                           std::span<const std::uint64_t> extra = {});

/// Primes in [lo, hi] by a segmented sieve. Throws RangeTooLarge when hi > ceiling.
std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi,
                                           std::uint64_t ceiling = kDefaultRangeCeiling);

SieveReport scan(std::span<const FactoredRational> elements, std::int64_t k, std::uint64_t lo, std::uint64_t hi,
                 std::span<const std::uint64_t> excluded = {}, const ScanOptions& options = {});

/// Least non-excluded prime <= bound at which the set has no k-th power residue.
std::optional<std::uint64_t> find_counterexample(std::span<const FactoredRational> elements, std::int64_t k,
                                                 std::uint64_t bound,
                                                 std::span<const std::uint64_t> excluded = {});

}  // namespace locus::sieve
