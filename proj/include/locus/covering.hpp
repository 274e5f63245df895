#pragma once

// Linear-form covering of (Z/M)^s and the q-th power decision built on it.
//
// Element j with exponent vector (mu_1j, ..., mu_sj) on the joint support
// gives the form y -> sum_i mu_ij y_i. The set contains a q-th power locally
// at almost every prime iff the kernels of these forms cover F_q^s. The same
// enumeration over (Z/q^m)^s decides q^m-th powers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "locus/rational.hpp"
#include "locus/verdict.hpp"

namespace locus::covering {

inline constexpr std::uint64_t kDefaultEnumerationCeiling = 1ULL << 24;

struct ExponentMatrix {
    std::int64_t modulus = 0;
    std::vector<std::uint64_t> support;
    /// One column per element, entries in [0, modulus).
    std::vector<std::vector<std::int64_t>> columns;
};

struct Hyperplane {
    std::vector<std::int64_t> coeffs;

    friend bool operator==(const Hyperplane&, const Hyperplane&) = default;
    friend auto operator<=>(const Hyperplane&, const Hyperplane&) = default;
};

struct HyperplaneSystem {
    ExponentMatrix matrix;
    /// One per element, in element order (duplicates kept; covers() collapses them).
    std::vector<Hyperplane> hyperplanes;
    /// Some column is zero: that element is a perfect power up to sign.
    bool trivial = false;
};

struct CoverOptions {
    std::uint64_t ceiling = kDefaultEnumerationCeiling;
    unsigned threads = 1;
};

struct CoverOutcome {
    bool covered = false;
    /// Lexicographically least uncovered point when !covered.
    std::vector<std::int64_t> point;
};

/// Elements must be q-free integers other than +-1 (exponents in [0, q)).
/// Throws NotQFree or UnitElement.
HyperplaneSystem build_hyperplanes(std::span<const FactoredRational> elements, std::uint64_t q);

/// Exponent columns modulo `modulus` of arbitrary nonzero rationals (signs ignored).
HyperplaneSystem build_system(std::span<const FactoredRational> elements, std::int64_t modulus);

/// Evaluates sum_i coeffs_i * point_i mod modulus.
std::int64_t evaluate(const Hyperplane& h, std::span<const std::int64_t> point, std::int64_t modulus);

bool is_uncovered(std::span<const Hyperplane> hyperplanes, std::span<const std::int64_t> point, std::int64_t modulus);

/// Exhaustive covering check of (Z/modulus)^s. Throws InstanceTooLarge when
/// modulus^s exceeds the ceiling.
CoverOutcome covers(std::span<const Hyperplane> hyperplanes, std::int64_t modulus, std::size_t s,
                    const CoverOptions& options = {});

/// Random search for an uncovered point; never proves coverage.
std::optional<std::vector<std::int64_t>> sample_uncovered(std::span<const Hyperplane> hyperplanes,
                                                          std::int64_t modulus, std::size_t s,
                                                          std::uint64_t samples, std::uint64_t seed);

struct DecideOptions {
    CoverOptions cover;
    /// Oversized instances are sampled instead of rejected; cannot yield Holds.
    bool monte_carlo = false;
    std::uint64_t monte_carlo_samples = 100'000;
    std::uint64_t monte_carlo_seed = 1;
};

/// q-th power decision for odd prime q: perfect q-th power member, or the
/// covering verdict on the reduced classes.
Verdict decide_q(std::span<const FactoredRational> elements, std::uint64_t q, const DecideOptions& options = {});

/// Covering verdict over (Z/q^m)^s on classes modulo q^m. Exact for odd prime q.
Verdict decide_module(std::span<const FactoredRational> elements, std::uint64_t q, std::int64_t m,
                      const DecideOptions& options = {});

/// Shared tail: run the covering on a prepared system and wrap the outcome.
Verdict covering_verdict(cert::Cover system, const std::vector<Hyperplane>& hyperplanes,
                         std::vector<std::uint64_t> excluded, const DecideOptions& options);

}  // namespace locus::covering
