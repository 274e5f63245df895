#pragma once

// q^m-th powers for odd primes q: reduction to the q case and a brute-force
// oracle over exponent tuples and subset pairs.

#include <cstdint>
#include <span>
#include <vector>

#include "locus/covering.hpp"
#include "locus/rational.hpp"
#include "locus/verdict.hpp"

namespace locus::prime_power {

struct LayerReduction {
    FactoredRational element;
    /// element = base^(q^mu), base not a perfect q-th power, mu < m.
    FactoredRational base;
    std::int64_t mu;
    /// Class of base modulo q-th powers (what the q case sees).
    FactoredRational rep;
};

/// Strips power layers from each element and reduces modulo q-th powers.
/// Throws PerfectPowerPresent when an element is a perfect q^m-th power.
std::vector<LayerReduction> reduce_to_prime_case(std::span<const FactoredRational> elements, std::uint64_t q,
                                                 std::int64_t m);

/// Perfect q^m-th power member, else: a failing q-case verdict on the
/// stripped classes refutes (the stripped set must hold whenever the original
/// does); otherwise the exact covering over (Z/q^m)^s decides.
Verdict decide_prime_power(std::span<const FactoredRational> elements, std::uint64_t q, std::int64_t m,
                           const covering::DecideOptions& options = {});

struct OracleLimits {
    std::size_t max_elements = 8;
    std::int64_t max_modulus = 27;
};

/// Holds iff for every c in (Z/q^m)^l there are disjoint B, C with
/// |B| != |C| (mod q) and prod_B a^c / prod_C a^c a perfect q^m-th power.
/// Fails carries the first (lexicographic) tuple c admitting no such pair.
Verdict skalba_oracle(std::span<const FactoredRational> elements, std::uint64_t q, std::int64_t m,
                      const OracleLimits& limits = {});

/// Exhaustive re-check that no subset pair works for the tuple c.
bool skalba_witness_holds(std::span<const FactoredRational> elements, std::uint64_t q, std::int64_t m,
                          std::span<const std::int64_t> c);

/// {a_j^(c_j)}; every c_j must be nonzero mod q. Throws NonUnitExponent.
std::vector<FactoredRational> exponentiate_classes(std::span<const FactoredRational> elements,
                                                   std::span<const std::int64_t> c, std::uint64_t q);

std::int64_t checked_power(std::uint64_t q, std::int64_t m);

}  // namespace locus::prime_power
