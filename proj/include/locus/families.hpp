#pragma once

// Witness families: sets known to contain an n-th power locally at almost
// every prime.

#include <cstdint>
#include <vector>

#include "locus/rational.hpp"
#include "locus/verdict.hpp"

namespace locus::families {

/// {a, b, ab, ab^2}. Throws DegenerateParameters for a == b, zero, or units.
std::vector<FactoredRational> cubic_quad(std::int64_t a, std::int64_t b);

/// {p1, p2, p1 p2} for distinct odd primes.
std::vector<FactoredRational> square_triple(std::uint64_t p1, std::uint64_t p2);

/// {x^e : x in A}, e >= 1.
std::vector<FactoredRational> lifted(const std::vector<FactoredRational>& set, std::int64_t e);

/// {q1, q2, q1 q2, ..., q1 q2^(p1-1)} raised to n/p1, p1 the smallest prime of odd n >= 3.
std::vector<FactoredRational> odd_optimal(std::uint64_t q1, std::uint64_t q2, std::int64_t n);

/// {q1^(n/2), q2^(n/2), (q1 q2)^(n/2)} for distinct odd primes and even n.
std::vector<FactoredRational> even_optimal(std::uint64_t q1, std::uint64_t q2, std::int64_t n);

/// The pair a template describes. Throws InapplicableCase when the tag or
/// p_j does not fit n (Wang8 is a singleton tag and always throws).
std::vector<FactoredRational> exceptional_pair(std::int64_t n, CaseTag tag, std::uint64_t pj,
                                               const FactoredRational& alpha1, const FactoredRational& alpha2);

}  // namespace locus::families
