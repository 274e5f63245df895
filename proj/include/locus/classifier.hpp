#pragma once

// Singleton classification, the even-n exceptional pair templates, and the
// general decision pipeline for n-th powers.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "locus/options.hpp"
#include "locus/rational.hpp"
#include "locus/verdict.hpp"

namespace locus::classifier {

/// n = 2^a0 * prod p_i^a_i with p_1 < p_2 < ... odd.
struct ExponentShape {
    std::int64_t n = 0;
    std::int64_t a0 = 0;
    std::vector<std::pair<std::uint64_t, std::int64_t>> odd;

    std::int64_t odd_part_power(std::uint64_t p) const;
    std::uint64_t smallest_prime() const;
};

ExponentShape shape_of(std::int64_t n);

/// "constant * alpha^exponent".
struct Slot {
    FactoredRational constant;
    std::int64_t exponent;

    FactoredRational instantiate(const FactoredRational& alpha) const;
    /// alpha with constant * alpha^exponent == x (alpha > 0 for even exponents).
    std::optional<FactoredRational> match(const FactoredRational& x) const;
};

struct Template {
    CaseTag tag;
    std::uint64_t pj = 0;
    Slot first;
    /// Absent for A0ge3_2half, whose second element is unconstrained.
    std::optional<Slot> second;
};

/// Pair templates applicable to n, in matching order (case order, then p_j increasing).
std::vector<Template> templates_for(std::int64_t n);

struct PairMatch {
    ExceptionalForm form;
    /// Index (0 or 1) of the element in the first template slot.
    std::size_t first;
    std::size_t second;
};

/// First template match in the fixed order, or nullopt. Throws NotEven / WrongCardinality.
std::optional<PairMatch> match_exceptional_pair(std::span<const FactoredRational> pair, std::int64_t n);

/// Every template match, in matching order.
std::vector<PairMatch> match_all_exceptional_pairs(std::span<const FactoredRational> pair, std::int64_t n);

/// The 2-element set a form describes.
std::vector<FactoredRational> instantiate(const ExceptionalForm& form, std::int64_t n);

/// Perfect n-th power, Wang exception (8 | n, a = 2^(n/2) b^n), or Fails.
Verdict classify_singleton(const FactoredRational& a, std::int64_t n, const EngineOptions& options = {});

/// Distinct classes, |A| <= 2, n even: singleton classification or template match.
Verdict decide_small_even(std::span<const FactoredRational> elements, std::int64_t n,
                          const EngineOptions& options = {});

/// Full pipeline: class dedupe, perfect member, singleton, even pairs, odd
/// small sets, per-prime-power components, lifted families, else Inconclusive.
Verdict decide(std::span<const FactoredRational> elements, std::int64_t n, const EngineOptions& options = {});

/// Primes dividing n together with every element's support.
std::vector<std::uint64_t> excluded_primes(std::span<const FactoredRational> elements, std::int64_t n);

}  // namespace locus::classifier
