#pragma once

// Squares: a set contains a square locally at almost every prime iff some
// odd-size subset multiplies to a perfect square. Decided by elimination over
// GF(2) on (sign bit, exponent parities).

#include <cstdint>
#include <span>

#include "locus/options.hpp"
#include "locus/rational.hpp"
#include "locus/verdict.hpp"

namespace locus::square {

/// Holds carries the smallest (then lexicographically first) odd subset with a
/// square product; Fails carries a parity character that is odd on every element.
Verdict decide_square(std::span<const FactoredRational> elements, const EngineOptions& options = {});

/// 2^a0-th powers: squares for a0 = 1, the singleton/pair classification for
/// |A| <= 2, Inconclusive otherwise.
Verdict decide_two_power(std::span<const FactoredRational> elements, std::int64_t a0,
                         const EngineOptions& options = {});

}  // namespace locus::square
