#pragma once

// Independent re-checking of verdict certificates against the set and
// exponent they claim to decide.

#include <cstdint>
#include <span>
#include <string>

#include "locus/covering.hpp"
#include "locus/prime_power.hpp"
#include "locus/rational.hpp"
#include "locus/verdict.hpp"

namespace locus::verify {

struct Result {
    bool valid = true;
    std::string reason;

    explicit operator bool() const { return valid; }
};

struct Options {
    std::uint64_t enumeration_ceiling = covering::kDefaultEnumerationCeiling;
    prime_power::OracleLimits oracle;
};

/// Checks that `v` is a correct verdict for "elements contains an n-th power
/// locally at almost every prime", using only the certificate.
Result check(const Verdict& v, std::int64_t n, std::span<const FactoredRational> elements,
             const Options& options = {});

/// True when a Holds verdict carries sieve evidence with a failing prime
/// outside its excluded set. That combination is impossible for a sound engine.
bool contradicts_evidence(const Verdict& v);

}  // namespace locus::verify
