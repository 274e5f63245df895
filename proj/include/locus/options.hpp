#pragma once

#include <cstdint>

#include "locus/covering.hpp"

namespace locus {

struct EngineOptions {
    covering::DecideOptions covering;
    /// Attach a sieve scan over [3, evidence_bound] and counterexample searches.
    bool evidence = false;
    std::uint64_t evidence_bound = 10'000;
};

}  // namespace locus
