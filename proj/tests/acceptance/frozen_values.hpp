#pragma once

// Least counterexample primes for the hand-listed failing instances,
// produced by tests/oracles/least_primes.py (direct enumeration of x^k mod p).

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace acceptance {

struct FrozenFailure {
    std::vector<const char*> elements;
    std::int64_t n;
    std::uint64_t least_prime;
};

inline const std::vector<FrozenFailure>& frozen_failures() {
    static const std::vector<FrozenFailure> table{
        {{"2", "3", "12"}, 3, 7},
        {{"2", "4", "8"}, 9, 19},
        {{"4", "8"}, 6, 13},
        {{"2", "3"}, 2, 5},
        {{"2"}, 3, 7},
        {{"2"}, 2, 3},
        {{"3"}, 2, 5},
        {{"5"}, 3, 7},
        {{"2", "5"}, 2, 3},
        {{"-1"}, 2, 3},
        {{"2", "3", "5"}, 2, 43},
        {{"7", "11"}, 3, 13},
        {{"2", "3"}, 4, 5},
        {{"-27", "8"}, 6, 5},
        {{"3", "5", "15"}, 3, 19},
        {{"4"}, 4, 5},
        {{"2", "3", "6", "12"}, 5, 61},
        {{"2"}, 5, 11},
        {{"2", "3"}, 8, 5},
        {{"3/2", "5/7"}, 3, 31},
    };
    return table;
}

}  // namespace acceptance
