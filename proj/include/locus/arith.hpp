#pragma once

// Word-level modular arithmetic, primality and integer factorization.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace locus::arith {

using u128 = unsigned __int128;

/// Trial division covers every prime below this bound.
inline constexpr std::uint64_t kTrialDivisionBound = 1'000'000;

/// Miller-Rabin with the first 13 prime bases is deterministic below this value.
inline constexpr u128 kPrimalityCertifiedBound =
    static_cast<u128>(3317044064679ULL) * 1'000'000'000'000ULL + 887385961981ULL;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse of a modulo m; a must be coprime to m.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

u128 mul_mod(u128 a, u128 b, u128 m);
u128 pow_mod(u128 base, u128 exp, u128 m);

/// Deterministic for n < kPrimalityCertifiedBound.
bool is_prime(u128 n);
bool is_prime(std::uint64_t n);

/// Primes up to kTrialDivisionBound, increasing.
const std::vector<std::uint32_t>& small_primes();

/// Factors n >= 1 completely. Throws FactorizationCapacityExceeded when a
/// cofactor cannot be split or certified, or a prime factor exceeds 64 bits.
std::vector<std::pair<std::uint64_t, std::int64_t>> factor_integer(u128 n);

std::string to_string(u128 v);

/// Smallest prime factor of n >= 2.
std::uint64_t smallest_prime_factor(std::uint64_t n);

/// (prime, exponent) pairs of a machine integer n >= 1.
std::vector<std::pair<std::uint64_t, int>> factor_small(std::uint64_t n);

}  // namespace locus::arith
