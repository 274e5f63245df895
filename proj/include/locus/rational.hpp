#pragma once

// Exact arithmetic on nonzero rationals kept in factored form.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace locus {

struct PrimePower {
    std::uint64_t prime;
    std::int64_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
    friend auto operator<=>(const PrimePower&, const PrimePower&) = default;
};

/// A nonzero rational written as sign * prod p^e. Primes are strictly
/// increasing and no exponent is zero; denominators carry negative exponents.
class FactoredRational {
public:
    /// The rational 1.
    FactoredRational() = default;

    /// Normalizes: sorts by prime, merges repeats, drops zero exponents.
    /// `sign` must be +1 or -1; primes are trusted to be prime.
    FactoredRational(int sign, std::vector<PrimePower> factors);

    static FactoredRational from_integer(std::int64_t value);
    static FactoredRational from_ratio(std::int64_t num, std::int64_t den);

    int sign() const noexcept { return sign_; }
    std::span<const PrimePower> factors() const noexcept { return factors_; }

    bool is_one() const noexcept { return sign_ == 1 && factors_.empty(); }
    bool is_minus_one() const noexcept { return sign_ == -1 && factors_.empty(); }
    bool is_unit() const noexcept { return factors_.empty(); }
    bool is_integral() const noexcept;

    /// Exponent of p (0 when p is not in the support).
    std::int64_t exponent_of(std::uint64_t p) const noexcept;
    std::vector<std::uint64_t> support() const;

    FactoredRational operator*(const FactoredRational& rhs) const;
    FactoredRational operator/(const FactoredRational& rhs) const;
    FactoredRational operator-() const;
    FactoredRational inverse() const;
    FactoredRational abs() const;
    /// Integer power; negative exponents allowed. Throws CapacityError on exponent overflow.
    FactoredRational pow(std::int64_t e) const;

    /// Numerator part (sign included) and denominator part as factored integers.
    FactoredRational numerator() const;
    FactoredRational denominator() const;

    std::string numerator_string() const;
    std::string denominator_string() const;
    /// Normalized "num/den" with den > 0 (integers render as "k/1").
    std::string to_string() const;

    friend bool operator==(const FactoredRational&, const FactoredRational&) = default;
    friend std::strong_ordering operator<=>(const FactoredRational& a, const FactoredRational& b);

private:
    int sign_ = 1;
    std::vector<PrimePower> factors_;
};

/// Representative of x in Q^x / (Q^x)^k: exponents in [0, k), sign +1 when k is odd.
struct PowerClass {
    std::int64_t modulus;
    FactoredRational rep;

    friend bool operator==(const PowerClass&, const PowerClass&) = default;
};

struct StrippedPower {
    FactoredRational base;
    std::int64_t mu;
};

/// Parses "[+-]digits" or "[+-]digits/digits" (base 10) and factors it.
/// Throws InputError on bad syntax, ZeroInput on zero, FactorizationCapacityExceeded
/// when a factor cannot be certified.
FactoredRational parse_rational(std::string_view text);

FactoredRational factor(std::int64_t num, std::int64_t den = 1);

/// Multiplies every element by (b_1 b_2 ... b_k)^n, b_j the denominators.
std::vector<FactoredRational> clear_denominators(std::span<const FactoredRational> elements, std::int64_t n);

/// True iff x = r^k for a rational r.
bool is_perfect_power(const FactoredRational& x, std::int64_t k);

/// r with r^k = x, choosing r > 0 when k is even; nullopt if x is not a perfect k-th power.
std::optional<FactoredRational> exact_root(const FactoredRational& x, std::int64_t k);

PowerClass reduce_class(const FactoredRational& x, std::int64_t k);

/// x = base^(q^mu) with mu maximal. Throws UnitInput for x = +-1.
StrippedPower strip_power_layers(const FactoredRational& x, std::uint64_t q);

/// All primes appearing in any element, increasing.
std::vector<std::uint64_t> joint_support(std::span<const FactoredRational> elements);

}  // namespace locus
