#include <doctest.h>

#include <cmath>
#include <random>

#include "locus/arith.hpp"
#include "locus/errors.hpp"
#include "locus/rational.hpp"

using namespace locus;

namespace {

FactoredRational q(const char* s) { return parse_rational(s); }

// r^k == x over the integers, by rounding a floating root and checking nearby candidates.
bool brute_perfect_power(std::int64_t x, int k) {
    if (x == 0) return false;
    if (x < 0 && k % 2 == 0) return false;
    const std::int64_t ax = x < 0 ? -x : x;
    const auto guess = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(ax), 1.0 / k)));
    for (std::int64_t r = std::max<std::int64_t>(1, guess - 2); r <= guess + 2; ++r) {
        __int128 p = 1;
        for (int i = 0; i < k && p <= ax; ++i) p *= r;
        if (p == ax) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("parse and render") {
    CHECK(q("12").to_string() == "12/1");
    CHECK(q("-6/4").to_string() == "-3/2");
    CHECK(q("+10/1").to_string() == "10/1");
}

TEST_CASE("parse rejects malformed input") {
    CHECK_THROWS_AS(q("0"), ZeroInput);
    CHECK_THROWS_AS(q("0/5"), ZeroInput);
    CHECK_THROWS_AS(q("3/0"), InputError);
    CHECK_THROWS_AS(q("1.5"), InputError);
    CHECK_THROWS_AS(q(""), InputError);
    CHECK_THROWS_AS(q("--3"), InputError);
    CHECK_THROWS_AS(q("10/-1"), InputError);
}

TEST_CASE("large inputs factor or report capacity") {
    // 2^127 - 1 is prime and beyond the 64-bit factor limit
    CHECK_THROWS_AS(q("170141183460469231731687303715884105727"), FactorizationCapacityExceeded);
    // (2^61 - 1)^2 fits
    auto x = q("5316911983139663487003542222693990401");
    REQUIRE(x.factors().size() == 1);
    CHECK(x.factors()[0].prime == 2305843009213693951ULL);
    CHECK(x.factors()[0].exponent == 2);
    CHECK(x.to_string() == "5316911983139663487003542222693990401/1");
    // product of two 40-bit primes needs rho
    auto y = q("2417851639291930512195989");
    REQUIRE(y.factors().size() == 2);
    CHECK(y.factors()[0].prime == 1099511627791ULL);
    CHECK(y.factors()[1].prime == 2199023255579ULL);
    CHECK(y.to_string() == "2417851639291930512195989/1");
}

TEST_CASE("arithmetic") {
    CHECK(q("2/3") * q("9/4") == q("3/2"));
    CHECK(q("2/3") / q("2/3") == FactoredRational{});
    CHECK((-q("5")).sign() == -1);
    CHECK(q("-2/3").pow(-3) == q("-27/8"));
    CHECK(q("-12/5").numerator() == q("-12"));
    CHECK(q("-12/5").denominator() == q("5"));
}

TEST_CASE("perfect powers and roots") {
    CHECK(is_perfect_power(q("-27/8"), 3));
    CHECK(*exact_root(q("-27/8"), 3) == q("-3/2"));
    CHECK_FALSE(is_perfect_power(q("-16"), 4));
    CHECK(*exact_root(q("16"), 4) == q("2"));
    CHECK(is_perfect_power(q("-1"), 5));
    CHECK(is_perfect_power(q("1"), 6));
}

TEST_CASE("perfect power detection agrees with brute force") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(-1'000'000, 1'000'000);
    for (int k = 2; k <= 12; ++k) {
        for (std::int64_t r = -30; r <= 30; ++r) {
            if (r == 0) continue;
            __int128 p = 1;
            for (int i = 0; i < k; ++i) p *= r;
            if (p > 1'000'000 || p < -1'000'000) continue;
            const auto x = static_cast<std::int64_t>(p);
            CHECK(is_perfect_power(factor(x), k) == brute_perfect_power(x, k));
        }
        for (int i = 0; i < 300; ++i) {
            const auto x = dist(rng);
            if (x == 0) continue;
            CHECK(is_perfect_power(factor(x), k) == brute_perfect_power(x, k));
        }
    }
}

TEST_CASE("class reduction") {
    CHECK(reduce_class(q("-48"), 3).rep == q("6"));
    CHECK(reduce_class(q("-48"), 2).rep == q("-3"));
    CHECK(reduce_class(q("1/2"), 3).rep == q("4"));
    CHECK(reduce_class(q("250"), 3) == reduce_class(q("2"), 3));
}

TEST_CASE("power layers") {
    auto s = strip_power_layers(q("64"), 3);
    CHECK(s.base == q("4"));
    CHECK(s.mu == 1);
    s = strip_power_layers(q("2"), 3);
    CHECK(s.mu == 0);
    CHECK(strip_power_layers(q("-512"), 3).base == q("-2"));
    CHECK(strip_power_layers(q("-512"), 3).mu == 2);
    CHECK_THROWS_AS(strip_power_layers(q("-1"), 3), UnitInput);
}

TEST_CASE("clearing denominators keeps classes") {
    std::vector<FactoredRational> a{q("3/2"), q("5/7")};
    auto cleared = clear_denominators(a, 3);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(cleared[i].is_integral());
        CHECK(reduce_class(cleared[i], 3) == reduce_class(a[i], 3));
    }
}

TEST_CASE("primality") {
    CHECK(arith::is_prime(std::uint64_t{2}));
    CHECK_FALSE(arith::is_prime(std::uint64_t{1}));
    CHECK(arith::is_prime(std::uint64_t{18446744073709551557ULL}));
    CHECK_FALSE(arith::is_prime(std::uint64_t{3215031751ULL}));  // strong pseudoprime to 2, 3, 5, 7
}
