#include <doctest.h>

#include "locus/covering.hpp"
#include "locus/errors.hpp"

using namespace locus;
using namespace locus::covering;

namespace {

std::vector<FactoredRational> set_of(std::initializer_list<const char*> xs) {
    std::vector<FactoredRational> out;
    for (auto x : xs) out.push_back(parse_rational(x));
    return out;
}

std::vector<Hyperplane> planes(std::initializer_list<std::vector<std::int64_t>> cs) {
    std::vector<Hyperplane> out;
    for (const auto& c : cs) out.push_back({c});
    return out;
}

// Lexicographically least uncovered point by plain enumeration.
std::optional<std::vector<std::int64_t>> brute_uncovered(const std::vector<Hyperplane>& hs, std::int64_t m,
                                                         std::size_t s) {
    std::vector<std::int64_t> y(s, 0);
    while (true) {
        bool miss = true;
        for (const auto& h : hs) {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < s; ++i) acc += h.coeffs[i] * y[i];
            if (acc % m == 0) miss = false;
        }
        if (miss) return y;
        std::size_t i = s;
        while (i > 0 && y[i - 1] == m - 1) y[--i] = 0;
        if (i == 0) return std::nullopt;
        ++y[i - 1];
    }
}

}  // namespace

TEST_CASE("hyperplanes from exponents") {
    auto sys = build_hyperplanes(set_of({"2", "3", "6", "18"}), 3);
    CHECK(sys.matrix.support == std::vector<std::uint64_t>{2, 3});
    CHECK(sys.hyperplanes == planes({{1, 0}, {0, 1}, {1, 1}, {1, 2}}));
    sys = build_hyperplanes(set_of({"2", "3", "12"}), 3);
    CHECK(sys.hyperplanes == planes({{1, 0}, {0, 1}, {2, 1}}));
    CHECK_THROWS_AS(build_hyperplanes(set_of({"8"}), 3), NotQFree);
    CHECK_THROWS_AS(build_hyperplanes(set_of({"-1"}), 3), UnitElement);
    CHECK_THROWS_AS(build_hyperplanes(set_of({"2"}), 4), InputError);
}

TEST_CASE("covers") {
    CHECK(covers(planes({{1, 0}, {0, 1}, {1, 1}, {1, 2}}), 3, 2).covered);
    auto out = covers(planes({{1, 0}, {0, 1}, {2, 1}}), 3, 2);
    CHECK_FALSE(out.covered);
    CHECK(out.point == std::vector<std::int64_t>{1, 2});
    out = covers(planes({{1}}), 3, 1);
    CHECK(out.point == std::vector<std::int64_t>{1});
    CHECK_THROWS_AS(covers(planes({std::vector<std::int64_t>(11, 1)}), 5, 11), InstanceTooLarge);
}

TEST_CASE("covers agrees with enumeration, any thread count") {
    std::uint64_t state = 12345;
    auto next = [&] { return (state = state * 6364136223846793005ULL + 1442695040888963407ULL) >> 33; };
    for (std::int64_t m : {3, 5, 7, 9, 25}) {
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t s = 1 + next() % 3;
            const std::size_t l = 1 + next() % 6;
            std::vector<Hyperplane> hs;
            for (std::size_t j = 0; j < l; ++j) {
                Hyperplane h;
                for (std::size_t i = 0; i < s; ++i) h.coeffs.push_back(static_cast<std::int64_t>(next() % m));
                hs.push_back(h);
            }
            const auto expected = brute_uncovered(hs, m, s);
            for (unsigned threads : {1u, 3u}) {
                auto got = covers(hs, m, s, {kDefaultEnumerationCeiling, threads});
                CHECK(got.covered == !expected.has_value());
                if (expected) CHECK(got.point == *expected);
            }
        }
    }
}

TEST_CASE("decide_q") {
    auto v = decide_q(set_of({"2", "3", "6", "18"}), 3);
    CHECK(v.status == Status::Holds);
    CHECK(certificate_kind(v.certificate) == "hyperplane_cover");
    v = decide_q(set_of({"2", "3", "12"}), 3);
    CHECK(v.status == Status::Fails);
    CHECK(std::get<cert::UncoveredPoint>(v.certificate).point == std::vector<std::int64_t>{1, 2});
    v = decide_q(set_of({"-8"}), 3);
    CHECK(v.status == Status::Holds);
    CHECK(std::get<cert::PerfectPowerMember>(v.certificate).root == parse_rational("-2"));
    // rationals reduce to their classes: {a, b, ab, ab^2} with a = 1/2, b = 3
    CHECK(decide_q(set_of({"1/2", "3", "3/2", "9/2"}), 3).status == Status::Holds);
    CHECK(decide_q(set_of({"1/2", "3", "2/3", "1/12"}), 3).status == Status::Fails);
}

TEST_CASE("monte carlo never holds") {
    DecideOptions opts;
    opts.cover.ceiling = 8;
    opts.monte_carlo = true;
    opts.monte_carlo_samples = 2000;
    auto v = decide_q(set_of({"2", "3", "6", "18"}), 3, opts);
    CHECK(v.status == Status::Inconclusive);
    CHECK(std::get<cert::Evidence>(v.certificate).monte_carlo->uncovered_fraction_bound == "3/2000");
    v = decide_q(set_of({"2", "3", "12"}), 3, opts);
    CHECK(v.status == Status::Fails);
    opts.monte_carlo = false;
    CHECK_THROWS_AS(decide_q(set_of({"2", "3", "12"}), 3, opts), InstanceTooLarge);
}
