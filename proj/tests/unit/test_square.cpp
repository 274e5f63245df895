#include <doctest.h>

#include "locus/square.hpp"

using namespace locus;
using namespace locus::square;

namespace {

std::vector<FactoredRational> set_of(std::initializer_list<const char*> xs) {
    std::vector<FactoredRational> out;
    for (auto x : xs) out.push_back(parse_rational(x));
    return out;
}

}  // namespace

TEST_CASE("squares") {
    auto v = decide_square(set_of({"3", "5", "15"}));
    CHECK(v.status == Status::Holds);
    auto w = std::get<cert::OddSubset>(v.certificate);
    CHECK(w.indices == std::vector<std::size_t>{0, 1, 2});
    CHECK(w.root == parse_rational("15"));
    v = decide_square(set_of({"9"}));
    CHECK(std::get<cert::OddSubset>(v.certificate).root == parse_rational("3"));
    v = decide_square(set_of({"2", "3"}));
    CHECK(v.status == Status::Fails);
    const auto& up = std::get<cert::UncoveredPoint>(v.certificate);
    CHECK(up.system.sign_coordinate);
    CHECK(up.system.modulus == 2);
}

TEST_CASE("sign matters for squares") {
    CHECK(decide_square(set_of({"-1"})).status == Status::Fails);
    CHECK(decide_square(set_of({"-1", "2", "-2"})).status == Status::Holds);
    CHECK(decide_square(set_of({"-3", "5", "15"})).status == Status::Fails);
    CHECK(decide_square(set_of({"-3", "-5", "15"})).status == Status::Holds);
}

TEST_CASE("smallest witness is preferred") {
    auto v = decide_square(set_of({"2", "3", "6", "4/9"}));
    CHECK(std::get<cert::OddSubset>(v.certificate).indices == std::vector<std::size_t>{3});
}

TEST_CASE("powers of two") {
    auto v = decide_two_power(set_of({"16"}), 3);
    CHECK(v.status == Status::Holds);
    CHECK(std::get<cert::WangException>(v.certificate).b == parse_rational("1"));
    CHECK(decide_two_power(set_of({"3", "5", "15"}), 1).status == Status::Holds);
    CHECK(decide_two_power(set_of({"2", "3", "5"}), 2).status == Status::Inconclusive);
    CHECK(decide_two_power(set_of({"-4", "9"}), 2).status == Status::Holds);
}
