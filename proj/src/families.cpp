#include "locus/families.hpp"

#include <string>

#include "locus/arith.hpp"
#include "locus/classifier.hpp"
#include "locus/errors.hpp"

namespace locus::families {

namespace {

FactoredRational prime(std::uint64_t p) { return FactoredRational(1, {{p, 1}}); }

void require_prime(std::uint64_t p, const char* name) {
    if (!arith::is_prime(p)) throw DegenerateParameters(std::string(name) + "=" + std::to_string(p) + " is not prime");
}

}  // namespace

std::vector<FactoredRational> cubic_quad(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) throw DegenerateParameters("a and b must be nonzero");
    if (a == b) throw DegenerateParameters("a == b");
    const auto fa = factor(a);
    const auto fb = factor(b);
    if (fa.is_unit() || fb.is_unit()) throw DegenerateParameters("a and b must not be units");
    return {fa, fb, fa * fb, fa * fb * fb};
}

std::vector<FactoredRational> square_triple(std::uint64_t p1, std::uint64_t p2) {
    require_prime(p1, "p1");
    require_prime(p2, "p2");
    if (p1 == 2 || p2 == 2) throw DegenerateParameters("primes must be odd");
    if (p1 == p2) throw DegenerateParameters("p1 == p2");
    return {prime(p1), prime(p2), prime(p1) * prime(p2)};
}

std::vector<FactoredRational> lifted(const std::vector<FactoredRational>& set, std::int64_t e) {
    if (e < 1) throw DegenerateParameters("e must be >= 1");
    std::vector<FactoredRational> out;
    out.reserve(set.size());
    for (const auto& x : set) out.push_back(x.pow(e));
    return out;
}

std::vector<FactoredRational> odd_optimal(std::uint64_t q1, std::uint64_t q2, std::int64_t n) {
    if (n < 3 || n % 2 == 0) throw DegenerateParameters("n must be odd and >= 3");
    require_prime(q1, "q1");
    require_prime(q2, "q2");
    if (q1 == q2) throw DegenerateParameters("q1 == q2");
    const std::uint64_t p1 = arith::smallest_prime_factor(static_cast<std::uint64_t>(n));
    if (q1 == p1 || q2 == p1) throw DegenerateParameters("q1 and q2 must differ from p1=" + std::to_string(p1));
    const std::int64_t e = n / static_cast<std::int64_t>(p1);
    std::vector<FactoredRational> base{prime(q1), prime(q2)};
    FactoredRational x = prime(q1);
    for (std::uint64_t i = 1; i < p1; ++i) {
        x = x * prime(q2);
        base.push_back(x);
    }
    return lifted(base, e);
}

std::vector<FactoredRational> even_optimal(std::uint64_t q1, std::uint64_t q2, std::int64_t n) {
    if (n < 2 || n % 2 != 0) throw DegenerateParameters("n must be even");
    return lifted(square_triple(q1, q2), n / 2);
}

std::vector<FactoredRational> exceptional_pair(std::int64_t n, CaseTag tag, std::uint64_t pj,
                                               const FactoredRational& alpha1, const FactoredRational& alpha2) {
    if (n < 2 || n % 2 != 0) throw InapplicableCase("n must be even");
    return classifier::instantiate(ExceptionalForm{tag, pj, alpha1, alpha2}, n);
}

}  // namespace locus::families
