#include "locus/verify.hpp"

#include <algorithm>
#include <set>

#include "locus/arith.hpp"
#include "locus/classifier.hpp"
#include "locus/errors.hpp"
#include "locus/sieve.hpp"

namespace locus::verify {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Result fail(std::string why) { return {false, std::move(why)}; }
Result ok() { return {}; }

bool is_odd_prime(std::uint64_t q) { return q >= 3 && arith::is_prime(q); }

// q when n = q^m for an odd prime q, else 0.
std::uint64_t odd_prime_base(std::int64_t n) {
    if (n < 3) return 0;
    auto f = arith::factor_small(static_cast<std::uint64_t>(n));
    return (f.size() == 1 && f[0].first != 2) ? f[0].first : 0;
}

std::size_t class_count(std::span<const FactoredRational> elements, std::int64_t n) {
    std::vector<FactoredRational> reps;
    for (const auto& x : elements) {
        auto r = reduce_class(x, n).rep;
        if (std::find(reps.begin(), reps.end(), r) == reps.end()) reps.push_back(std::move(r));
    }
    return reps.size();
}

std::vector<FactoredRational> class_representatives(std::span<const FactoredRational> elements, std::int64_t n) {
    std::vector<FactoredRational> reps, out;
    for (const auto& x : elements) {
        auto r = reduce_class(x, n).rep;
        if (std::find(reps.begin(), reps.end(), r) != reps.end()) continue;
        reps.push_back(std::move(r));
        out.push_back(x);
    }
    return out;
}

std::optional<std::size_t> perfect_member(std::span<const FactoredRational> elements, std::int64_t n) {
    for (std::size_t i = 0; i < elements.size(); ++i)
        if (is_perfect_power(elements[i], n)) return i;
    return std::nullopt;
}

// Coordinates of x in the cover's ambient space, or nullopt when x has a
// prime outside the support.
std::optional<std::vector<std::int64_t>> column(const cert::Cover& c, const FactoredRational& x) {
    FactoredRational base = x;
    if (c.reduction == cert::Reduction::Strip) base = strip_power_layers(x, static_cast<std::uint64_t>(c.modulus)).base;
    const auto rep = reduce_class(base, c.modulus).rep;
    for (auto p : rep.support())
        if (!std::binary_search(c.support.begin(), c.support.end(), p)) return std::nullopt;
    std::vector<std::int64_t> col;
    if (c.sign_coordinate) col.push_back(x.sign() < 0 ? 1 : 0);
    for (auto p : c.support) col.push_back(((rep.exponent_of(p) % c.modulus) + c.modulus) % c.modulus);
    return col;
}

FactoredRational cover_base(const cert::Cover& c, const FactoredRational& x) {
    FactoredRational base = x;
    if (c.reduction == cert::Reduction::Strip) base = strip_power_layers(x, static_cast<std::uint64_t>(c.modulus)).base;
    return reduce_class(base, c.modulus).rep;
}

// Shape and per-index consistency shared by covers and uncovered points.
Result check_system(const cert::Cover& c, std::int64_t n, std::span<const FactoredRational> elements) {
    if (!std::is_sorted(c.support.begin(), c.support.end()) ||
        std::adjacent_find(c.support.begin(), c.support.end()) != c.support.end())
        return fail("support must be strictly increasing");
    if (c.modulus == 2) {
        if (n != 2 || !c.sign_coordinate || c.reduction != cert::Reduction::Class)
            return fail("modulus-2 systems need n = 2, a sign coordinate and class reduction");
    } else {
        if (c.sign_coordinate) return fail("sign coordinate only applies to modulus 2");
        const std::uint64_t q = odd_prime_base(c.modulus);
        if (!q) return fail("modulus must be a power of an odd prime");
        if (c.reduction == cert::Reduction::Class && c.modulus != n) return fail("class modulus must equal n");
        if (c.reduction == cert::Reduction::Strip &&
            (static_cast<std::uint64_t>(c.modulus) != q || odd_prime_base(n) != q))
            return fail("strip systems need modulus q and n a power of q");
    }
    if (c.coeffs.size() != c.indices.size()) return fail("one coefficient vector per index required");
    if (!c.bases.empty() && c.bases.size() != c.indices.size()) return fail("one base per index required");
    const std::size_t dim = c.support.size() + (c.sign_coordinate ? 1 : 0);
    for (std::size_t k = 0; k < c.indices.size(); ++k) {
        if (c.indices[k] >= elements.size()) return fail("index out of range");
        if (c.coeffs[k].size() != dim) return fail("coefficient vector has the wrong length");
        const auto& x = elements[c.indices[k]];
        std::optional<std::vector<std::int64_t>> col;
        try {
            col = column(c, x);
        } catch (const Error& e) {
            return fail(e.what());
        }
        if (!col) return fail("element " + std::to_string(c.indices[k]) + " has a prime outside the support");
        if (*col != c.coeffs[k]) return fail("coefficients of element " + std::to_string(c.indices[k]) + " differ");
        if (!c.bases.empty() && cover_base(c, x) != c.bases[k])
            return fail("base of element " + std::to_string(c.indices[k]) + " differs");
    }
    return ok();
}

std::vector<covering::Hyperplane> hyperplanes_of(const cert::Cover& c) {
    std::vector<covering::Hyperplane> hs;
    for (const auto& col : c.coeffs) hs.push_back({col});
    return hs;
}

Result check_excluded(const Verdict& v, std::int64_t n, std::span<const FactoredRational> elements) {
    for (auto p : classifier::excluded_primes(elements, n))
        if (!std::binary_search(v.excluded_primes.begin(), v.excluded_primes.end(), p))
            return fail("excluded_primes is missing " + std::to_string(p));
    return ok();
}

Result check_impl(const Verdict& v, std::int64_t n, std::span<const FactoredRational> elements, const Options& opt,
                  bool top);

Result expect(const Verdict& v, Status s, const char* kind) {
    if (v.status != s) return fail(std::string(kind) + " certificate with status " + to_string(v.status));
    return ok();
}

Result check_certificate(const Verdict& v, std::int64_t n, std::span<const FactoredRational> elements,
                         const Options& opt) {
    const std::size_t size = elements.size();
    return std::visit(
        overloaded{
            [&](const cert::PerfectPowerMember& c) -> Result {
                if (auto r = expect(v, Status::Holds, "perfect_power_member"); !r) return r;
                if (c.index >= size) return fail("index out of range");
                if (c.exponent != n) return fail("exponent differs from n");
                if (c.root.pow(n) != elements[c.index]) return fail("root^n differs from the element");
                return ok();
            },
            [&](const cert::WangException& c) -> Result {
                if (auto r = expect(v, Status::Holds, "wang_exception"); !r) return r;
                if (c.index >= size) return fail("index out of range");
                if (c.n != n || n % 8 != 0) return fail("Wang exception needs 8 | n");
                if (FactoredRational(1, {{2, n / 2}}) * c.b.pow(n) != elements[c.index])
                    return fail("element is not 2^(n/2) b^n");
                return ok();
            },
            [&](const cert::Exceptional& c) -> Result {
                if (auto r = expect(v, Status::Holds, "exceptional_form"); !r) return r;
                if (c.first >= size || c.second >= size || c.first == c.second) return fail("bad indices");
                std::vector<FactoredRational> pair;
                try {
                    pair = classifier::instantiate(c.form, n);
                } catch (const Error& e) {
                    return fail(e.what());
                }
                if (pair[0] != elements[c.first] || pair[1] != elements[c.second])
                    return fail("template does not reproduce the elements");
                return ok();
            },
            [&](const cert::Cover& c) -> Result {
                if (auto r = expect(v, Status::Holds, "hyperplane_cover"); !r) return r;
                if (c.modulus == 2 || c.reduction != cert::Reduction::Class)
                    return fail("covers must use class reduction over an odd prime power");
                if (auto r = check_system(c, n, elements); !r) return r;
                if (c.indices.empty()) return fail("empty cover");
                try {
                    auto outcome = covering::covers(hyperplanes_of(c), c.modulus, c.support.size(),
                                                    {opt.enumeration_ceiling, 1});
                    if (!outcome.covered) return fail("point left uncovered");
                } catch (const Error& e) {
                    return fail(e.what());
                }
                return ok();
            },
            [&](const cert::UncoveredPoint& c) -> Result {
                if (auto r = expect(v, Status::Fails, "uncovered_point"); !r) return r;
                const auto& sys = c.system;
                if (auto r = check_system(sys, n, elements); !r) return r;
                const std::size_t dim = sys.support.size() + (sys.sign_coordinate ? 1 : 0);
                if (c.point.size() != dim) return fail("point has the wrong length");
                for (auto y : c.point)
                    if (y < 0 || y >= sys.modulus) return fail("point coordinate out of range");
                // every element, listed or not, must miss the point
                for (std::size_t i = 0; i < size; ++i) {
                    std::optional<std::vector<std::int64_t>> col;
                    try {
                        col = column(sys, elements[i]);
                    } catch (const Error& e) {
                        return fail(e.what());
                    }
                    if (!col) return fail("element " + std::to_string(i) + " has a prime outside the support");
                    if (!covering::is_uncovered(std::vector<covering::Hyperplane>{{*col}}, c.point, sys.modulus))
                        return fail("element " + std::to_string(i) + " covers the point");
                }
                return ok();
            },
            [&](const cert::OddSubset& c) -> Result {
                if (auto r = expect(v, Status::Holds, "odd_subset"); !r) return r;
                if (n != 2) return fail("odd subsets certify squares only");
                if (c.indices.size() % 2 == 0) return fail("subset size is even");
                std::set<std::size_t> seen(c.indices.begin(), c.indices.end());
                if (seen.size() != c.indices.size()) return fail("repeated index");
                FactoredRational product;
                for (auto i : c.indices) {
                    if (i >= size) return fail("index out of range");
                    product = product * elements[i];
                }
                if (c.root.pow(2) != product) return fail("product is not root^2");
                return ok();
            },
            [&](const cert::SkalbaWitness& c) -> Result {
                if (auto r = expect(v, Status::Fails, "skalba_witness"); !r) return r;
                if (!is_odd_prime(c.q) || c.m < 1) return fail("q must be an odd prime, m >= 1");
                std::int64_t modulus = 0;
                try {
                    modulus = prime_power::checked_power(c.q, c.m);
                } catch (const Error& e) {
                    return fail(e.what());
                }
                if (modulus != n) return fail("q^m differs from n");
                std::set<std::size_t> seen(c.indices.begin(), c.indices.end());
                if (seen.size() != size || c.indices.size() != size || (size && *seen.rbegin() != size - 1))
                    return fail("witness must index every element exactly once");
                if (c.c.size() != size) return fail("tuple length differs from the set");
                if (size > opt.oracle.max_elements || modulus > opt.oracle.max_modulus)
                    return fail("witness exceeds the oracle limits");
                std::vector<FactoredRational> ordered;
                for (auto i : c.indices) ordered.push_back(elements[i]);
                if (!prime_power::skalba_witness_holds(ordered, c.q, c.m, c.c))
                    return fail("some subset pair works for the tuple");
                return ok();
            },
            [&](const cert::ComponentFailure& c) -> Result {
                if (auto r = expect(v, Status::Fails, "component_failure"); !r) return r;
                if (!arith::is_prime(c.q) || c.m < 1) return fail("component needs a prime q and m >= 1");
                std::int64_t qm = 0;
                try {
                    qm = prime_power::checked_power(c.q, c.m);
                } catch (const Error& e) {
                    return fail(e.what());
                }
                if (n % qm != 0) return fail("q^m does not divide n");
                if (!c.component || c.component->status != Status::Fails) return fail("component must fail");
                if (auto r = check_impl(*c.component, qm, elements, opt, false); !r)
                    return fail("component: " + r.reason);
                return ok();
            },
            [&](const cert::Lifted& c) -> Result {
                if (auto r = expect(v, Status::Holds, "lifted"); !r) return r;
                if (c.e < 2 || c.base_exponent < 2 || c.e * c.base_exponent != n)
                    return fail("lift exponents must multiply to n");
                if (c.indices.size() != c.roots.size() || c.roots.empty()) return fail("one root per index required");
                for (std::size_t k = 0; k < c.indices.size(); ++k) {
                    if (c.indices[k] >= size) return fail("index out of range");
                    if (c.roots[k].pow(c.e) != elements[c.indices[k]]) return fail("root^e differs from the element");
                }
                if (!c.base || c.base->status != Status::Holds) return fail("base verdict must hold");
                if (auto r = check_impl(*c.base, c.base_exponent, c.roots, opt, false); !r)
                    return fail("base: " + r.reason);
                return ok();
            },
            [&](const cert::Refutation& c) -> Result {
                if (auto r = expect(v, Status::Fails, "refutation"); !r) return r;
                const std::size_t classes = class_count(elements, n);
                switch (c.rule) {
                    case cert::Rule::Singleton:
                        if (classes != 1) return fail("singleton rule needs one class");
                        if (n % 8 == 0 && is_perfect_power(elements[0] / FactoredRational(1, {{2, n / 2}}), n))
                            return fail("element is a Wang exception");
                        break;
                    case cert::Rule::Pair: {
                        if (n % 2 != 0 || classes != 2) return fail("pair rule needs even n and two classes");
                        auto reps = class_representatives(elements, n);
                        if (classifier::match_exceptional_pair(reps, n)) return fail("pair matches a template");
                        break;
                    }
                    case cert::Rule::SmallSet:
                        if (n % 2 == 0) return fail("small-set rule needs odd n");
                        if (classes > arith::smallest_prime_factor(static_cast<std::uint64_t>(n)))
                            return fail("more classes than the smallest prime of n");
                        break;
                }
                if (c.counterexample) {
                    const auto p = *c.counterexample;
                    if (!is_odd_prime(p)) return fail("counterexample is not an odd prime");
                    if (std::binary_search(v.excluded_primes.begin(), v.excluded_primes.end(), p))
                        return fail("counterexample prime is excluded");
                    try {
                        if (sieve::set_has_kth_power_mod_p(elements, n, p))
                            return fail("set has an n-th power residue at the counterexample prime");
                    } catch (const Error& e) {
                        return fail(e.what());
                    }
                }
                return ok();
            },
            [&](const cert::Evidence& c) -> Result {
                if (v.status == Status::Inconclusive) return ok();
                if (v.status == Status::Holds && c.reason == "skalba_exhaustive") {
                    const std::uint64_t q = odd_prime_base(n);
                    if (!q) return fail("oracle verdicts need n a power of an odd prime");
                    std::int64_t m = 0;
                    for (std::int64_t t = n; t > 1; t /= static_cast<std::int64_t>(q)) ++m;
                    try {
                        if (prime_power::skalba_oracle(elements, q, m, opt.oracle).status != Status::Holds)
                            return fail("oracle re-run does not hold");
                    } catch (const Error& e) {
                        return fail(e.what());
                    }
                    return ok();
                }
                return fail("evidence alone cannot certify " + to_string(v.status));
            },
        },
        v.certificate);
}

Result check_impl(const Verdict& v, std::int64_t n, std::span<const FactoredRational> elements, const Options& opt,
                  bool top) {
    if (n < 2) return fail("n must be >= 2");
    if (elements.empty()) return fail("empty set");
    if (!std::is_sorted(v.excluded_primes.begin(), v.excluded_primes.end()))
        return fail("excluded_primes must be sorted");
    if (top) {
        if (auto r = check_excluded(v, n, elements); !r) return r;
    }
    if (v.status == Status::Fails) {
        if (auto i = perfect_member(elements, n)) return fail("element " + std::to_string(*i) + " is an n-th power");
    }
    return check_certificate(v, n, elements, opt);
}

}  // namespace

Result check(const Verdict& v, std::int64_t n, std::span<const FactoredRational> elements, const Options& options) {
    if (contradicts_evidence(v)) return fail("holds verdict contradicted by its sieve evidence");
    return check_impl(v, n, elements, options, true);
}

bool contradicts_evidence(const Verdict& v) {
    if (v.status != Status::Holds || !v.evidence) return false;
    for (auto p : v.evidence->failing_primes)
        if (!std::binary_search(v.excluded_primes.begin(), v.excluded_primes.end(), p)) return true;
    return false;
}

}  // namespace locus::verify
