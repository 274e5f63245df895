#include "locus/classifier.hpp"

#include <algorithm>

#include "locus/arith.hpp"
#include "locus/covering.hpp"
#include "locus/errors.hpp"
#include "locus/prime_power.hpp"
#include "locus/sieve.hpp"
#include "locus/square.hpp"

namespace locus::classifier {

namespace {

FactoredRational prime_power(std::uint64_t p, std::int64_t e) { return FactoredRational(1, {{p, e}}); }

constexpr std::size_t kLiftSignLimit = 10;

Verdict holds_member(std::size_t index, FactoredRational root, std::int64_t n) {
    Verdict v;
    v.status = Status::Holds;
    v.certificate = cert::PerfectPowerMember{index, std::move(root), n};
    return v;
}

void attach_evidence(Verdict& v, std::span<const FactoredRational> elements, std::int64_t n,
                     const EngineOptions& options) {
    if (!options.evidence) return;
    v.evidence = sieve::scan(elements, n, 3, options.evidence_bound, v.excluded_primes);
}

Verdict refutation(cert::Rule rule, std::span<const FactoredRational> elements, std::int64_t n,
                   const EngineOptions& options) {
    Verdict v;
    v.status = Status::Fails;
    v.excluded_primes = excluded_primes(elements, n);
    cert::Refutation r{rule, std::nullopt};
    if (options.evidence) {
        r.counterexample = sieve::find_counterexample(elements, n, options.evidence_bound, v.excluded_primes);
    }
    v.certificate = r;
    attach_evidence(v, elements, n, options);
    return v;
}

// Holds via some e | n: every element is an e-th power and the roots hold for n/e.
std::optional<Verdict> try_lift(std::span<const FactoredRational> elements, std::int64_t n,
                                const EngineOptions& options) {
    EngineOptions inner = options;
    inner.evidence = false;
    for (std::int64_t e = 2; e < n; ++e) {
        if (n % e) continue;
        std::vector<FactoredRational> roots;
        for (const auto& x : elements) {
            auto r = exact_root(x, e);
            if (!r) break;
            roots.push_back(*r);
        }
        if (roots.size() != elements.size()) continue;
        // even e: both signs of each root are e-th roots
        const std::size_t l = roots.size();
        const std::uint64_t patterns = (e % 2 == 0 && l <= kLiftSignLimit) ? (1ULL << l) : 1;
        for (std::uint64_t mask = 0; mask < patterns; ++mask) {
            std::vector<FactoredRational> signed_roots = roots;
            for (std::size_t j = 0; j < l; ++j)
                if ((mask >> j) & 1) signed_roots[j] = -signed_roots[j];
            Verdict base;
            try {
                base = decide(signed_roots, n / e, inner);
            } catch (const CapacityError&) {
                continue;
            }
            if (base.status != Status::Holds) continue;
            std::vector<std::size_t> idx(l);
            for (std::size_t j = 0; j < l; ++j) idx[j] = j;
            Verdict v;
            v.status = Status::Holds;
            v.certificate = cert::Lifted{e, n / e, std::move(idx), std::move(signed_roots),
                                         std::make_shared<const Verdict>(std::move(base))};
            return v;
        }
    }
    return std::nullopt;
}

}  // namespace

std::int64_t ExponentShape::odd_part_power(std::uint64_t p) const {
    for (auto [q, a] : odd) {
        if (q == p) {
            std::int64_t out = 1;
            for (std::int64_t i = 0; i < a; ++i) out *= static_cast<std::int64_t>(p);
            return out;
        }
    }
    return 1;
}

std::uint64_t ExponentShape::smallest_prime() const {
    if (a0 > 0) return 2;
    return odd.empty() ? 0 : odd.front().first;
}

ExponentShape shape_of(std::int64_t n) {
    if (n < 1) throw InputError("n must be positive");
    ExponentShape s;
    s.n = n;
    for (auto [p, e] : arith::factor_small(static_cast<std::uint64_t>(n))) {
        if (p == 2) {
            s.a0 = e;
        } else {
            s.odd.emplace_back(p, e);
        }
    }
    return s;
}

FactoredRational Slot::instantiate(const FactoredRational& alpha) const { return constant * alpha.pow(exponent); }

std::optional<FactoredRational> Slot::match(const FactoredRational& x) const { return exact_root(x / constant, exponent); }

std::vector<Template> templates_for(std::int64_t n) {
    const auto shape = shape_of(n);
    std::vector<Template> out;
    if (shape.a0 == 0) return out;
    const std::int64_t half = n / 2;
    const FactoredRational one;
    const FactoredRational two_half = prime_power(2, half);
    auto for_each_pj = [&](auto&& make) {
        for (auto [pj, aj] : shape.odd) {
            const std::int64_t big_p = shape.odd_part_power(pj);
            make(pj, big_p);
        }
    };
    if (shape.a0 == 1) {
        if (n == 2) return out;
        for_each_pj([&](std::uint64_t pj, std::int64_t big_p) {
            // ((-1)^((pj-1)/2) pj)^(n/2); n/2 is odd here
            FactoredRational c = prime_power(pj, half);
            if (((pj - 1) / 2) % 2 == 1) c = -c;
            out.push_back({CaseTag::A0eq1, pj, {c, n}, Slot{one, n / big_p}});
        });
        return out;
    }
    if (shape.a0 == 2) {
        out.push_back({CaseTag::A0eq2_neg2, 0, {-two_half, n}, Slot{one, half}});
        for_each_pj([&](std::uint64_t pj, std::int64_t big_p) {
            out.push_back({CaseTag::A0eq2_pj, pj, {prime_power(pj, half), n}, Slot{one, n / big_p}});
        });
        for_each_pj([&](std::uint64_t pj, std::int64_t big_p) {
            out.push_back({CaseTag::A0eq2_pj_neg2, pj, {prime_power(pj, half), n},
                           Slot{-prime_power(2, n / (2 * big_p)), n / big_p}});
        });
        return out;
    }
    out.push_back({CaseTag::A0ge3_2half, 0, {two_half, n}, std::nullopt});
    for_each_pj([&](std::uint64_t pj, std::int64_t big_p) {
        out.push_back({CaseTag::A0ge3_pj, pj, {prime_power(pj, half), n}, Slot{one, n / big_p}});
    });
    for_each_pj([&](std::uint64_t pj, std::int64_t big_p) {
        out.push_back({CaseTag::A0ge3_pj_2, pj, {prime_power(pj, half), n},
                       Slot{prime_power(2, n / (2 * big_p)), n / big_p}});
    });
    for_each_pj([&](std::uint64_t pj, std::int64_t big_p) {
        out.push_back({CaseTag::A0ge3_2pj, pj, {two_half * prime_power(pj, half), n}, Slot{one, n / big_p}});
    });
    for_each_pj([&](std::uint64_t pj, std::int64_t big_p) {
        out.push_back({CaseTag::A0ge3_2pj_2, pj, {two_half * prime_power(pj, half), n},
                       Slot{prime_power(2, n / (2 * big_p)), n / big_p}});
    });
    return out;
}

std::vector<PairMatch> match_all_exceptional_pairs(std::span<const FactoredRational> pair, std::int64_t n) {
    if (n < 2 || n % 2 != 0) throw NotEven();
    if (pair.size() != 2) throw WrongCardinality(pair.size());
    std::vector<PairMatch> out;
    for (const auto& t : templates_for(n)) {
        for (std::size_t first : {std::size_t{0}, std::size_t{1}}) {
            const std::size_t second = 1 - first;
            auto a1 = t.first.match(pair[first]);
            if (!a1) continue;
            FactoredRational a2 = pair[second];
            if (t.second) {
                auto m = t.second->match(pair[second]);
                if (!m) continue;
                a2 = *m;
            }
            PairMatch pm{{t.tag, t.pj, *a1, a2}, first, second};
            auto rebuilt = instantiate(pm.form, n);
            if (rebuilt[0] != pair[first] || rebuilt[1] != pair[second]) {
                throw InconsistencyError("exceptional template substitution does not reproduce the pair");
            }
            out.push_back(std::move(pm));
        }
    }
    return out;
}

std::optional<PairMatch> match_exceptional_pair(std::span<const FactoredRational> pair, std::int64_t n) {
    auto all = match_all_exceptional_pairs(pair, n);
    if (all.empty()) return std::nullopt;
    return all.front();
}

std::vector<FactoredRational> instantiate(const ExceptionalForm& form, std::int64_t n) {
    if (form.case_tag == CaseTag::Wang8) {
        throw InapplicableCase("Wang8 describes a single element, not a pair");
    }
    for (const auto& t : templates_for(n)) {
        if (t.tag != form.case_tag || t.pj != form.pj) continue;
        FactoredRational second = t.second ? t.second->instantiate(form.alpha2) : form.alpha2;
        return {t.first.instantiate(form.alpha1), second};
    }
    throw InapplicableCase(to_string(form.case_tag) + (form.pj ? " with p_j=" + std::to_string(form.pj) : "") +
                           " does not apply to n=" + std::to_string(n));
}

std::vector<std::uint64_t> excluded_primes(std::span<const FactoredRational> elements, std::int64_t n) {
    auto out = joint_support(elements);
    for (auto [p, e] : arith::factor_small(static_cast<std::uint64_t>(n))) out.push_back(p);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Verdict classify_singleton(const FactoredRational& a, std::int64_t n, const EngineOptions& options) {
    if (n < 2) throw InputError("n must be >= 2");
    const std::span<const FactoredRational> one(&a, 1);
    if (auto root = exact_root(a, n)) {
        Verdict v = holds_member(0, *root, n);
        v.excluded_primes = excluded_primes(one, n);
        attach_evidence(v, one, n, options);
        return v;
    }
    if (n % 8 == 0) {
        if (auto b = exact_root(a / prime_power(2, n / 2), n)) {
            Verdict v;
            v.status = Status::Holds;
            v.certificate = cert::WangException{0, *b, n};
            v.excluded_primes = excluded_primes(one, n);
            attach_evidence(v, one, n, options);
            return v;
        }
    }
    return refutation(cert::Rule::Singleton, one, n, options);
}

Verdict decide_small_even(std::span<const FactoredRational> elements, std::int64_t n, const EngineOptions& options) {
    if (n % 2 != 0) throw NotEven();
    if (elements.empty() || elements.size() > 2) throw WrongCardinality(elements.size());
    if (elements.size() == 1) return classify_singleton(elements[0], n, options);
    for (std::size_t i = 0; i < 2; ++i) {
        if (auto root = exact_root(elements[i], n)) {
            Verdict v = holds_member(i, *root, n);
            v.excluded_primes = excluded_primes(elements, n);
            attach_evidence(v, elements, n, options);
            return v;
        }
    }
    if (auto m = match_exceptional_pair(elements, n)) {
        Verdict v;
        v.status = Status::Holds;
        v.certificate = cert::Exceptional{m->form, m->first, m->second};
        v.excluded_primes = excluded_primes(elements, n);
        attach_evidence(v, elements, n, options);
        return v;
    }
    return refutation(cert::Rule::Pair, elements, n, options);
}

Verdict decide(std::span<const FactoredRational> elements, std::int64_t n, const EngineOptions& options) {
    if (n < 2) throw InputError("n must be >= 2");
    if (elements.empty()) throw InputError("the set must be nonempty");

    // (i) one representative per class of Q^x / (Q^x)^n, first occurrence wins
    std::vector<FactoredRational> distinct;
    std::vector<std::size_t> origin;
    {
        std::vector<FactoredRational> seen;
        for (std::size_t i = 0; i < elements.size(); ++i) {
            auto rep = reduce_class(elements[i], n).rep;
            if (std::find(seen.begin(), seen.end(), rep) != seen.end()) continue;
            seen.push_back(std::move(rep));
            distinct.push_back(elements[i]);
            origin.push_back(i);
        }
    }
    const auto excluded = excluded_primes(elements, n);
    auto finish = [&](Verdict v) {
        v.certificate = remap_indices(v.certificate, origin);
        v.excluded_primes = excluded;
        if (options.evidence && !v.evidence) {
            v.evidence = sieve::scan(distinct, n, 3, options.evidence_bound, excluded);
        }
        return v;
    };

    // (ii) perfect n-th power member
    for (std::size_t i = 0; i < distinct.size(); ++i) {
        if (auto root = exact_root(distinct[i], n)) return finish(holds_member(i, *root, n));
    }
    const auto shape = shape_of(n);
    // (iii) singletons
    if (distinct.size() == 1) return finish(classify_singleton(distinct[0], n, options));
    // (iv) even n, pairs
    if (n % 2 == 0 && distinct.size() == 2) return finish(decide_small_even(distinct, n, options));
    // (v) odd n with at most p_1 classes
    if (n % 2 != 0 && distinct.size() <= shape.smallest_prime()) {
        return finish(refutation(cert::Rule::SmallSet, distinct, n, options));
    }

    // (vi) one component per prime power q^a || n
    std::vector<std::pair<std::uint64_t, std::int64_t>> components;
    if (shape.a0 > 0) components.emplace_back(2, shape.a0);
    for (auto pe : shape.odd) components.push_back(pe);

    EngineOptions inner = options;
    inner.evidence = false;
    bool all_hold = true;
    for (auto [q, a] : components) {
        Verdict comp = (q == 2) ? square::decide_two_power(distinct, a, inner)
                                : prime_power::decide_prime_power(distinct, q, a, inner.covering);
        if (components.size() == 1 && comp.status != Status::Inconclusive) return finish(std::move(comp));
        if (comp.status == Status::Fails) {
            Verdict v;
            v.status = Status::Fails;
            v.certificate = cert::ComponentFailure{q, a, std::make_shared<const Verdict>(std::move(comp))};
            return finish(std::move(v));
        }
        if (comp.status != Status::Holds) all_hold = false;
    }
    if (auto lifted = try_lift(distinct, n, options)) return finish(std::move(*lifted));

    Verdict v;
    v.status = Status::Inconclusive;
    v.certificate = cert::Evidence{all_hold ? "all_components_hold" : "component_inconclusive", std::nullopt};
    v.evidence = sieve::scan(distinct, n, 3, options.evidence_bound, excluded);
    return finish(std::move(v));
}

}  // namespace locus::classifier
