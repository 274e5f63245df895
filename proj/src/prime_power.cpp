#include "locus/prime_power.hpp"

#include <algorithm>

#include "locus/arith.hpp"
#include "locus/errors.hpp"

namespace locus::prime_power {

namespace {

void validate(std::uint64_t q, std::int64_t m) {
    if (q < 3 || !arith::is_prime(q)) throw InputError("q must be an odd prime, got " + std::to_string(q));
    if (m < 1) throw InputError("m must be >= 1");
}

std::vector<std::uint64_t> excluded_for(std::span<const FactoredRational> elements, std::uint64_t q) {
    auto out = joint_support(elements);
    out.insert(std::upper_bound(out.begin(), out.end(), q), q);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Exponent vectors of the elements over their joint support, plus sign.
struct ExponentTable {
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<int> signs;

    explicit ExponentTable(std::span<const FactoredRational> elements) {
        const auto support = joint_support(elements);
        for (const auto& x : elements) {
            std::vector<std::int64_t> row;
            for (auto p : support) row.push_back(x.exponent_of(p));
            rows.push_back(std::move(row));
            signs.push_back(x.sign());
        }
    }
};

// Looks for disjoint B, C with |B| - |C| != 0 (mod q) making the ratio a
// perfect `modulus`-th power. Assignment digit 0 = neither, 1 = B, 2 = C.
bool pair_exists(const ExponentTable& t, std::int64_t q, std::int64_t modulus, std::span<const std::int64_t> c) {
    const std::size_t l = t.rows.size();
    const std::size_t s = l ? t.rows[0].size() : 0;
    std::vector<int> digit(l, 0);
    std::vector<std::int64_t> ratio(s);
    while (true) {
        // advance the base-3 counter; the all-zero assignment has |B| = |C|
        std::size_t i = 0;
        while (i < l && digit[i] == 2) digit[i++] = 0;
        if (i == l) return false;
        ++digit[i];

        std::int64_t size_diff = 0;
        int sign = 1;
        std::fill(ratio.begin(), ratio.end(), 0);
        for (std::size_t j = 0; j < l; ++j) {
            if (digit[j] == 0) continue;
            const std::int64_t dir = digit[j] == 1 ? 1 : -1;
            size_diff += dir;
            for (std::size_t r = 0; r < s; ++r) ratio[r] += dir * c[j] * t.rows[j][r];
            if (t.signs[j] < 0 && (c[j] % 2 != 0)) sign = -sign;
        }
        if (size_diff % q == 0) continue;
        // the ratio is a perfect modulus-th power: exponents divisible, sign
        // a modulus-th power (automatic for odd modulus)
        bool perfect = (modulus % 2 != 0 || sign > 0);
        for (std::size_t r = 0; perfect && r < s; ++r) perfect = ratio[r] % modulus == 0;
        if (perfect) return true;
    }
}

}  // namespace

std::int64_t checked_power(std::uint64_t q, std::int64_t m) {
    std::int64_t out = 1;
    for (std::int64_t i = 0; i < m; ++i) {
        if (__builtin_mul_overflow(out, static_cast<std::int64_t>(q), &out)) throw CapacityError("q^m overflows");
    }
    return out;
}

std::vector<LayerReduction> reduce_to_prime_case(std::span<const FactoredRational> elements, std::uint64_t q,
                                                 std::int64_t m) {
    validate(q, m);
    const std::int64_t modulus = checked_power(q, m);
    std::vector<LayerReduction> out;
    for (const auto& x : elements) {
        if (is_perfect_power(x, modulus)) throw PerfectPowerPresent(x.to_string());
        auto [base, mu] = strip_power_layers(x, q);
        auto rep = reduce_class(base, static_cast<std::int64_t>(q)).rep;
        out.push_back({x, std::move(base), mu, std::move(rep)});
    }
    return out;
}

Verdict decide_prime_power(std::span<const FactoredRational> elements, std::uint64_t q, std::int64_t m,
                           const covering::DecideOptions& options) {
    validate(q, m);
    if (elements.empty()) throw InputError("decide_prime_power needs a nonempty set");
    const std::int64_t modulus = checked_power(q, m);
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (auto root = exact_root(elements[i], modulus)) {
            Verdict v;
            v.status = Status::Holds;
            v.certificate = cert::PerfectPowerMember{i, *root, modulus};
            v.excluded_primes = excluded_for(elements, q);
            return v;
        }
    }
    auto reduction = reduce_to_prime_case(elements, q, m);
    std::vector<FactoredRational> reps;
    for (const auto& r : reduction) reps.push_back(r.rep);
    Verdict prime_case = covering::decide_q(reps, q, options);
    if (prime_case.status == Status::Fails) {
        auto& up = std::get<cert::UncoveredPoint>(prime_case.certificate);
        up.system.reduction = cert::Reduction::Strip;
        prime_case.excluded_primes = excluded_for(elements, q);
        return prime_case;
    }
    if (m == 1 || prime_case.status == Status::Inconclusive) return prime_case;
    return covering::decide_module(elements, q, m, options);
}

Verdict skalba_oracle(std::span<const FactoredRational> elements, std::uint64_t q, std::int64_t m,
                      const OracleLimits& limits) {
    validate(q, m);
    if (elements.empty()) throw InputError("oracle needs a nonempty set");
    const std::int64_t modulus = checked_power(q, m);
    if (elements.size() > limits.max_elements || modulus > limits.max_modulus) {
        throw OracleLimitExceeded("l=" + std::to_string(elements.size()) + ", q^m=" + std::to_string(modulus));
    }
    const ExponentTable table(elements);
    const std::size_t l = elements.size();
    std::vector<std::int64_t> c(l, 0);
    Verdict v;
    v.excluded_primes = excluded_for(elements, q);
    while (true) {
        if (!pair_exists(table, static_cast<std::int64_t>(q), modulus, c)) {
            if (!skalba_witness_holds(elements, q, m, c)) {
                throw InconsistencyError("oracle witness failed re-verification");
            }
            v.status = Status::Fails;
            std::vector<std::size_t> idx(l);
            for (std::size_t i = 0; i < l; ++i) idx[i] = i;
            v.certificate = cert::SkalbaWitness{q, m, std::move(idx), c};
            return v;
        }
        // lexicographic odometer, last coordinate fastest
        std::size_t i = l;
        while (i > 0 && c[i - 1] == modulus - 1) c[--i] = 0;
        if (i == 0) break;
        ++c[i - 1];
    }
    v.status = Status::Holds;
    v.certificate = cert::Evidence{"skalba_exhaustive", std::nullopt};
    return v;
}

bool skalba_witness_holds(std::span<const FactoredRational> elements, std::uint64_t q, std::int64_t m,
                          std::span<const std::int64_t> c) {
    validate(q, m);
    if (c.size() != elements.size()) return false;
    // recomputed from scratch with rational arithmetic, independent of the table
    const std::int64_t modulus = checked_power(q, m);
    const std::size_t l = elements.size();
    std::vector<int> digit(l, 0);
    while (true) {
        std::size_t i = 0;
        while (i < l && digit[i] == 2) digit[i++] = 0;
        if (i == l) return true;
        ++digit[i];
        std::int64_t size_diff = 0;
        FactoredRational ratio;
        for (std::size_t j = 0; j < l; ++j) {
            if (digit[j] == 1) {
                ratio = ratio * elements[j].pow(c[j]);
                ++size_diff;
            } else if (digit[j] == 2) {
                ratio = ratio / elements[j].pow(c[j]);
                --size_diff;
            }
        }
        if (size_diff % static_cast<std::int64_t>(q) != 0 && is_perfect_power(ratio, modulus)) return false;
    }
}

std::vector<FactoredRational> exponentiate_classes(std::span<const FactoredRational> elements,
                                                   std::span<const std::int64_t> c, std::uint64_t q) {
    if (c.size() != elements.size()) throw InputError("exponent tuple length must match the set");
    std::vector<FactoredRational> out;
    for (std::size_t j = 0; j < elements.size(); ++j) {
        if (c[j] % static_cast<std::int64_t>(q) == 0) throw NonUnitExponent(std::to_string(c[j]));
        out.push_back(elements[j].pow(c[j]));
    }
    return out;
}

}  // namespace locus::prime_power
