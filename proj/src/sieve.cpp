#include "locus/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <numeric>

#include "locus/arith.hpp"
#include "locus/errors.hpp"

namespace locus::sieve {

namespace {

constexpr std::uint64_t kSegmentSpan = 1 << 18;

// Elements pre-split into (prime, exponent) lists for repeated residue evaluation.
struct PreparedSet {
    struct Element {
        bool negative;
        std::vector<PrimePower> factors;
    };
    std::vector<Element> elements;

    explicit PreparedSet(std::span<const FactoredRational> xs) {
        elements.reserve(xs.size());
        for (const auto& x : xs) {
            elements.push_back({x.sign() < 0, {x.factors().begin(), x.factors().end()}});
        }
    }

    bool has_residue(std::int64_t k, std::uint64_t p) const {
        const std::uint64_t d = std::gcd(static_cast<std::uint64_t>(k), p - 1);
        const std::uint64_t e = (p - 1) / d;
        for (const auto& el : elements) {
            std::uint64_t num = 1, den = 1;
            for (const auto& f : el.factors) {
                std::uint64_t base = f.prime % p;
                if (f.exponent > 0) {
                    num = arith::mul_mod(num, arith::pow_mod(base, static_cast<std::uint64_t>(f.exponent), p), p);
                } else {
                    den = arith::mul_mod(den, arith::pow_mod(base, static_cast<std::uint64_t>(-f.exponent), p), p);
                }
            }
            // (num/den)^e == 1 iff num^e == den^e; avoids an inversion
            std::uint64_t lhs = arith::pow_mod(num, e, p);
            std::uint64_t rhs = arith::pow_mod(den, e, p);
            if (el.negative && (e & 1)) lhs = p - lhs;
            if (lhs == rhs) return true;
        }
        return false;
    }
};

const std::vector<std::uint64_t>& base_primes_upto(std::uint64_t limit) {
    thread_local std::vector<std::uint64_t> cache;
    thread_local std::uint64_t cached_limit = 0;
    if (limit <= cached_limit) return cache;
    std::vector<bool> composite(limit + 1, false);
    cache.clear();
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        cache.push_back(i);
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    cached_limit = limit;
    return cache;
}

std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

template <typename Visit>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, Visit&& visit) {
    if (hi < 2 || lo > hi) return;
    lo = std::max<std::uint64_t>(lo, 2);
    const auto& base = base_primes_upto(isqrt(hi));
    std::vector<char> marks;
    for (std::uint64_t seg = lo; seg <= hi; seg += kSegmentSpan) {
        const std::uint64_t seg_hi = std::min(hi, seg + kSegmentSpan - 1);
        marks.assign(seg_hi - seg + 1, 1);
        for (std::uint64_t p : base) {
            if (p * p > seg_hi) break;
            std::uint64_t start = std::max(p * p, (seg + p - 1) / p * p);
            for (std::uint64_t m = start; m <= seg_hi; m += p) marks[m - seg] = 0;
        }
        for (std::uint64_t i = 0; i < marks.size(); ++i) {
            if (marks[i] && !visit(seg + i)) return;
        }
        if (seg_hi == hi) break;
    }
}

bool contains(std::span<const std::uint64_t> sorted, std::uint64_t p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
}

}  // namespace

std::string SieveReport::failing_density() const {
    if (tested_count == 0) return "0/1";
    std::uint64_t num = failing_primes.size();
    std::uint64_t g = std::gcd(num, tested_count);
    if (g == 0) g = 1;
    return std::to_string(num / g) + "/" + std::to_string(tested_count / g);
}

std::uint64_t residue_mod(const FactoredRational& a, std::uint64_t p) {
    std::uint64_t r = 1;
    for (const auto& f : a.factors()) {
        std::uint64_t base = f.prime % p;
        if (base == 0) throw BadPrime(std::to_string(p) + " divides the support of " + a.to_string());
        if (f.exponent < 0) base = arith::inv_mod(base, p);
        std::uint64_t e = static_cast<std::uint64_t>(f.exponent < 0 ? -f.exponent : f.exponent);
        r = arith::mul_mod(r, arith::pow_mod(base, e, p), p);
    }
    if (a.sign() < 0) r = (p - r) % p;
    return r;
}

bool is_kth_power_mod_p(const FactoredRational& a, std::int64_t k, std::uint64_t p) {
    if (k < 1) throw InputError("power-residue exponent must be >= 1");
    if (p < 3 || p % 2 == 0 || !arith::is_prime(p)) throw BadPrime(std::to_string(p) + " is not an odd prime");
    const std::uint64_t r = residue_mod(a, p);
    const std::uint64_t d = std::gcd(static_cast<std::uint64_t>(k), p - 1);
    return arith::pow_mod(r, (p - 1) / d, p) == 1;
}

bool set_has_kth_power_mod_p(std::span<const FactoredRational> elements, std::int64_t k, std::uint64_t p) {
    return std::any_of(elements.begin(), elements.end(),
                       [&](const FactoredRational& a) { return is_kth_power_mod_p(a, k, p); });
}

std::vector<std::uint64_t> auto_exclusions(std::span<const FactoredRational> elements, std::int64_t k,
                                           std::span<const std::uint64_t> extra) {
    std::vector<std::uint64_t> out(extra.begin(), extra.end());
    out.push_back(2);
    if (k < 1) throw InputError("power-residue exponent must be >= 1");
    for (auto [p, e] : arith::factor_small(static_cast<std::uint64_t>(k))) out.push_back(p);
    auto supp = joint_support(elements);
    out.insert(out.end(), supp.begin(), supp.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::uint64_t> primes_in_range(std::uint64_t lo, std::uint64_t hi, std::uint64_t ceiling) {
    if (hi > ceiling) throw RangeTooLarge(std::to_string(hi) + " > " + std::to_string(ceiling));
    std::vector<std::uint64_t> out;
    for_each_prime(lo, hi, [&](std::uint64_t p) {
        out.push_back(p);
        return true;
    });
    return out;
}

SieveReport scan(std::span<const FactoredRational> elements, std::int64_t k, std::uint64_t lo, std::uint64_t hi,
                 std::span<const std::uint64_t> excluded, const ScanOptions& options) {
    if (lo > hi) throw InputError("scan range requires lo <= hi");
    if (hi > options.range_ceiling) {
        throw RangeTooLarge(std::to_string(hi) + " > " + std::to_string(options.range_ceiling));
    }
    SieveReport report;
    report.params.elements.assign(elements.begin(), elements.end());
    report.params.k = k;
    report.params.lo = lo;
    report.params.hi = hi;
    report.params.excluded = auto_exclusions(elements, k, excluded);

    const PreparedSet prepared(elements);
    const auto& excl = report.params.excluded;
    struct Partial {
        std::vector<std::uint64_t> failing;
        std::uint64_t tested = 0;
    };
    auto work = [&](std::uint64_t a, std::uint64_t b) {
        Partial part;
        for_each_prime(a, b, [&](std::uint64_t p) {
            if (contains(excl, p)) return true;
            ++part.tested;
            if (!prepared.has_residue(k, p)) part.failing.push_back(p);
            return true;
        });
        return part;
    };

    const unsigned threads = std::max(1u, options.threads);
    std::vector<std::future<Partial>> jobs;
    const std::uint64_t width = (hi - lo) / threads + 1;
    for (unsigned t = 0; t < threads; ++t) {
        std::uint64_t a = lo + t * width;
        if (a > hi) break;
        std::uint64_t b = (t + 1 == threads) ? hi : std::min(hi, a + width - 1);
        jobs.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, work, a, b));
    }
    for (auto& j : jobs) {
        Partial part = j.get();
        report.tested_count += part.tested;
        report.failing_primes.insert(report.failing_primes.end(), part.failing.begin(), part.failing.end());
    }
    std::sort(report.failing_primes.begin(), report.failing_primes.end());
    return report;
}

std::optional<std::uint64_t> find_counterexample(std::span<const FactoredRational> elements, std::int64_t k,
                                                 std::uint64_t bound, std::span<const std::uint64_t> excluded) {
    const auto excl = auto_exclusions(elements, k, excluded);
    const PreparedSet prepared(elements);
    std::optional<std::uint64_t> found;
    for_each_prime(3, bound, [&](std::uint64_t p) {
        if (contains(excl, p)) return true;
        if (!prepared.has_residue(k, p)) {
            found = p;
            return false;
        }
        return true;
    });
    return found;
}

}  // namespace locus::sieve
