#include "locus/covering.hpp"

#include <algorithm>
#include <atomic>
#include <future>
#include <random>

#include "locus/arith.hpp"
#include "locus/errors.hpp"

namespace locus::covering {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

// modulus^s, or nullopt when it exceeds `ceiling`.
std::optional<std::uint64_t> point_count(std::int64_t modulus, std::size_t s, std::uint64_t ceiling) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < s; ++i) {
        if (total > ceiling / static_cast<std::uint64_t>(modulus)) return std::nullopt;
        total *= static_cast<std::uint64_t>(modulus);
    }
    return total <= ceiling ? std::optional(total) : std::nullopt;
}

// Scales each form so its first nonzero coefficient is 1 (prime modulus only),
// then drops duplicates. Kernels are unchanged.
std::vector<Hyperplane> collapse(std::span<const Hyperplane> hyperplanes, std::int64_t modulus) {
    const bool field = arith::is_prime(static_cast<std::uint64_t>(modulus));
    std::vector<Hyperplane> out;
    out.reserve(hyperplanes.size());
    for (const auto& h : hyperplanes) {
        Hyperplane n = h;
        for (auto& c : n.coeffs) c = mod(c, modulus);
        if (field) {
            auto lead = std::find_if(n.coeffs.begin(), n.coeffs.end(), [](std::int64_t c) { return c != 0; });
            if (lead != n.coeffs.end()) {
                const auto inv = static_cast<std::int64_t>(
                    arith::inv_mod(static_cast<std::uint64_t>(*lead), static_cast<std::uint64_t>(modulus)));
                for (auto& c : n.coeffs) c = c * inv % modulus;
            }
        }
        out.push_back(std::move(n));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Scans point indices [begin, end) in lexicographic order; returns the first
// uncovered index, stopping early once `best` drops below the cursor.
std::optional<std::uint64_t> scan_chunk(const std::vector<Hyperplane>& hs, std::int64_t modulus, std::size_t s,
                                        std::uint64_t begin, std::uint64_t end, std::atomic<std::uint64_t>& best) {
    const std::size_t l = hs.size();
    // delta[i][j]: change of form j when coordinate i increments and all later
    // coordinates wrap from modulus-1 to 0.
    std::vector<std::vector<std::int64_t>> delta(s, std::vector<std::int64_t>(l, 0));
    for (std::size_t j = 0; j < l; ++j) {
        std::int64_t acc = 0;
        for (std::size_t i = s; i-- > 0;) {
            acc = (acc + hs[j].coeffs[i]) % modulus;
            delta[i][j] = acc;
        }
    }
    std::vector<std::int64_t> digits(s, 0);
    std::uint64_t rem = begin;
    for (std::size_t i = s; i-- > 0;) {
        digits[i] = static_cast<std::int64_t>(rem % static_cast<std::uint64_t>(modulus));
        rem /= static_cast<std::uint64_t>(modulus);
    }
    std::vector<std::int64_t> dots(l);
    for (std::size_t j = 0; j < l; ++j) dots[j] = evaluate(hs[j], digits, modulus);

    for (std::uint64_t idx = begin; idx < end; ++idx) {
        if ((idx & 0xFFF) == 0 && idx >= best.load(std::memory_order_relaxed)) return std::nullopt;
        bool uncovered = true;
        for (std::size_t j = 0; j < l; ++j) {
            if (dots[j] == 0) {
                uncovered = false;
                break;
            }
        }
        if (uncovered) return idx;
        if (idx + 1 == end) break;
        std::size_t i = s - 1;
        while (digits[i] == modulus - 1) {
            digits[i] = 0;
            --i;
        }
        ++digits[i];
        for (std::size_t j = 0; j < l; ++j) {
            dots[j] += delta[i][j];
            if (dots[j] >= modulus) dots[j] -= modulus;
        }
    }
    return std::nullopt;
}

std::vector<std::int64_t> decode(std::uint64_t idx, std::int64_t modulus, std::size_t s) {
    std::vector<std::int64_t> p(s);
    for (std::size_t i = s; i-- > 0;) {
        p[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(modulus));
        idx /= static_cast<std::uint64_t>(modulus);
    }
    return p;
}

void validate_odd_prime(std::uint64_t q) {
    if (q < 3 || !arith::is_prime(q)) throw InputError("q must be an odd prime, got " + std::to_string(q));
}

std::vector<std::uint64_t> excluded_for(std::span<const FactoredRational> elements, std::uint64_t q) {
    auto out = joint_support(elements);
    out.push_back(q);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

HyperplaneSystem build_system(std::span<const FactoredRational> elements, std::int64_t modulus) {
    if (modulus < 2) throw InputError("covering modulus must be >= 2");
    HyperplaneSystem sys;
    sys.matrix.modulus = modulus;
    sys.matrix.support = joint_support(elements);
    const std::size_t s = sys.matrix.support.size();
    for (const auto& x : elements) {
        std::vector<std::int64_t> col(s);
        for (std::size_t i = 0; i < s; ++i) col[i] = mod(x.exponent_of(sys.matrix.support[i]), modulus);
        if (std::all_of(col.begin(), col.end(), [](std::int64_t v) { return v == 0; })) sys.trivial = true;
        sys.hyperplanes.push_back({col});
        sys.matrix.columns.push_back(std::move(col));
    }
    return sys;
}

HyperplaneSystem build_hyperplanes(std::span<const FactoredRational> elements, std::uint64_t q) {
    validate_odd_prime(q);
    if (elements.empty()) throw InputError("hyperplane construction needs at least one element");
    for (const auto& x : elements) {
        if (x.is_unit()) throw UnitElement();
        for (const auto& f : x.factors()) {
            if (f.exponent < 0 || f.exponent >= static_cast<std::int64_t>(q)) throw NotQFree(x.to_string());
        }
    }
    return build_system(elements, static_cast<std::int64_t>(q));
}

std::int64_t evaluate(const Hyperplane& h, std::span<const std::int64_t> point, std::int64_t modulus) {
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < point.size(); ++i) acc = (acc + mod(h.coeffs[i], modulus) * mod(point[i], modulus)) % modulus;
    return acc;
}

bool is_uncovered(std::span<const Hyperplane> hyperplanes, std::span<const std::int64_t> point, std::int64_t modulus) {
    return std::none_of(hyperplanes.begin(), hyperplanes.end(),
                        [&](const Hyperplane& h) { return evaluate(h, point, modulus) == 0; });
}

CoverOutcome covers(std::span<const Hyperplane> hyperplanes, std::int64_t modulus, std::size_t s,
                    const CoverOptions& options) {
    if (hyperplanes.empty()) throw InputError("covering check needs at least one form");
    if (modulus < 2) throw InputError("covering modulus must be >= 2");
    for (const auto& h : hyperplanes) {
        if (h.coeffs.size() != s) throw InputError("form length does not match dimension");
    }
    const auto total = point_count(modulus, s, options.ceiling);
    if (!total) {
        throw InstanceTooLarge(std::to_string(modulus) + "^" + std::to_string(s) + " points exceed ceiling " +
                               std::to_string(options.ceiling));
    }
    const auto hs = collapse(hyperplanes, modulus);
    for (const auto& h : hs) {
        if (std::all_of(h.coeffs.begin(), h.coeffs.end(), [](std::int64_t c) { return c == 0; })) {
            return {true, {}};
        }
    }
    if (s == 0) return {false, {}};

    std::atomic<std::uint64_t> best{*total};
    const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(*total)));
    const std::uint64_t width = (*total + threads - 1) / threads;
    std::vector<std::future<void>> jobs;
    for (unsigned t = 0; t < threads; ++t) {
        const std::uint64_t a = t * width;
        const std::uint64_t b = std::min(*total, a + width);
        if (a >= b) break;
        auto job = [&, a, b] {
            if (auto hit = scan_chunk(hs, modulus, s, a, b, best)) {
                std::uint64_t cur = best.load();
                while (*hit < cur && !best.compare_exchange_weak(cur, *hit)) {
                }
            }
        };
        jobs.push_back(std::async(threads == 1 ? std::launch::deferred : std::launch::async, job));
    }
    for (auto& j : jobs) j.get();

    if (best.load() == *total) return {true, {}};
    CoverOutcome out{false, decode(best.load(), modulus, s)};
    if (!is_uncovered(hyperplanes, out.point, modulus)) {
        throw InconsistencyError("covering: emitted point is covered");
    }
    return out;
}

std::optional<std::vector<std::int64_t>> sample_uncovered(std::span<const Hyperplane> hyperplanes,
                                                          std::int64_t modulus, std::size_t s,
                                                          std::uint64_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::int64_t> dist(0, modulus - 1);
    std::vector<std::int64_t> point(s);
    for (std::uint64_t i = 0; i < samples; ++i) {
        for (auto& c : point) c = dist(rng);
        if (is_uncovered(hyperplanes, point, modulus)) return point;
    }
    return std::nullopt;
}

Verdict covering_verdict(cert::Cover system, const std::vector<Hyperplane>& hyperplanes,
                         std::vector<std::uint64_t> excluded, const DecideOptions& options) {
    const std::size_t s = system.support.size() + (system.sign_coordinate ? 1 : 0);
    Verdict v;
    v.excluded_primes = std::move(excluded);
    if (!point_count(system.modulus, s, options.cover.ceiling) && options.monte_carlo) {
        auto hit = sample_uncovered(hyperplanes, system.modulus, s, options.monte_carlo_samples,
                                    options.monte_carlo_seed);
        if (hit) {
            v.status = Status::Fails;
            v.certificate = cert::UncoveredPoint{std::move(system), std::move(*hit)};
        } else {
            v.status = Status::Inconclusive;
            v.certificate = cert::Evidence{
                "monte_carlo_no_uncovered_point",
                cert::MonteCarlo{options.monte_carlo_samples, options.monte_carlo_seed,
                                 "3/" + std::to_string(options.monte_carlo_samples)}};
        }
        return v;
    }
    auto outcome = covers(hyperplanes, system.modulus, s, options.cover);
    if (outcome.covered) {
        v.status = Status::Holds;
        v.certificate = std::move(system);
    } else {
        v.status = Status::Fails;
        v.certificate = cert::UncoveredPoint{std::move(system), std::move(outcome.point)};
    }
    return v;
}

Verdict decide_q(std::span<const FactoredRational> elements, std::uint64_t q, const DecideOptions& options) {
    validate_odd_prime(q);
    if (elements.empty()) throw InputError("decide_q needs a nonempty set");
    const auto qi = static_cast<std::int64_t>(q);
    std::vector<FactoredRational> reps;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        reps.push_back(reduce_class(elements[i], qi).rep);
        if (reps.back().is_one()) {
            Verdict v;
            v.status = Status::Holds;
            v.certificate = cert::PerfectPowerMember{i, *exact_root(elements[i], qi), qi};
            v.excluded_primes = excluded_for(elements, q);
            return v;
        }
    }
    auto sys = build_hyperplanes(reps, q);
    cert::Cover c{qi, cert::Reduction::Class, false, sys.matrix.support, {}, sys.matrix.columns, reps};
    for (std::size_t i = 0; i < elements.size(); ++i) c.indices.push_back(i);
    return covering_verdict(std::move(c), sys.hyperplanes, excluded_for(elements, q), options);
}

Verdict decide_module(std::span<const FactoredRational> elements, std::uint64_t q, std::int64_t m,
                      const DecideOptions& options) {
    validate_odd_prime(q);
    if (m < 1) throw InputError("prime-power exponent m must be >= 1");
    if (elements.empty()) throw InputError("decide_module needs a nonempty set");
    std::int64_t modulus = 1;
    for (std::int64_t i = 0; i < m; ++i) {
        if (__builtin_mul_overflow(modulus, static_cast<std::int64_t>(q), &modulus)) {
            throw CapacityError("q^m overflows");
        }
    }
    std::vector<FactoredRational> reps;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        reps.push_back(reduce_class(elements[i], modulus).rep);
        if (reps.back().is_one()) {
            Verdict v;
            v.status = Status::Holds;
            v.certificate = cert::PerfectPowerMember{i, *exact_root(elements[i], modulus), modulus};
            v.excluded_primes = excluded_for(elements, q);
            return v;
        }
    }
    auto sys = build_system(reps, modulus);
    cert::Cover c{modulus, cert::Reduction::Class, false, sys.matrix.support, {}, sys.matrix.columns, reps};
    for (std::size_t i = 0; i < elements.size(); ++i) c.indices.push_back(i);
    return covering_verdict(std::move(c), sys.hyperplanes, excluded_for(elements, q), options);
}

}  // namespace locus::covering
