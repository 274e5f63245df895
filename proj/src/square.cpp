#include "locus/square.hpp"

#include <algorithm>
#include <optional>
#include <vector>

#include "locus/classifier.hpp"
#include "locus/errors.hpp"

namespace locus::square {

namespace {

using Bits = std::vector<std::uint64_t>;

bool get(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1; }
void set(Bits& b, std::size_t i) { b[i / 64] |= 1ULL << (i % 64); }

// Solves A x = rhs over GF(2); A has `cols` unknowns. Free variables are 0.
std::optional<std::vector<bool>> solve_gf2(std::vector<Bits> rows, std::vector<bool> rhs, std::size_t cols) {
    const std::size_t words = (cols + 1 + 63) / 64;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        rows[r].resize(words, 0);
        if (rhs[r]) set(rows[r], cols);
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && !get(rows[piv], c)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != rank && get(rows[r], c)) {
                for (std::size_t w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
            }
        }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t r = rank; r < rows.size(); ++r) {
        if (get(rows[r], cols)) return std::nullopt;
    }
    std::vector<bool> x(cols, false);
    for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = get(rows[r], cols);
    return x;
}

// Parity vectors: coordinate 0 is the sign, then one per support prime.
struct ParityTable {
    std::vector<std::uint64_t> support;
    std::vector<std::vector<std::int64_t>> columns;

    explicit ParityTable(std::span<const FactoredRational> elements) : support(joint_support(elements)) {
        for (const auto& x : elements) {
            std::vector<std::int64_t> col{x.sign() < 0 ? 1 : 0};
            for (auto p : support) col.push_back(((x.exponent_of(p) % 2) + 2) % 2);
            columns.push_back(std::move(col));
        }
    }
    std::size_t dim() const { return support.size() + 1; }
};

std::vector<std::uint64_t> excluded_for(std::span<const FactoredRational> elements) {
    auto out = joint_support(elements);
    if (out.empty() || out.front() != 2) out.insert(out.begin(), 2);
    return out;
}

// Smallest odd subset (then lexicographic) whose parity vectors sum to zero.
std::optional<std::vector<std::size_t>> minimal_odd_subset(const ParityTable& t) {
    const std::size_t l = t.columns.size();
    const std::size_t d = t.dim();
    std::vector<Bits> masks;
    for (const auto& col : t.columns) {
        Bits b((d + 63) / 64, 0);
        for (std::size_t i = 0; i < d; ++i)
            if (col[i]) set(b, i);
        masks.push_back(std::move(b));
    }
    for (std::size_t size = 1; size <= l; size += 2) {
        std::vector<std::size_t> pick(size);
        for (std::size_t i = 0; i < size; ++i) pick[i] = i;
        while (true) {
            Bits acc((d + 63) / 64, 0);
            for (auto j : pick)
                for (std::size_t w = 0; w < acc.size(); ++w) acc[w] ^= masks[j][w];
            if (std::all_of(acc.begin(), acc.end(), [](std::uint64_t w) { return w == 0; })) return pick;
            // next combination in lexicographic order
            std::size_t i = size;
            while (i > 0 && pick[i - 1] == l - size + (i - 1)) --i;
            if (i == 0) break;
            ++pick[i - 1];
            for (std::size_t k = i; k < size; ++k) pick[k] = pick[k - 1] + 1;
        }
    }
    return std::nullopt;
}

constexpr std::size_t kEnumerateWitnessLimit = 20;

}  // namespace

Verdict decide_square(std::span<const FactoredRational> elements, const EngineOptions& options) {
    if (elements.empty()) throw InputError("decide_square needs a nonempty set");
    const ParityTable table(elements);
    const std::size_t l = elements.size();
    const std::size_t d = table.dim();

    // M x = 0 plus the parity row sum(x) = 1
    std::vector<Bits> rows(d + 1, Bits((l + 63) / 64, 0));
    std::vector<bool> rhs(d + 1, false);
    for (std::size_t j = 0; j < l; ++j) {
        for (std::size_t i = 0; i < d; ++i)
            if (table.columns[j][i]) set(rows[i], j);
        set(rows[d], j);
    }
    rhs[d] = true;
    auto solution = solve_gf2(rows, rhs, l);

    Verdict v;
    v.excluded_primes = excluded_for(elements);
    if (solution) {
        std::vector<std::size_t> subset;
        if (l <= kEnumerateWitnessLimit) {
            subset = *minimal_odd_subset(table);
        } else {
            for (std::size_t j = 0; j < l; ++j)
                if ((*solution)[j]) subset.push_back(j);
        }
        FactoredRational product;
        for (auto j : subset) product = product * elements[j];
        auto root = exact_root(product, 2);
        if (!root || subset.size() % 2 == 0) throw InconsistencyError("square witness failed re-verification");
        v.status = Status::Holds;
        v.certificate = cert::OddSubset{std::move(subset), *root};
        return v;
    }

    // dual: a character y with y . column_j = 1 for every j
    std::vector<Bits> dual_rows(l, Bits((d + 63) / 64, 0));
    for (std::size_t j = 0; j < l; ++j)
        for (std::size_t i = 0; i < d; ++i)
            if (table.columns[j][i]) set(dual_rows[j], i);
    auto y = solve_gf2(dual_rows, std::vector<bool>(l, true), d);
    if (!y) throw InconsistencyError("square decision: neither witness nor dual character exists");

    cert::Cover sys{2, cert::Reduction::Class, true, table.support, {}, table.columns, {}};
    for (std::size_t j = 0; j < l; ++j) {
        sys.indices.push_back(j);
        sys.bases.push_back(reduce_class(elements[j], 2).rep);
    }
    std::vector<std::int64_t> point(d);
    for (std::size_t i = 0; i < d; ++i) point[i] = (*y)[i] ? 1 : 0;
    std::vector<covering::Hyperplane> hs;
    for (const auto& col : table.columns) hs.push_back({col});
    if (!covering::is_uncovered(hs, point, 2)) throw InconsistencyError("square dual character is not odd everywhere");

    v.status = Status::Fails;
    v.certificate = cert::UncoveredPoint{std::move(sys), std::move(point)};
    if (options.evidence) v.evidence = sieve::scan(elements, 2, 3, options.evidence_bound, v.excluded_primes);
    return v;
}

Verdict decide_two_power(std::span<const FactoredRational> elements, std::int64_t a0, const EngineOptions& options) {
    if (a0 < 1) throw InputError("a0 must be >= 1");
    if (a0 == 1) return decide_square(elements, options);
    if (a0 > 62) throw CapacityError("2^a0 overflows");
    const std::int64_t n = std::int64_t{1} << a0;
    // distinct classes only; cardinality bounds are about classes
    std::vector<FactoredRational> distinct;
    std::vector<std::size_t> origin;
    std::vector<PowerClass> seen;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        auto cls = reduce_class(elements[i], n);
        if (std::find(seen.begin(), seen.end(), cls) != seen.end()) continue;
        seen.push_back(cls);
        distinct.push_back(elements[i]);
        origin.push_back(i);
    }
    if (distinct.size() <= 2) {
        Verdict v = classifier::decide_small_even(distinct, n, options);
        v.certificate = remap_indices(v.certificate, origin);
        return v;
    }
    Verdict v;
    v.status = Status::Inconclusive;
    v.certificate = cert::Evidence{"two_power_beyond_pairs", std::nullopt};
    v.excluded_primes = excluded_for(elements);
    if (options.evidence) v.evidence = sieve::scan(elements, n, 3, options.evidence_bound, v.excluded_primes);
    return v;
}

}  // namespace locus::square
