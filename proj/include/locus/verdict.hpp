#pragma once

// Three-valued decision outcomes with re-checkable certificates.
//
// Per-element data in a certificate always refers to positions in the
// element list the verdict was computed for (the caller's input order).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "locus/rational.hpp"
#include "locus/sieve.hpp"

namespace locus {

enum class Status { Holds, Fails, Inconclusive };

std::string to_string(Status s);

enum class CaseTag {
    Wang8,
    A0eq1,
    A0eq2_neg2,
    A0eq2_pj,
    A0eq2_pj_neg2,
    A0ge3_2half,
    A0ge3_pj,
    A0ge3_pj_2,
    A0ge3_2pj,
    A0ge3_2pj_2,
};

std::string to_string(CaseTag tag);
std::optional<CaseTag> case_tag_from_string(const std::string& s);

/// A match of a 2-element set against one of the even-n exceptional templates.
struct ExceptionalForm {
    CaseTag case_tag;
    /// Odd prime p_j of n used by the template; 0 when the template has none.
    std::uint64_t pj = 0;
    FactoredRational alpha1;
    /// For A0ge3_2half this is the unconstrained second element itself.
    FactoredRational alpha2;

    friend bool operator==(const ExceptionalForm&, const ExceptionalForm&) = default;
};

struct Verdict;

namespace cert {

struct PerfectPowerMember {
    std::size_t index;
    FactoredRational root;
    std::int64_t exponent;
};

/// a = 2^(n/2) * b^n with 8 | n.
struct WangException {
    std::size_t index;
    FactoredRational b;
    std::int64_t n;
};

struct Exceptional {
    ExceptionalForm form;
    /// Element indices filling the first and second template slot.
    std::size_t first;
    std::size_t second;
};

enum class Reduction {
    /// exponents reduced modulo `modulus`
    Class,
    /// power layers stripped (q), then exponents reduced modulo q
    Strip,
};

/// Covering data over (Z/modulus)^s. When `sign_coordinate` is set the first
/// coordinate belongs to -1 (only for modulus 2).
struct Cover {
    std::int64_t modulus;
    Reduction reduction = Reduction::Class;
    bool sign_coordinate = false;
    std::vector<std::uint64_t> support;
    std::vector<std::size_t> indices;
    std::vector<std::vector<std::int64_t>> coeffs;
    /// Reduced or stripped representative per listed index.
    std::vector<FactoredRational> bases;
};

struct UncoveredPoint {
    Cover system;
    std::vector<std::int64_t> point;
};

struct OddSubset {
    std::vector<std::size_t> indices;
    FactoredRational root;
};

struct SkalbaWitness {
    std::uint64_t q;
    std::int64_t m;
    std::vector<std::size_t> indices;
    std::vector<std::int64_t> c;
};

struct ComponentFailure {
    std::uint64_t q;
    std::int64_t m;
    std::shared_ptr<const Verdict> component;
};

/// Every listed element equals root^e; the roots decide Holds for n / e.
struct Lifted {
    std::int64_t e;
    std::int64_t base_exponent;
    std::vector<std::size_t> indices;
    std::vector<FactoredRational> roots;
    std::shared_ptr<const Verdict> base;
};

enum class Rule {
    /// |A| = 1: not a perfect n-th power and not a Wang exception.
    Singleton,
    /// |A| = 2, n even: no exceptional template matches.
    Pair,
    /// n odd, |A| <= smallest prime factor, no perfect n-th power.
    SmallSet,
};

std::string to_string(Rule r);
std::optional<Rule> rule_from_string(const std::string& s);

struct Refutation {
    Rule rule;
    std::optional<std::uint64_t> counterexample;
};

struct MonteCarlo {
    std::uint64_t samples;
    std::uint64_t seed;
    /// 95% upper bound on the uncovered fraction ("num/den"), from no hits in `samples` draws.
    std::string uncovered_fraction_bound;
};

/// Inconclusive outcome; optional sieve scan and Monte Carlo summary.
struct Evidence {
    std::string reason;
    std::optional<MonteCarlo> monte_carlo;
};

}  // namespace cert

using Certificate = std::variant<cert::PerfectPowerMember, cert::WangException, cert::Exceptional, cert::Cover,
                                 cert::UncoveredPoint, cert::OddSubset, cert::SkalbaWitness,
                                 cert::ComponentFailure, cert::Lifted, cert::Refutation, cert::Evidence>;

std::string certificate_kind(const Certificate& c);

struct Verdict {
    Status status = Status::Inconclusive;
    Certificate certificate = cert::Evidence{};
    std::vector<std::uint64_t> excluded_primes;
    /// Attached when sieve evidence was requested.
    std::optional<sieve::SieveReport> evidence;
};

/// Rewrites every element index i in the certificate tree to map[i].
Certificate remap_indices(const Certificate& c, const std::vector<std::size_t>& map);

}  // namespace locus
