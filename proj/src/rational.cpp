#include "locus/rational.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>

#include "locus/arith.hpp"
#include "locus/errors.hpp"

namespace locus {

namespace {

using boost::multiprecision::cpp_int;
using arith::u128;

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw CapacityError("exponent overflow");
    return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw CapacityError("exponent overflow");
    return r;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t k) {
    std::int64_t r = a % k;
    return r < 0 ? r + k : r;
}

cpp_int product_of(std::span<const PrimePower> factors, bool positive_side) {
    cpp_int acc = 1;
    for (const auto& f : factors) {
        if ((f.exponent > 0) != positive_side) continue;
        std::int64_t e = f.exponent > 0 ? f.exponent : -f.exponent;
        if (e > 1'000'000) throw CapacityError("value too large to render");
        acc *= boost::multiprecision::pow(cpp_int(f.prime), static_cast<unsigned>(e));
    }
    return acc;
}

std::vector<PrimePower> factor_magnitude(cpp_int n) {
    std::vector<PrimePower> out;
    const cpp_int limit = cpp_int(1) << 127;
    if (n >= limit) {
        for (std::uint32_t p : arith::small_primes()) {
            if (n < limit) break;
            std::int64_t e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            if (e) out.push_back({p, e});
        }
        if (n >= limit) {
            throw FactorizationCapacityExceeded("cofactor above 2^127 after trial division");
        }
    }
    const auto lo = static_cast<std::uint64_t>(n & cpp_int(UINT64_MAX));
    const auto hi = static_cast<std::uint64_t>(n >> 64);
    const u128 value = (static_cast<u128>(hi) << 64) | lo;
    for (auto [p, e] : arith::factor_integer(value)) out.push_back({p, e});
    return out;
}

}  // namespace

FactoredRational::FactoredRational(int sign, std::vector<PrimePower> factors)
    : sign_(sign), factors_(std::move(factors)) {
    if (sign_ != 1 && sign_ != -1) throw InputError("sign must be +1 or -1");
    std::sort(factors_.begin(), factors_.end(),
              [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
    std::vector<PrimePower> merged;
    merged.reserve(factors_.size());
    for (const auto& f : factors_) {
        if (f.prime < 2) throw InputError("factor base must be a prime");
        if (!merged.empty() && merged.back().prime == f.prime) {
            merged.back().exponent = checked_add(merged.back().exponent, f.exponent);
        } else {
            merged.push_back(f);
        }
    }
    std::erase_if(merged, [](const PrimePower& f) { return f.exponent == 0; });
    factors_ = std::move(merged);
}

FactoredRational FactoredRational::from_integer(std::int64_t value) { return factor(value, 1); }

FactoredRational FactoredRational::from_ratio(std::int64_t num, std::int64_t den) { return factor(num, den); }

bool FactoredRational::is_integral() const noexcept {
    return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& f) { return f.exponent > 0; });
}

std::int64_t FactoredRational::exponent_of(std::uint64_t p) const noexcept {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                               [](const PrimePower& f, std::uint64_t v) { return f.prime < v; });
    return (it != factors_.end() && it->prime == p) ? it->exponent : 0;
}

std::vector<std::uint64_t> FactoredRational::support() const {
    std::vector<std::uint64_t> out;
    out.reserve(factors_.size());
    for (const auto& f : factors_) out.push_back(f.prime);
    return out;
}

FactoredRational FactoredRational::operator*(const FactoredRational& rhs) const {
    std::vector<PrimePower> f = factors_;
    f.insert(f.end(), rhs.factors_.begin(), rhs.factors_.end());
    return FactoredRational(sign_ * rhs.sign_, std::move(f));
}

FactoredRational FactoredRational::operator/(const FactoredRational& rhs) const { return *this * rhs.inverse(); }

FactoredRational FactoredRational::operator-() const {
    FactoredRational r = *this;
    r.sign_ = -sign_;
    return r;
}

FactoredRational FactoredRational::inverse() const { return pow(-1); }

FactoredRational FactoredRational::abs() const {
    FactoredRational r = *this;
    r.sign_ = 1;
    return r;
}

FactoredRational FactoredRational::pow(std::int64_t e) const {
    std::vector<PrimePower> f;
    f.reserve(factors_.size());
    for (const auto& pp : factors_) f.push_back({pp.prime, checked_mul(pp.exponent, e)});
    int s = (sign_ == -1 && (e % 2 != 0)) ? -1 : 1;
    return FactoredRational(s, std::move(f));
}

FactoredRational FactoredRational::numerator() const {
    std::vector<PrimePower> f;
    for (const auto& pp : factors_)
        if (pp.exponent > 0) f.push_back(pp);
    return FactoredRational(sign_, std::move(f));
}

FactoredRational FactoredRational::denominator() const {
    std::vector<PrimePower> f;
    for (const auto& pp : factors_)
        if (pp.exponent < 0) f.push_back({pp.prime, -pp.exponent});
    return FactoredRational(1, std::move(f));
}

std::string FactoredRational::numerator_string() const {
    cpp_int n = product_of(factors_, true);
    if (sign_ < 0) n = -n;
    return n.str();
}

std::string FactoredRational::denominator_string() const { return product_of(factors_, false).str(); }

std::string FactoredRational::to_string() const { return numerator_string() + "/" + denominator_string(); }

std::strong_ordering operator<=>(const FactoredRational& a, const FactoredRational& b) {
    if (auto c = a.sign_ <=> b.sign_; c != 0) return c;
    return std::lexicographical_compare_three_way(a.factors_.begin(), a.factors_.end(), b.factors_.begin(),
                                                  b.factors_.end());
}

FactoredRational parse_rational(std::string_view text) {
    auto fail = [&] { return InputError("malformed rational '" + std::string(text) + "'"); };
    std::size_t i = 0;
    int sign = 1;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
    }
    auto read_digits = [&](cpp_int& out) {
        std::size_t start = i;
        out = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out = out * 10 + (text[i] - '0');
            ++i;
        }
        return i > start;
    };
    cpp_int num, den = 1;
    if (!read_digits(num)) throw fail();
    if (i < text.size() && text[i] == '/') {
        ++i;
        if (!read_digits(den)) throw fail();
    }
    if (i != text.size()) throw fail();
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    if (num == 0) throw ZeroInput();
    std::vector<PrimePower> f = factor_magnitude(num);
    for (auto pp : factor_magnitude(den)) f.push_back({pp.prime, -pp.exponent});
    return FactoredRational(sign, std::move(f));
}

FactoredRational factor(std::int64_t num, std::int64_t den) {
    if (num == 0) throw ZeroInput();
    if (den == 0) throw InputError("zero denominator");
    int sign = ((num < 0) != (den < 0)) ? -1 : 1;
    auto mag = [](std::int64_t v) {
        return v < 0 ? static_cast<u128>(-(static_cast<__int128>(v))) : static_cast<u128>(v);
    };
    std::vector<PrimePower> f;
    for (auto [p, e] : arith::factor_integer(mag(num))) f.push_back({p, e});
    for (auto [p, e] : arith::factor_integer(mag(den))) f.push_back({p, -e});
    return FactoredRational(sign, std::move(f));
}

std::vector<FactoredRational> clear_denominators(std::span<const FactoredRational> elements, std::int64_t n) {
    FactoredRational all_dens;
    for (const auto& x : elements) all_dens = all_dens * x.denominator();
    FactoredRational scale = all_dens.pow(n);
    std::vector<FactoredRational> out;
    out.reserve(elements.size());
    for (const auto& x : elements) out.push_back(x * scale);
    return out;
}

bool is_perfect_power(const FactoredRational& x, std::int64_t k) {
    if (k < 1) throw InputError("perfect-power exponent must be >= 1");
    if (k % 2 == 0 && x.sign() < 0) return false;
    return std::all_of(x.factors().begin(), x.factors().end(),
                       [k](const PrimePower& f) { return f.exponent % k == 0; });
}

std::optional<FactoredRational> exact_root(const FactoredRational& x, std::int64_t k) {
    if (!is_perfect_power(x, k)) return std::nullopt;
    std::vector<PrimePower> f;
    for (const auto& pp : x.factors()) f.push_back({pp.prime, pp.exponent / k});
    return FactoredRational(x.sign(), std::move(f));
}

PowerClass reduce_class(const FactoredRational& x, std::int64_t k) {
    if (k < 2) throw InputError("class modulus must be >= 2");
    std::vector<PrimePower> f;
    for (const auto& pp : x.factors()) f.push_back({pp.prime, floor_mod(pp.exponent, k)});
    int sign = (k % 2 != 0) ? 1 : x.sign();
    return PowerClass{k, FactoredRational(sign, std::move(f))};
}

StrippedPower strip_power_layers(const FactoredRational& x, std::uint64_t q) {
    if (x.is_unit()) throw UnitInput();
    if (q < 2) throw InputError("layer prime must be >= 2");
    const auto qi = static_cast<std::int64_t>(q);
    FactoredRational base = x;
    std::int64_t mu = 0;
    while (auto root = exact_root(base, qi)) {
        // odd q: the root keeps the sign, so (-r)^q = -r^q holds
        base = *root;
        ++mu;
    }
    return {base, mu};
}

std::vector<std::uint64_t> joint_support(std::span<const FactoredRational> elements) {
    std::vector<std::uint64_t> out;
    for (const auto& x : elements)
        for (const auto& f : x.factors()) out.push_back(f.prime);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace locus
