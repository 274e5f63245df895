#include "locus/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "locus/errors.hpp"

namespace locus::arith {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    // extended Euclid on signed 128-bit to avoid overflow
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 q = r / new_r;
        std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
    }
    if (r != 1) throw InconsistencyError("inv_mod: argument not invertible");
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

namespace {

u128 add_mod(u128 a, u128 b, u128 m) {
    // a, b < m <= 2^127 so the sum cannot wrap
    u128 s = a + b;
    return s >= m ? s - m : s;
}

}  // namespace

u128 mul_mod(u128 a, u128 b, u128 m) {
    if (m <= UINT64_MAX) {
        return mul_mod(static_cast<std::uint64_t>(a % m), static_cast<std::uint64_t>(b % m),
                       static_cast<std::uint64_t>(m));
    }
    a %= m;
    b %= m;
    u128 result = 0;
    while (b) {
        if (b & 1) result = add_mod(result, a, m);
        a = add_mod(a, a, m);
        b >>= 1;
    }
    return result;
}

u128 pow_mod(u128 base, u128 exp, u128 m) {
    u128 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

namespace {

constexpr std::uint32_t kWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

bool miller_rabin(u128 n) {
    u128 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (std::uint32_t a : kWitnesses) {
        if (a % n == 0) continue;
        u128 x = pow_mod(static_cast<u128>(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u128 gcd128(u128 a, u128 b) {
    while (b) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0.
u128 pollard_brent(u128 n, std::mt19937_64& rng) {
    if ((n & 1) == 0) return 2;
    for (int attempt = 0; attempt < 64; ++attempt) {
        u128 y = static_cast<u128>(rng()) % n;
        u128 c = static_cast<u128>(rng()) % (n - 1) + 1;
        const u128 m = 128;
        u128 g = 1, r = 1, q = 1, x = 0, ys = 0;
        auto f = [&](u128 v) { return add_mod(mul_mod(v, v, n), c, n); };
        std::uint64_t budget = 1ULL << 26;
        while (g == 1 && budget) {
            x = y;
            for (u128 i = 0; i < r; ++i) y = f(y);
            u128 k = 0;
            while (k < r && g == 1) {
                ys = y;
                u128 lim = std::min(m, r - k);
                for (u128 i = 0; i < lim; ++i) {
                    y = f(y);
                    q = mul_mod(q, x > y ? x - y : y - x, n);
                }
                g = gcd128(q, n);
                k += m;
            }
            r <<= 1;
            budget = budget > r ? budget - static_cast<std::uint64_t>(r) : 0;
        }
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd128(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

// Floor of the k-th root of n.
u128 integer_root(u128 n, unsigned k) {
    auto r = static_cast<u128>(std::pow(static_cast<long double>(n), 1.0L / k));
    auto pow_le = [&](u128 x) {  // x^k <= n without overflow
        u128 acc = 1;
        for (unsigned i = 0; i < k; ++i) {
            if (x && acc > n / x) return false;
            acc *= x;
        }
        return acc <= n;
    };
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

// n = r^k with k > 1 maximal, else {n, 1}. Rho is hopeless on prime powers.
std::pair<u128, unsigned> perfect_power_split(u128 n) {
    for (unsigned k = 127; k >= 2; --k) {
        const u128 r = integer_root(n, k);
        if (r < 2) continue;
        u128 acc = 1;
        for (unsigned i = 0; i < k; ++i) acc *= r;
        if (acc == n) return {r, k};
    }
    return {n, 1};
}

void split_cofactor(u128 n, std::vector<u128>& out, std::mt19937_64& rng) {
    if (n == 1) return;
    if (auto [r, k] = perfect_power_split(n); k > 1) {
        std::vector<u128> base;
        split_cofactor(r, base, rng);
        for (unsigned i = 0; i < k; ++i) out.insert(out.end(), base.begin(), base.end());
        return;
    }
    if (n < kPrimalityCertifiedBound && is_prime(n)) {
        out.push_back(n);
        return;
    }
    if (n >= kPrimalityCertifiedBound && miller_rabin(n)) {
        throw FactorizationCapacityExceeded("probable prime " + to_string(n) +
                                            " is beyond the certified primality bound");
    }
    u128 d = pollard_brent(n, rng);
    if (d == 0) throw FactorizationCapacityExceeded("rho failed to split " + to_string(n));
    split_cofactor(d, out, rng);
    split_cofactor(n / d, out, rng);
}

}  // namespace

bool is_prime(u128 n) {
    if (n < 2) return false;
    for (std::uint32_t p : kWitnesses) {
        if (n % p == 0) return n == p;
    }
    return miller_rabin(n);
}

bool is_prime(std::uint64_t n) { return is_prime(static_cast<u128>(n)); }

const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = [] {
        std::vector<bool> composite(kTrialDivisionBound + 1, false);
        std::vector<std::uint32_t> out;
        for (std::uint64_t i = 2; i <= kTrialDivisionBound; ++i) {
            if (composite[i]) continue;
            out.push_back(static_cast<std::uint32_t>(i));
            for (std::uint64_t j = i * i; j <= kTrialDivisionBound; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

std::vector<std::pair<std::uint64_t, std::int64_t>> factor_integer(u128 n) {
    std::vector<std::pair<std::uint64_t, std::int64_t>> result;
    if (n == 0) throw ZeroInput();
    for (std::uint32_t p : small_primes()) {
        if (static_cast<u128>(p) * p > n) break;
        if (n % p) continue;
        std::int64_t e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        result.emplace_back(p, e);
    }
    if (n > 1) {
        std::vector<u128> parts;
        std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
        split_cofactor(n, parts, rng);
        std::sort(parts.begin(), parts.end());
        for (u128 p : parts) {
            if (p > UINT64_MAX) {
                throw FactorizationCapacityExceeded("prime factor " + to_string(p) + " exceeds 64 bits");
            }
            auto p64 = static_cast<std::uint64_t>(p);
            if (!result.empty() && result.back().first == p64) {
                ++result.back().second;
            } else {
                result.emplace_back(p64, 1);
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::string to_string(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return d;
    }
    return n;
}

std::vector<std::pair<std::uint64_t, int>> factor_small(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace locus::arith
