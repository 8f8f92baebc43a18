#pragma once

// Word-size modular arithmetic and small-integer number theory helpers.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace lucas {

using Residue = std::uint64_t;

inline Residue reduce(std::int64_t x, std::uint64_t m) noexcept {
    const auto r = x % static_cast<std::int64_t>(m);
    return static_cast<Residue>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
}

inline Residue mul_mod(Residue a, Residue b, std::uint64_t m) noexcept {
    return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % m);
}

inline Residue add_mod(Residue a, Residue b, std::uint64_t m) noexcept {
    const Residue s = a + b;
    return (s >= m || s < a) ? s - m : s;
}

inline Residue pow_mod(Residue base, std::uint64_t exponent, std::uint64_t m) noexcept {
    Residue r = 1 % m;
    base %= m;
    while (exponent != 0) {
        if (exponent & 1U) {
            r = mul_mod(r, base, m);
        }
        base = mul_mod(base, base, m);
        exponent >>= 1;
    }
    return r;
}

/// Inverse of a modulo m, if gcd(a, m) = 1. m = 1 yields 0.
inline std::optional<Residue> inverse_mod(Residue a, std::uint64_t m) {
    if (m == 1) {
        return 0;
    }
    std::int64_t old_r = static_cast<std::int64_t>(a % m), r = static_cast<std::int64_t>(m);
    std::int64_t old_s = 1, s = 0;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        old_r = std::exchange(r, old_r - q * r);
        old_s = std::exchange(s, old_s - q * s);
    }
    if (old_r != 1) {
        return std::nullopt;
    }
    return reduce(old_s, m);
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        Residue x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (int i = 1; i < s && composite; ++i) {
            x = mul_mod(x, x, n);
            composite = x != n - 1;
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

struct PrimePower {
    std::uint64_t prime;
    unsigned exponent;
    bool operator==(const PrimePower&) const = default;
};

/// Trial-division factorization, ascending primes.
inline std::vector<PrimePower> factorize(std::uint64_t n) {
    std::vector<PrimePower> out;
    for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            unsigned k = 0;
            while (n % p == 0) {
                n /= p;
                ++k;
            }
            out.push_back({p, k});
        }
    }
    if (n > 1) {
        out.push_back({n, 1});
    }
    return out;
}

inline std::optional<PrimePower> as_prime_power(std::uint64_t m) {
    auto f = factorize(m);
    if (f.size() != 1) {
        return std::nullopt;
    }
    return f.front();
}

/// Divisors in ascending order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> ds{1};
    for (const auto& [p, k] : factorize(n)) {
        const std::size_t count = ds.size();
        std::uint64_t pk = 1;
        for (unsigned i = 0; i < k; ++i) {
            pk *= p;
            for (std::size_t j = 0; j < count; ++j) {
                ds.push_back(ds[j] * pk);
            }
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

/// p^e, or nullopt on 64-bit overflow.
inline std::optional<std::uint64_t> checked_pow(std::uint64_t p, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (r > UINT64_MAX / p) {
            return std::nullopt;
        }
        r *= p;
    }
    return r;
}

} // namespace lucas
