#pragma once

/**
 * @file exact.hpp
 * @brief Exact big-integer terms of the recurrence and its companion sequence.
 *
 * All terms are computed by fast doubling on the pair (e(n), e(n+1)):
 *
 *   e(2n)   = e(n) * (2 e(n+1) - A e(n))
 *   e(2n+1) = e(n+1)^2 + B e(n)^2
 *
 * both instances of the addition law e(n+t) = e(n+1) e(t) + B e(n) e(t-1).
 */

#include <gmpxx.h>

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <algorithm>

#include "lucas/params.hpp"

namespace lucas {

using BigInt = mpz_class;

struct TermPair {
    BigInt current; // e(n)
    BigInt next;    // e(n+1)
};

inline TermPair term_pair_fast(const RecurrenceParams& params, TermIndex index) {
    const std::uint64_t n = index.value();
    const BigInt a = static_cast<long>(params.A());
    const BigInt b = static_cast<long>(params.B());

    BigInt x = 0; // e(k)
    BigInt y = 1; // e(k+1)
    BigInt even, odd, t;
    for (int bit = std::bit_width(n) - 1; bit >= 0; --bit) {
        // (e(k), e(k+1)) -> (e(2k), e(2k+1))
        t = 2 * y - a * x;
        even = x * t;
        odd = y * y + b * x * x;
        if ((n >> bit) & 1U) {
            // (e(2k+1), e(2k+2)), e(2k+2) = A e(2k+1) + B e(2k)
            x = odd;
            y = a * odd + b * even;
        } else {
            x = std::move(even);
            y = std::move(odd);
        }
    }
    return {std::move(x), std::move(y)};
}

inline BigInt term(const RecurrenceParams& params, TermIndex n) {
    return term_pair_fast(params, n).current;
}

/// v(n) = 2 e(n+1) - A e(n); seeds v(0) = 2, v(1) = A.
inline BigInt companion(const RecurrenceParams& params, TermIndex n) {
    const auto [e, e1] = term_pair_fast(params, n);
    return 2 * e1 - static_cast<long>(params.A()) * e;
}

/// Term n of the sequence with the same recurrence and seeds (w0, w1):
/// w(n) = w1 e(n) + B w0 e(n-1).
inline BigInt general_from_seeds(const RecurrenceParams& params, const BigInt& w0,
                                 const BigInt& w1, TermIndex n) {
    if (n.value() == 0) {
        return w0;
    }
    const auto [prev, cur] = term_pair_fast(params, n.value() - 1);
    return w1 * cur + static_cast<long>(params.B()) * w0 * prev;
}

/// e(n+1) e(n-1) - e(n)^2, which equals -(-B)^(n-1).
inline BigInt catalan_value(const RecurrenceParams& params, TermIndex n) {
    if (n.value() == 0) {
        throw precondition_error("catalan_value needs n >= 1 (e(-1) is not integral)");
    }
    const auto [prev, cur] = term_pair_fast(params, n.value() - 1);
    const BigInt next = static_cast<long>(params.A()) * cur + static_cast<long>(params.B()) * prev;
    return next * prev - cur * cur;
}

/// Closed form of catalan_value.
inline BigInt catalan_closed_form(const RecurrenceParams& params, TermIndex n) {
    if (n.value() == 0) {
        throw precondition_error("catalan_closed_form needs n >= 1");
    }
    BigInt r;
    const BigInt minus_b = -static_cast<long>(params.B());
    mpz_pow_ui(r.get_mpz_t(), minus_b.get_mpz_t(), n.value() - 1);
    return -r;
}

/// Upper estimate of the decimal digit count of e(n), from the dominant
/// characteristic root magnitude.
inline double estimated_digits(const RecurrenceParams& params, std::uint64_t n) {
    const double a = std::abs(static_cast<double>(params.A()));
    const double d = static_cast<double>(params.D());
    double root = d >= 0 ? (a + std::sqrt(d)) / 2.0 : std::sqrt(std::abs(static_cast<double>(params.B())));
    root = std::max(root, 1.0);
    // Repeated or unit-modulus roots grow polynomially: e(n) <= n * root^n.
    return static_cast<double>(n) * std::log10(root) + std::log10(static_cast<double>(n) + 1.0) + 1.0;
}

/// Exact-term size limit shared by every caller that materializes e(n).
inline constexpr double default_digit_budget = 1e6;

inline void require_digit_budget(const RecurrenceParams& params, std::uint64_t n,
                                 double budget = default_digit_budget) {
    if (estimated_digits(params, n) > budget) {
        throw budget_exceeded("e(" + std::to_string(n) + ") exceeds the exact-term digit budget for " +
                              params.to_string());
    }
}

inline BigInt ipow(const BigInt& base, unsigned long exponent) {
    BigInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
    return r;
}

/// nu_p(x) for x != 0.
inline std::uint64_t exact_valuation(const BigInt& x, std::uint64_t p) {
    if (x == 0) {
        throw precondition_error("valuation of zero is infinite");
    }
    BigInt q = x;
    const BigInt prime = static_cast<unsigned long>(p);
    std::uint64_t k = 0;
    while (mpz_divisible_p(q.get_mpz_t(), prime.get_mpz_t()) != 0) {
        mpz_divexact(q.get_mpz_t(), q.get_mpz_t(), prime.get_mpz_t());
        ++k;
    }
    return k;
}

} // namespace lucas
