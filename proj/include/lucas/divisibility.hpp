#pragma once

/**
 * @file divisibility.hpp
 * @brief p-adic valuations of terms, the law of repetition of primes,
 *        divisibility biconditionals and trailing zeros in base m.
 */

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lucas/exact.hpp"
#include "lucas/modular.hpp"
#include "lucas/numtheory.hpp"
#include "lucas/params.hpp"

namespace lucas {

/// nu_p(x), with a distinguished infinite value for x = 0.
class Valuation {
public:
    static Valuation infinite() { return Valuation(true, 0); }
    static Valuation finite(std::uint64_t k) { return Valuation(false, k); }

    bool is_infinite() const noexcept { return infinite_; }
    std::uint64_t value() const {
        if (infinite_) {
            throw std::logic_error("infinite valuation has no finite value");
        }
        return k_;
    }

    bool operator==(const Valuation&) const = default;

private:
    Valuation(bool infinite, std::uint64_t k) : infinite_(infinite), k_(k) {}
    bool infinite_;
    std::uint64_t k_;
};

inline Valuation valuation(const BigInt& x, std::uint64_t p) {
    if (!is_prime(p)) {
        throw precondition_error("valuation: " + std::to_string(p) + " is not prime");
    }
    if (x == 0) {
        return Valuation::infinite();
    }
    return Valuation::finite(exact_valuation(x, p));
}

struct RepetitionLawReport {
    std::uint64_t p;
    std::uint64_t base_rank;
    std::uint64_t base_valuation;
    std::uint64_t predicted_next_rank;
    std::optional<std::uint64_t> observed_next_rank; // absent if beyond scan_bound
    std::uint64_t observed_valuation_at_pn;
    bool holds;
    // p = 2 failures are expected: the expansion of e(an) carries 2^(1-a).
    bool known_exception;
};

/// If p^k || e(n) at the rank n = alpha(p), checks that p^(k+1) first divides
/// the sequence at index p*n, and exactly once there.
inline RepetitionLawReport repetition_law_check(const RecurrenceParams& params, std::uint64_t p,
                                                std::uint64_t scan_bound) {
    if (!is_prime(p)) {
        throw precondition_error(std::to_string(p) + " is not prime");
    }
    if (!params.coprime_AB()) {
        throw precondition_error("repetition law requires gcd(A, B) = 1");
    }
    if (params.B() % static_cast<std::int64_t>(p) == 0) {
        throw precondition_error("repetition law requires p not dividing B");
    }

    std::optional<std::uint64_t> alpha;
    {
        const PairStepper step(params, p);
        auto state = step(step.seed());
        for (std::uint64_t n = 1; n <= scan_bound; ++n, state = step(state)) {
            if (state.first == 0) {
                alpha = n;
                break;
            }
        }
    }
    if (!alpha) {
        throw rank_not_found("no zero of e(n) mod " + std::to_string(p) + " for n <= " +
                             std::to_string(scan_bound));
    }
    const BigInt base_term = term(params, *alpha);
    if (base_term == 0) {
        throw hypothesis_not_met("e(" + std::to_string(*alpha) + ") = 0 exactly for " + params.to_string());
    }

    RepetitionLawReport r{};
    r.p = p;
    r.base_rank = *alpha;
    r.base_valuation = exact_valuation(base_term, p);
    r.predicted_next_rank = p * *alpha;

    const BigInt next_power = ipow(BigInt(static_cast<unsigned long>(p)), r.base_valuation + 1);
    // Zeros mod p^(k+1) are zeros mod p, hence multiples of alpha.
    for (std::uint64_t n = *alpha; n <= scan_bound; n += *alpha) {
        require_digit_budget(params, n);
        const BigInt x = term(params, n);
        if (mpz_divisible_p(x.get_mpz_t(), next_power.get_mpz_t()) != 0) {
            r.observed_next_rank = n;
            break;
        }
    }
    require_digit_budget(params, r.predicted_next_rank);
    const BigInt at_pn = term(params, r.predicted_next_rank);
    if (at_pn == 0) {
        throw hypothesis_not_met("e(p*alpha) = 0 exactly for " + params.to_string());
    }
    r.observed_valuation_at_pn = exact_valuation(at_pn, p);
    r.holds = r.observed_next_rank == r.predicted_next_rank && r.observed_valuation_at_pn == r.base_valuation + 1;
    r.known_exception = !r.holds && p == 2;
    return r;
}

/// Verdict of an exhaustive check, with the first failing parameter if any.
struct SweepVerdict {
    bool holds;
    std::optional<std::uint64_t> counterexample;
};

namespace detail {

inline void require_coprime_positive(const RecurrenceParams& params, std::uint64_t n) {
    if (!params.coprime_AB()) {
        throw precondition_error("requires gcd(A, B) = 1");
    }
    if (n < 1) {
        throw precondition_error("requires n >= 1");
    }
}

inline bool divides(const BigInt& d, const BigInt& x) {
    if (d == 0) {
        return x == 0;
    }
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

} // namespace detail

/// e(n)^2 | e(n m)  <=>  e(n) | m, for m in [1, m_max].
inline SweepVerdict thm9_check(const RecurrenceParams& params, std::uint64_t n, std::uint64_t m_max) {
    detail::require_coprime_positive(params, n);
    const BigInt en = term(params, n);
    if (en == 0) {
        throw precondition_error("requires e(n) != 0");
    }
    require_digit_budget(params, n * m_max);
    const BigInt square = en * en;
    for (std::uint64_t m = 1; m <= m_max; ++m) {
        const bool lhs = detail::divides(square, term(params, n * m));
        const bool rhs = detail::divides(en, BigInt(static_cast<unsigned long>(m)));
        if (lhs != rhs) {
            return {false, m};
        }
    }
    return {true, std::nullopt};
}

/// e(n)^(k+1) | e(n |e(n)|^k) for k in [1, k_max].
inline SweepVerdict thm10_check(const RecurrenceParams& params, std::uint64_t n, std::uint64_t k_max,
                                double digit_budget = default_digit_budget) {
    detail::require_coprime_positive(params, n);
    const BigInt en = term(params, n);
    if (en == 0) {
        throw precondition_error("requires e(n) != 0");
    }
    const BigInt magnitude = abs(en);
    for (std::uint64_t k = 1; k <= k_max; ++k) {
        const BigInt index = BigInt(static_cast<unsigned long>(n)) * ipow(magnitude, k);
        if (!index.fits_ulong_p()) {
            throw budget_exceeded("thm10 index n*e(n)^k does not fit a machine word");
        }
        require_digit_budget(params, index.get_ui(), digit_budget);
        const BigInt x = term(params, index.get_ui());
        if (!detail::divides(ipow(en, k + 1), x)) {
            return {false, k};
        }
    }
    return {true, std::nullopt};
}

struct Thm11Report {
    bool holds;
    std::vector<std::uint64_t> degenerate;                       // a with |e(a)| <= 1
    std::vector<std::pair<std::uint64_t, std::uint64_t>> counterexamples; // (a, b)
};

/// e(a) | e(b)  <=>  a | b over the box, skipping a with |e(a)| <= 1.
inline Thm11Report thm11_check(const RecurrenceParams& params, std::uint64_t a_max, std::uint64_t b_max) {
    if (!params.coprime_AB()) {
        throw precondition_error("requires gcd(A, B) = 1");
    }
    const std::uint64_t top = std::max(a_max, b_max);
    require_digit_budget(params, top);
    std::vector<BigInt> e(top + 1);
    e[0] = 0;
    if (top >= 1) {
        e[1] = 1;
    }
    for (std::uint64_t i = 2; i <= top; ++i) {
        e[i] = static_cast<long>(params.A()) * e[i - 1] + static_cast<long>(params.B()) * e[i - 2];
    }
    Thm11Report r{true, {}, {}};
    for (std::uint64_t a = 1; a <= a_max; ++a) {
        if (abs(e[a]) <= 1) {
            r.degenerate.push_back(a);
            continue;
        }
        for (std::uint64_t b = 1; b <= b_max; ++b) {
            if (detail::divides(e[a], e[b]) != (b % a == 0)) {
                r.counterexamples.emplace_back(a, b);
            }
        }
    }
    r.holds = r.counterexamples.empty();
    return r;
}

/// Trailing zero digits of x in base m, by repeated division.
inline std::uint64_t trailing_zeros_by_digits(BigInt x, std::uint64_t m) {
    if (x == 0) {
        throw precondition_error("zero has no finite trailing-zero count");
    }
    std::uint64_t z = 0;
    while (mpz_divisible_ui_p(x.get_mpz_t(), m) != 0) {
        mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), m);
        ++z;
    }
    return z;
}

/// min over q^c || m of floor(nu_q(x) / c).
inline std::uint64_t trailing_zeros_by_valuation(const BigInt& x, std::uint64_t m) {
    if (x == 0) {
        throw precondition_error("zero has no finite trailing-zero count");
    }
    std::optional<std::uint64_t> best;
    for (const auto& [q, c] : factorize(m)) {
        const std::uint64_t z = exact_valuation(x, q) / c;
        best = best ? std::min(*best, z) : z;
    }
    return best.value_or(0);
}

inline std::uint64_t trailing_zeros(const RecurrenceParams& params, std::uint64_t n, std::uint64_t base) {
    if (n == 0) {
        throw precondition_error("trailing_zeros needs n >= 1");
    }
    if (base < 2) {
        throw precondition_error("base must be >= 2");
    }
    require_digit_budget(params, n);
    const BigInt x = term(params, n);
    const std::uint64_t by_digits = trailing_zeros_by_digits(x, base);
    if (by_digits != trailing_zeros_by_valuation(x, base)) {
        throw std::logic_error("trailing-zero counts disagree at n=" + std::to_string(n));
    }
    return by_digits;
}

struct ZeroSample {
    std::uint64_t n;
    std::uint64_t zeros;
    bool operator==(const ZeroSample&) const = default;
};

struct TrailingZerosReport {
    std::uint64_t base;
    std::vector<ZeroSample> samples;
    double max_ratio;              // max z(n) / log2(n)
    std::uint64_t max_ratio_at;    // the n attaining it
    bool counts_agree;             // digit stripping == valuation formula everywhere
};

inline TrailingZerosReport bound_check(const RecurrenceParams& params, std::uint64_t base, std::uint64_t n_max) {
    if (base < 2) {
        throw precondition_error("base must be >= 2");
    }
    if (n_max < 2) {
        throw precondition_error("n_max must be >= 2");
    }
    require_digit_budget(params, n_max);
    TrailingZerosReport r{base, {}, 0.0, 2, true};
    r.samples.reserve(n_max - 1);
    BigInt prev = 1; // e(1)
    BigInt cur = static_cast<long>(params.A());
    const long a = static_cast<long>(params.A());
    const long b = static_cast<long>(params.B());
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        if (n > 2) {
            BigInt next = a * cur + b * prev;
            prev = std::move(cur);
            cur = std::move(next);
        }
        if (cur == 0) {
            throw hypothesis_not_met("e(" + std::to_string(n) + ") = 0 exactly for " + params.to_string());
        }
        const std::uint64_t z = trailing_zeros_by_digits(cur, base);
        r.counts_agree = r.counts_agree && z == trailing_zeros_by_valuation(cur, base);
        r.samples.push_back({n, z});
        const double ratio = static_cast<double>(z) / std::log2(static_cast<double>(n));
        if (ratio > r.max_ratio) {
            r.max_ratio = ratio;
            r.max_ratio_at = n;
        }
    }
    return r;
}

} // namespace lucas
