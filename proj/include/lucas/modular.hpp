#pragma once

/**
 * @file modular.hpp
 * @brief The recurrence modulo m: matrix powers, cycle structure, periods,
 *        rank of apparition and prime-power period ladders.
 *
 * The companion matrix C = [[A, B], [1, 0]] satisfies
 *
 *   C^n = [[e(n+1), B e(n)], [e(n), B e(n-1)]]
 *
 * so e(n) mod m is the bottom-left entry of C^n mod m.
 */

#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "lucas/exact.hpp"
#include "lucas/numtheory.hpp"
#include "lucas/params.hpp"

namespace lucas {

inline constexpr std::uint64_t default_state_budget = 100'000'000;

inline void require_modulus(std::uint64_t m) {
    if (m < 2) {
        throw precondition_error("modulus must be >= 2, got " + std::to_string(m));
    }
    // Keeps a + b below 2^64 in add_mod and the signed Euclid in inverse_mod.
    if (m > (std::uint64_t{1} << 62)) {
        throw precondition_error("modulus must be <= 2^62");
    }
}

inline std::uint64_t gcd_B(const RecurrenceParams& params, std::uint64_t m) {
    return std::gcd(reduce(params.B(), m), m);
}

class ModMatrix {
public:
    using Entries = std::array<Residue, 4>; // row-major

    ModMatrix(Entries entries, std::uint64_t modulus) : e_(entries), m_(modulus) {
        require_modulus(modulus);
        for (auto& x : e_) {
            x %= m_;
        }
    }

    static ModMatrix identity(std::uint64_t m) { return ModMatrix({1, 0, 0, 1}, m); }

    static ModMatrix companion(const RecurrenceParams& params, std::uint64_t m) {
        require_modulus(m);
        return ModMatrix({reduce(params.A(), m), reduce(params.B(), m), 1, 0}, m);
    }

    Residue operator()(int row, int col) const { return e_[static_cast<std::size_t>(2 * row + col)]; }
    const Entries& entries() const noexcept { return e_; }
    std::uint64_t modulus() const noexcept { return m_; }

    ModMatrix operator*(const ModMatrix& o) const {
        if (o.m_ != m_) {
            throw precondition_error("ModMatrix moduli differ");
        }
        auto dot = [this](Residue x0, Residue y0, Residue x1, Residue y1) {
            return add_mod(mul_mod(x0, y0, m_), mul_mod(x1, y1, m_), m_);
        };
        return ModMatrix({dot(e_[0], o.e_[0], e_[1], o.e_[2]), dot(e_[0], o.e_[1], e_[1], o.e_[3]),
                          dot(e_[2], o.e_[0], e_[3], o.e_[2]), dot(e_[2], o.e_[1], e_[3], o.e_[3])},
                         m_);
    }

    bool is_identity() const noexcept { return e_ == Entries{1, 0, 0, 1}; }

    bool operator==(const ModMatrix&) const = default;

private:
    Entries e_;
    std::uint64_t m_;
};

inline ModMatrix mat_pow(ModMatrix base, std::uint64_t exponent) {
    ModMatrix r = ModMatrix::identity(base.modulus());
    while (exponent != 0) {
        if (exponent & 1U) {
            r = r * base;
        }
        exponent >>= 1;
        if (exponent != 0) {
            base = base * base;
        }
    }
    return r;
}

inline Residue term_mod(const RecurrenceParams& params, std::uint64_t n, std::uint64_t m) {
    require_modulus(m);
    return mat_pow(ModMatrix::companion(params, m), n)(1, 0);
}

/// One step of the adjacent-pair sequence (e(n), e(n+1)) mod m.
class PairStepper {
public:
    PairStepper(const RecurrenceParams& params, std::uint64_t m)
        : a_(reduce(params.A(), m)), b_(reduce(params.B(), m)), m_(m) {}

    std::pair<Residue, Residue> operator()(std::pair<Residue, Residue> s) const noexcept {
        return {s.second, add_mod(mul_mod(a_, s.second, m_), mul_mod(b_, s.first, m_), m_)};
    }

    std::pair<Residue, Residue> seed() const noexcept { return {0, 1 % m_}; }

private:
    Residue a_, b_;
    std::uint64_t m_;
};

struct CycleStructure {
    std::uint64_t modulus;
    std::uint64_t tail_len;
    std::uint64_t cycle_len;
    bool pure;
};

/// Minimal tail and cycle of the pair sequence by first-repeat detection.
inline CycleStructure cycle_structure(const RecurrenceParams& params, std::uint64_t m,
                                      std::uint64_t state_budget = default_state_budget) {
    require_modulus(m);
    if (m > (std::uint64_t{1} << 32) || m * m > state_budget) {
        throw budget_exceeded("cycle_structure: " + std::to_string(m) + "^2 pair states exceed budget " +
                              std::to_string(state_budget));
    }
    const PairStepper step(params, m);
    std::unordered_map<std::uint64_t, std::uint64_t> first_seen;
    auto state = step.seed();
    for (std::uint64_t i = 0;; ++i) {
        const auto [it, inserted] = first_seen.try_emplace(state.first * m + state.second, i);
        if (!inserted) {
            const std::uint64_t tail = it->second;
            CycleStructure cs{m, tail, i - tail, tail == 0};
            if (cs.pure != (gcd_B(params, m) == 1)) {
                throw std::logic_error("purity disagrees with gcd(B,m) for " + params.to_string() +
                                       ", m=" + std::to_string(m));
            }
            return cs;
        }
        state = step(state);
    }
}

/// The pair states on the cycle, starting at index tail_len.
inline std::vector<std::pair<Residue, Residue>> cycle_states(const RecurrenceParams& params, std::uint64_t m,
                                                             std::uint64_t state_budget = default_state_budget) {
    const CycleStructure cs = cycle_structure(params, m, state_budget);
    const PairStepper step(params, m);
    auto state = step.seed();
    for (std::uint64_t i = 0; i < cs.tail_len; ++i) {
        state = step(state);
    }
    std::vector<std::pair<Residue, Residue>> out;
    out.reserve(cs.cycle_len);
    for (std::uint64_t i = 0; i < cs.cycle_len; ++i) {
        out.push_back(state);
        state = step(state);
    }
    return out;
}

/// k(m): least k >= 1 with (e(k), e(k+1)) = (0, 1) mod m. Walks the pair
/// sequence in constant memory; state_budget caps the number of steps.
inline std::uint64_t period(const RecurrenceParams& params, std::uint64_t m,
                            std::uint64_t state_budget = default_state_budget) {
    require_modulus(m);
    if (gcd_B(params, m) != 1) {
        throw no_pure_period("gcd(B, m) != 1 for " + params.to_string() + ", m=" + std::to_string(m));
    }
    const PairStepper step(params, m);
    const auto seed = step.seed();
    auto state = step(seed);
    for (std::uint64_t k = 1;; ++k, state = step(state)) {
        if (state == seed) {
            return k;
        }
        if (k >= state_budget) {
            throw budget_exceeded("period mod " + std::to_string(m) + " exceeds " +
                                  std::to_string(state_budget) + " steps");
        }
    }
}

/// Least multiple j*step (1 <= j <= max_multiplier) with C^(j*step) = I mod m.
/// With step = k(d) for a divisor d of m this is k(m), since k(d) | k(m).
inline std::optional<std::uint64_t> least_period_multiple(const RecurrenceParams& params, std::uint64_t m,
                                                          std::uint64_t step, std::uint64_t max_multiplier) {
    require_modulus(m);
    const ModMatrix jump = mat_pow(ModMatrix::companion(params, m), step);
    ModMatrix acc = jump;
    for (std::uint64_t j = 1; j <= max_multiplier; ++j) {
        if (acc.is_identity()) {
            return j * step;
        }
        acc = acc * jump;
    }
    return std::nullopt;
}

struct RankReport {
    std::uint64_t modulus;
    std::optional<std::uint64_t> alpha;
    // nu_p(e(alpha)) when the modulus is a prime power p^k and e(alpha) != 0.
    std::optional<std::uint64_t> valuation_at_alpha;
};

inline RankReport rank(const RecurrenceParams& params, std::uint64_t m,
                       std::uint64_t state_budget = default_state_budget) {
    const CycleStructure cs = cycle_structure(params, m, state_budget);
    const PairStepper step(params, m);
    RankReport report{m, std::nullopt, std::nullopt};
    auto state = step(step.seed());
    for (std::uint64_t n = 1; n <= cs.tail_len + cs.cycle_len; ++n, state = step(state)) {
        if (state.first == 0) {
            report.alpha = n;
            break;
        }
    }
    if (report.alpha) {
        if (const auto pp = as_prime_power(m)) {
            require_digit_budget(params, *report.alpha);
            const BigInt x = term(params, *report.alpha);
            if (x != 0) { // e(alpha) = 0 exactly for degenerate parameters
                report.valuation_at_alpha = exact_valuation(x, pp->prime);
            }
        }
    }
    return report;
}

struct ZeroIndexReport {
    bool holds;
    std::optional<std::uint64_t> alpha;
    std::optional<std::uint64_t> first_violation;
};

/// Checks that the zero indices of e(n) mod m in [1, limit] are exactly the
/// multiples of the first one.
inline ZeroIndexReport zero_indices_check(const RecurrenceParams& params, std::uint64_t m, std::uint64_t limit) {
    require_modulus(m);
    if (gcd_B(params, m) != 1) {
        throw no_pure_period("zero_indices_check requires gcd(B, m) = 1");
    }
    const PairStepper step(params, m);
    ZeroIndexReport report{true, std::nullopt, std::nullopt};
    auto state = step(step.seed());
    for (std::uint64_t n = 1; n <= limit; ++n, state = step(state)) {
        const bool zero = state.first == 0;
        if (!report.alpha) {
            if (zero) {
                report.alpha = n;
            }
            continue;
        }
        if (zero != (n % *report.alpha == 0)) {
            report.holds = false;
            report.first_violation = n;
            break;
        }
    }
    return report;
}

struct PeriodRung {
    unsigned exponent;
    std::uint64_t period;
    bool operator==(const PeriodRung&) const = default;
};

struct PeriodLawReport {
    std::uint64_t p;
    std::vector<PeriodRung> ladder;
    unsigned t;
    bool law_holds;
    std::optional<unsigned> violating_exponent;
};

/// Evaluates k(p^e) = p^(e-t) k(p) for e > t, t the largest exponent in the
/// ladder with k(p^t) = k(p).
inline PeriodLawReport evaluate_period_law(std::uint64_t p, std::vector<PeriodRung> ladder) {
    PeriodLawReport r{p, std::move(ladder), 1, true, std::nullopt};
    const std::uint64_t base = r.ladder.front().period;
    for (const auto& rung : r.ladder) {
        if (rung.period == base) {
            r.t = rung.exponent;
        }
    }
    for (const auto& rung : r.ladder) {
        if (rung.exponent <= r.t) {
            continue;
        }
        const auto scale = checked_pow(p, rung.exponent - r.t);
        if (!scale || rung.period != *scale * base) {
            r.law_holds = false;
            r.violating_exponent = rung.exponent;
            break;
        }
    }
    return r;
}

namespace detail {

inline void require_ladder_args(const RecurrenceParams& params, std::uint64_t p, unsigned e_max,
                                std::uint64_t state_budget) {
    if (!is_prime(p)) {
        throw precondition_error(std::to_string(p) + " is not prime");
    }
    if (params.B() % static_cast<std::int64_t>(p) == 0) {
        throw precondition_error("p divides B");
    }
    if (e_max < 1) {
        throw precondition_error("e_max must be >= 1");
    }
    const auto top = checked_pow(p, e_max);
    if (!top || *top > state_budget) {
        throw budget_exceeded("p^e_max exceeds the scan budget");
    }
}

} // namespace detail

inline PeriodLawReport period_law_report(const RecurrenceParams& params, std::uint64_t p, unsigned e_max,
                                         std::uint64_t state_budget = default_state_budget) {
    detail::require_ladder_args(params, p, e_max, state_budget);
    std::vector<PeriodRung> ladder;
    std::uint64_t pe = 1;
    for (unsigned e = 1; e <= e_max; ++e) {
        pe *= p;
        ladder.push_back({e, period(params, pe, state_budget)});
    }
    return evaluate_period_law(p, std::move(ladder));
}

/// Minimal period of n -> e(n)^2 mod m (gcd(B, m) = 1, so the sequence is
/// purely periodic and this divides k(m)).
inline std::uint64_t squares_period(const RecurrenceParams& params, std::uint64_t m,
                                    std::uint64_t state_budget = default_state_budget) {
    const std::uint64_t k = period(params, m, state_budget);
    std::vector<Residue> squares;
    squares.reserve(k);
    const PairStepper step(params, m);
    auto state = step.seed();
    for (std::uint64_t i = 0; i < k; ++i, state = step(state)) {
        squares.push_back(mul_mod(state.first, state.first, m));
    }
    for (const std::uint64_t d : divisors(k)) {
        bool periodic = true;
        for (std::uint64_t i = 0; i + d < k && periodic; ++i) {
            periodic = squares[i] == squares[i + d];
        }
        if (periodic) {
            return d;
        }
    }
    return k;
}

inline PeriodLawReport squares_period_law_report(const RecurrenceParams& params, std::uint64_t p, unsigned e_max,
                                                 std::uint64_t state_budget = default_state_budget) {
    detail::require_ladder_args(params, p, e_max, state_budget);
    std::vector<PeriodRung> ladder;
    std::uint64_t pe = 1;
    for (unsigned e = 1; e <= e_max; ++e) {
        pe *= p;
        ladder.push_back({e, squares_period(params, pe, state_budget)});
    }
    return evaluate_period_law(p, std::move(ladder));
}

/// When gcd(B, m) = g != 1, predicts the residue x whose pair (x, 1) precedes
/// (1, A) on the cycle: x = t * (m/g) with t = (A * m/g)^(-1) mod g. Absent
/// when that inverse does not exist, in which case (1, A) has no cycle
/// predecessor of the form (x, 1).
inline std::optional<Residue> cycle_entry_prediction(const RecurrenceParams& params, std::uint64_t m) {
    require_modulus(m);
    const std::uint64_t g = gcd_B(params, m);
    if (g == 1) {
        throw precondition_error("cycle_entry_prediction requires gcd(B, m) != 1; use period()");
    }
    const std::uint64_t q = m / g;
    const auto t = inverse_mod(mul_mod(reduce(params.A(), g), q % g, g), g);
    if (!t) {
        return std::nullopt;
    }
    return mul_mod(*t, q, m);
}

/// Brute force: the x with (x, 1) on the cycle immediately before (1, A mod m).
inline std::optional<Residue> cycle_entry_observed(const RecurrenceParams& params, std::uint64_t m,
                                                   std::uint64_t state_budget = default_state_budget) {
    const auto states = cycle_states(params, m, state_budget);
    const std::pair<Residue, Residue> target{1 % m, reduce(params.A(), m)};
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[(i + 1) % states.size()] == target && states[i].second == target.first) {
            return states[i].first;
        }
    }
    return std::nullopt;
}

} // namespace lucas
