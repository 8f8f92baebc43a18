#pragma once

/**
 * @file params.hpp
 * @brief Parameters of the recurrence e(n) = A*e(n-1) + B*e(n-2), e(0)=0, e(1)=1.
 */

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lucas {

// Error taxonomy. Precondition violations derive from std::invalid_argument,
// resource limits from std::runtime_error.
struct precondition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// gcd(B, m) != 1: the pair sequence mod m has a tail and (0,1) never recurs.
struct no_pure_period : std::domain_error {
    using std::domain_error::domain_error;
};

// A conditional identity was asked about an instance outside its hypothesis.
struct hypothesis_not_met : std::domain_error {
    using std::domain_error::domain_error;
};

struct budget_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct rank_not_found : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class RecurrenceParams {
public:
    RecurrenceParams(std::int64_t a, std::int64_t b) : a_(a), b_(b) {
        if (b == 0) {
            throw precondition_error("B must be nonzero (first-order recurrence)");
        }
        // |A|,|B| < 2^31 keeps A^2 + 4B and every reduction in 64 bits.
        constexpr std::int64_t limit = std::int64_t{1} << 31;
        if (a <= -limit || a >= limit || b <= -limit || b >= limit) {
            throw precondition_error("coefficients must satisfy |A|,|B| < 2^31");
        }
    }

    std::int64_t A() const noexcept { return a_; }
    std::int64_t B() const noexcept { return b_; }
    std::int64_t D() const noexcept { return a_ * a_ + 4 * b_; }

    bool coprime_AB() const noexcept { return std::gcd(a_, b_) == 1; }

    /// True when e(n) = 0 exactly for some n >= 1, i.e. the root ratio is a
    /// root of unity. This happens iff A*e(3)*e(4)*e(6) has a zero factor:
    /// A = 0, A^2 + B = 0, A^2 + 2B = 0 or A^2 + 3B = 0.
    bool has_exact_zero() const noexcept {
        const std::int64_t a2 = a_ * a_;
        return a_ == 0 || a2 + b_ == 0 || a2 + 2 * b_ == 0 || a2 + 3 * b_ == 0;
    }

    std::string to_string() const {
        return "A=" + std::to_string(a_) + ",B=" + std::to_string(b_);
    }

    bool operator==(const RecurrenceParams&) const = default;

private:
    std::int64_t a_;
    std::int64_t b_;
};

inline RecurrenceParams fibonacci() { return {1, 1}; }
inline RecurrenceParams pell() { return {2, 1}; }

// Index into the sequence. Negative indices are rejected: e(-1) = 1/B.
class TermIndex {
public:
    constexpr TermIndex(std::uint64_t n) noexcept : n_(n) {}

    static TermIndex checked(std::int64_t n) {
        if (n < 0) {
            throw precondition_error("negative index " + std::to_string(n));
        }
        return TermIndex(static_cast<std::uint64_t>(n));
    }

    constexpr std::uint64_t value() const noexcept { return n_; }
    constexpr operator std::uint64_t() const noexcept { return n_; }

private:
    std::uint64_t n_;
};

} // namespace lucas
