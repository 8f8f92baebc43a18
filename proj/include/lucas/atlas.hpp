#pragma once

/**
 * @file atlas.hpp
 * @brief Bulk drivers: period atlas over parameter grids and the search for
 *        primes with k(p^2) = k(p).
 */

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "lucas/modular.hpp"
#include "lucas/numtheory.hpp"
#include "lucas/parallel.hpp"
#include "lucas/params.hpp"
#include "lucas/records.hpp"

namespace lucas {

/// Inclusive integer range; empty when lo > hi.
struct IntRange {
    std::int64_t lo;
    std::int64_t hi;

    bool empty() const noexcept { return lo > hi; }
    std::uint64_t size() const noexcept { return empty() ? 0 : static_cast<std::uint64_t>(hi - lo) + 1; }
};

struct AtlasRow {
    std::int64_t A;
    std::int64_t B;
    std::uint64_t m;
    bool pure = false;
    std::uint64_t tail_len = 0;
    std::uint64_t cycle_len = 0;
    std::optional<std::uint64_t> alpha{};
    std::optional<std::string> error{}; // set for rows that hit a budget limit

    bool operator==(const AtlasRow&) const = default;

    Record to_record(Format format) const {
        Record r{{"A", A}, {"B", B}, {"m", m}};
        if (error) {
            if (format == Format::json) {
                r.push_back({"error", *error});
            } else {
                r.push_back({"pure", std::string("error")});
                r.push_back({"tail_len", std::monostate{}});
                r.push_back({"cycle_len", std::monostate{}});
                r.push_back({"alpha", std::monostate{}});
            }
            return r;
        }
        r.push_back({"pure", pure});
        r.push_back({"tail_len", tail_len});
        r.push_back({"cycle_len", cycle_len});
        r.push_back({"alpha", alpha ? FieldValue(*alpha) : FieldValue(std::monostate{})});
        return r;
    }

    static AtlasRow from_raw(const RawRecord& raw) {
        AtlasRow row{detail::raw_int(raw, "A"), detail::raw_int(raw, "B"), detail::raw_uint(raw, "m")};
        if (const auto it = raw.find("error"); it != raw.end()) {
            row.error = it->second;
            return row;
        }
        if (detail::raw_field(raw, "pure") == "error") {
            row.error = "budget exceeded";
            return row;
        }
        row.pure = detail::raw_bool(raw, "pure");
        row.tail_len = detail::raw_uint(raw, "tail_len");
        row.cycle_len = detail::raw_uint(raw, "cycle_len");
        if (!detail::raw_field(raw, "alpha").empty()) {
            row.alpha = detail::raw_uint(raw, "alpha");
        }
        return row;
    }
};

inline AtlasRow atlas_row(const RecurrenceParams& params, std::uint64_t m,
                          std::uint64_t state_budget = default_state_budget) {
    AtlasRow row{params.A(), params.B(), m};
    try {
        const CycleStructure cs = cycle_structure(params, m, state_budget);
        row.pure = cs.pure;
        row.tail_len = cs.tail_len;
        row.cycle_len = cs.cycle_len;
        // The valuation is not part of the row; skip the exact term.
        const PairStepper step(params, m);
        auto state = step(step.seed());
        for (std::uint64_t n = 1; n <= cs.tail_len + cs.cycle_len; ++n, state = step(state)) {
            if (state.first == 0) {
                row.alpha = n;
                break;
            }
        }
    } catch (const budget_exceeded&) {
        row.error = "budget exceeded";
    }
    return row;
}

/// All rows for the grid in (A, B, m) lexicographic order; B = 0 is skipped.
inline std::vector<AtlasRow> atlas_rows(IntRange a_range, IntRange b_range, IntRange m_range,
                                        std::uint64_t state_budget = default_state_budget,
                                        unsigned jobs = 1) {
    if (!m_range.empty() && m_range.lo < 2) {
        throw precondition_error("atlas moduli must be >= 2");
    }
    struct Triple {
        std::int64_t a, b;
        std::uint64_t m;
    };
    std::vector<Triple> triples;
    for (std::int64_t a = a_range.lo; a <= a_range.hi; ++a) {
        for (std::int64_t b = b_range.lo; b <= b_range.hi; ++b) {
            if (b == 0) {
                continue;
            }
            for (std::int64_t m = m_range.lo; m <= m_range.hi; ++m) {
                triples.push_back({a, b, static_cast<std::uint64_t>(m)});
            }
        }
    }
    return ordered_parallel_map(triples.size(), jobs, [&](std::size_t i) {
        return atlas_row(RecurrenceParams(triples[i].a, triples[i].b), triples[i].m, state_budget);
    });
}

/// Writes the atlas to `out` and returns the row count.
inline std::uint64_t atlas(IntRange a_range, IntRange b_range, IntRange m_range, std::ostream& out, Format format,
                           std::uint64_t state_budget = default_state_budget, unsigned jobs = 1) {
    const auto rows = atlas_rows(a_range, b_range, m_range, state_budget, jobs);
    RecordWriter writer(out, format);
    for (const auto& row : rows) {
        writer.write(row.to_record(format));
    }
    return rows.size();
}

struct WssFinding {
    std::int64_t A;
    std::int64_t B;
    std::uint64_t p;
    std::uint64_t k_p;
    std::uint64_t k_p2;

    bool equal() const noexcept { return k_p == k_p2; }
    bool operator==(const WssFinding&) const = default;

    Record to_record() const { return {{"A", A}, {"B", B}, {"p", p}, {"k_p", k_p}, {"k_p2", k_p2}}; }

    static WssFinding from_raw(const RawRecord& raw) {
        return {detail::raw_int(raw, "A"), detail::raw_int(raw, "B"), detail::raw_uint(raw, "p"),
                detail::raw_uint(raw, "k_p"), detail::raw_uint(raw, "k_p2")};
    }
};

/// k(p) and k(p^2) for prime p with p not dividing B. k(p^2) is found as the
/// least multiple of k(p) returning C to the identity mod p^2; it is at most
/// p * k(p).
inline WssFinding wss_pair(const RecurrenceParams& params, std::uint64_t p,
                           std::uint64_t state_budget = default_state_budget) {
    const std::uint64_t k_p = period(params, p, state_budget);
    const auto p2 = checked_pow(p, 2);
    if (!p2 || *p2 > (std::uint64_t{1} << 62)) {
        throw budget_exceeded("p^2 exceeds the modulus range");
    }
    const auto k_p2 = least_period_multiple(params, *p2, k_p, p);
    if (!k_p2) {
        throw std::logic_error("k(p^2) is not among the first p multiples of k(p)");
    }
    return {params.A(), params.B(), p, k_p, *k_p2};
}

/// Primes p <= p_max, p not dividing B, with k(p^2) = k(p), ascending.
inline std::vector<WssFinding> wss_scan(const RecurrenceParams& params, std::uint64_t p_max,
                                        std::uint64_t state_budget = default_state_budget, unsigned jobs = 1) {
    if (p_max < 2) {
        throw precondition_error("p_max must be >= 2");
    }
    std::vector<std::uint64_t> primes;
    for (std::uint64_t p = 2; p <= p_max; ++p) {
        if (is_prime(p) && params.B() % static_cast<std::int64_t>(p) != 0) {
            primes.push_back(p);
        }
    }
    const auto pairs = ordered_parallel_map(primes.size(), jobs,
                                            [&](std::size_t i) { return wss_pair(params, primes[i], state_budget); });
    std::vector<WssFinding> findings;
    for (const auto& f : pairs) {
        if (f.equal()) {
            findings.push_back(f);
        }
    }
    return findings;
}

} // namespace lucas
