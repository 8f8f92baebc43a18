#pragma once

/**
 * @file verify.hpp
 * @brief Property sweeps over a parameter grid, one record per case.
 *
 * Each suite runs one family of identities or laws for every (A, B) in the
 * grid (and, where relevant, every prime in a configured list). A case is a
 * (suite, parameters) pair; its record says whether every instance held.
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lucas/congruence.hpp"
#include "lucas/divisibility.hpp"
#include "lucas/exact.hpp"
#include "lucas/modular.hpp"
#include "lucas/parallel.hpp"
#include "lucas/params.hpp"
#include "lucas/records.hpp"

namespace lucas {

enum class Classification { pass, fail, known_exception };

inline std::string to_string(Classification c) {
    switch (c) {
    case Classification::pass:
        return "pass";
    case Classification::fail:
        return "fail";
    case Classification::known_exception:
        return "known-exception";
    }
    return "fail";
}

inline Classification parse_classification(const std::string& s) {
    if (s == "pass") {
        return Classification::pass;
    }
    if (s == "fail") {
        return Classification::fail;
    }
    if (s == "known-exception") {
        return Classification::known_exception;
    }
    throw record_parse_error("unknown classification '" + s + "'");
}

struct VerifyRecord {
    std::string suite;
    std::string case_name;
    bool holds;
    Classification classification;
    std::string detail;

    bool operator==(const VerifyRecord&) const = default;

    Record to_record() const {
        return {{"suite", suite},
                {"case", case_name},
                {"holds", holds},
                {"classification", lucas::to_string(classification)},
                {"detail", detail}};
    }

    static VerifyRecord from_raw(const RawRecord& raw) {
        return {detail::raw_field(raw, "suite"), detail::raw_field(raw, "case"), detail::raw_bool(raw, "holds"),
                parse_classification(detail::raw_field(raw, "classification")), detail::raw_field(raw, "detail")};
    }
};

struct VerifySummary {
    std::uint64_t checks = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::uint64_t known_exceptions = 0;
    std::uint64_t skipped = 0;

    bool all_pass() const noexcept { return failed == 0; }

    /// The summary travels in the same schema as the per-case records.
    VerifyRecord as_record() const {
        return {"summary",
                "all",
                all_pass(),
                all_pass() ? Classification::pass : Classification::fail,
                "checks=" + std::to_string(checks) + " pass=" + std::to_string(passed) +
                    " fail=" + std::to_string(failed) + " known-exception=" + std::to_string(known_exceptions) +
                    " skipped=" + std::to_string(skipped)};
    }
};

struct VerifyReport {
    std::vector<VerifyRecord> records;
    VerifySummary summary;
};

struct config_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline const std::vector<std::string>& all_suite_names() {
    static const std::vector<std::string> names = {
        "addition", "doubling", "companion", "space",      "seeds", "catalan", "term_mod", "purity",
        "period",   "zero_ap",  "ladder",    "squares",    "cycle_entry", "repetition", "thm9", "thm10",
        "thm11",    "zeros",    "ean",       "gcd_companion", "thm6", "thm8", "period_step"};
    return names;
}

struct VerifyConfig {
    std::int64_t a_min = -5, a_max = 5;
    std::int64_t b_min = -5, b_max = 5;
    std::set<std::string> suites{all_suite_names().begin(), all_suite_names().end()};

    std::uint64_t index_max = 40;
    std::uint64_t doubling_max = 64;
    std::int64_t space_coeff = 3;
    std::uint64_t space_shift = 5;
    std::uint64_t space_n_max = 30;
    std::int64_t seed_max = 3;
    std::uint64_t m_max = 50;
    std::uint64_t purity_m_max = 100;
    std::uint64_t term_mod_n_max = 200;
    std::vector<std::uint64_t> ladder_primes{2, 3, 5, 7, 11, 13};
    unsigned ladder_e_max = 3;
    std::vector<std::uint64_t> squares_primes{3, 5, 7};
    unsigned squares_e_max = 2;
    std::uint64_t repetition_p_max = 37;
    std::uint64_t thm9_n_max = 8, thm9_m_max = 30;
    std::uint64_t thm10_n_max = 6, thm10_k_max = 2;
    std::uint64_t thm11_a_max = 15, thm11_b_max = 60;
    std::vector<std::uint64_t> zeros_bases{2, 10};
    std::uint64_t zeros_n_max = 200;
    std::uint64_t ean_a_max = 8, ean_n_max = 12;
    std::uint64_t gcd_n_max = 30;
    std::vector<std::uint64_t> thm6_primes{3, 5, 7, 11, 13};
    std::uint64_t thm6_e_max = 2, thm6_multiples = 3;
    std::uint64_t thm8_p_max = 9, thm8_n_max = 15;
    std::uint64_t step_a_max = 6, step_n_max = 12;

    std::uint64_t state_budget = default_state_budget;
    double digit_budget = default_digit_budget;
    unsigned jobs = 1;

    std::vector<RecurrenceParams> grid() const {
        std::vector<RecurrenceParams> out;
        for (std::int64_t a = a_min; a <= a_max; ++a) {
            for (std::int64_t b = b_min; b <= b_max; ++b) {
                if (b != 0) {
                    out.emplace_back(a, b);
                }
            }
        }
        return out;
    }

    /// Flat `key = value` lines; `#` starts a comment. Unknown keys are errors.
    static VerifyConfig parse(std::istream& in) {
        VerifyConfig c;
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (const auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            const auto trim = [](std::string s) {
                const auto b = s.find_first_not_of(" \t\r");
                const auto e = s.find_last_not_of(" \t\r");
                return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            };
            line = trim(line);
            if (line.empty()) {
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw config_error("line " + std::to_string(line_no) + ": expected key = value");
            }
            c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
        }
        return c;
    }

    static VerifyConfig parse_string(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

private:
    void set(const std::string& key, const std::string& value, int line_no) {
        const auto fail = [&](const std::string& why) {
            throw config_error("line " + std::to_string(line_no) + ": " + key + ": " + why);
        };
        const auto to_int = [&](const std::string& s) -> std::int64_t {
            try {
                std::size_t pos = 0;
                const long long v = std::stoll(s, &pos);
                if (pos != s.size()) {
                    fail("not an integer: " + s);
                }
                return v;
            } catch (const std::logic_error&) {
                fail("not an integer: " + s);
            }
            return 0;
        };
        const auto to_uint = [&](const std::string& s) -> std::uint64_t {
            const std::int64_t v = to_int(s);
            if (v < 0) {
                fail("must be nonnegative");
            }
            return static_cast<std::uint64_t>(v);
        };
        const auto to_list = [&](const std::string& s) {
            std::vector<std::uint64_t> out;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (!item.empty()) {
                    out.push_back(to_uint(item));
                }
            }
            return out;
        };

        static const std::map<std::string, std::uint64_t VerifyConfig::*> uints = {
            {"index_max", &VerifyConfig::index_max},
            {"doubling_max", &VerifyConfig::doubling_max},
            {"space_shift", &VerifyConfig::space_shift},
            {"space_n_max", &VerifyConfig::space_n_max},
            {"m_max", &VerifyConfig::m_max},
            {"purity_m_max", &VerifyConfig::purity_m_max},
            {"term_mod_n_max", &VerifyConfig::term_mod_n_max},
            {"repetition_p_max", &VerifyConfig::repetition_p_max},
            {"thm9_n_max", &VerifyConfig::thm9_n_max},
            {"thm9_m_max", &VerifyConfig::thm9_m_max},
            {"thm10_n_max", &VerifyConfig::thm10_n_max},
            {"thm10_k_max", &VerifyConfig::thm10_k_max},
            {"thm11_a_max", &VerifyConfig::thm11_a_max},
            {"thm11_b_max", &VerifyConfig::thm11_b_max},
            {"zeros_n_max", &VerifyConfig::zeros_n_max},
            {"ean_a_max", &VerifyConfig::ean_a_max},
            {"ean_n_max", &VerifyConfig::ean_n_max},
            {"gcd_n_max", &VerifyConfig::gcd_n_max},
            {"thm6_e_max", &VerifyConfig::thm6_e_max},
            {"thm6_multiples", &VerifyConfig::thm6_multiples},
            {"thm8_p_max", &VerifyConfig::thm8_p_max},
            {"thm8_n_max", &VerifyConfig::thm8_n_max},
            {"step_a_max", &VerifyConfig::step_a_max},
            {"step_n_max", &VerifyConfig::step_n_max},
            {"state_budget", &VerifyConfig::state_budget},
        };
        static const std::map<std::string, std::vector<std::uint64_t> VerifyConfig::*> lists = {
            {"ladder_primes", &VerifyConfig::ladder_primes},
            {"squares_primes", &VerifyConfig::squares_primes},
            {"zeros_bases", &VerifyConfig::zeros_bases},
            {"thm6_primes", &VerifyConfig::thm6_primes},
        };

        if (const auto it = uints.find(key); it != uints.end()) {
            this->*(it->second) = to_uint(value);
        } else if (const auto lt = lists.find(key); lt != lists.end()) {
            this->*(lt->second) = to_list(value);
        } else if (key == "a_min") {
            a_min = to_int(value);
        } else if (key == "a_max") {
            a_max = to_int(value);
        } else if (key == "b_min") {
            b_min = to_int(value);
        } else if (key == "b_max") {
            b_max = to_int(value);
        } else if (key == "space_coeff") {
            space_coeff = to_int(value);
        } else if (key == "seed_max") {
            seed_max = to_int(value);
        } else if (key == "ladder_e_max") {
            ladder_e_max = static_cast<unsigned>(to_uint(value));
        } else if (key == "squares_e_max") {
            squares_e_max = static_cast<unsigned>(to_uint(value));
        } else if (key == "jobs") {
            jobs = static_cast<unsigned>(std::max<std::uint64_t>(1, to_uint(value)));
        } else if (key == "digit_budget") {
            try {
                digit_budget = std::stod(value);
            } catch (const std::logic_error&) {
                fail("not a number: " + value);
            }
        } else if (key == "suites") {
            suites.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item == "all") {
                    suites.insert(all_suite_names().begin(), all_suite_names().end());
                } else if (std::find(all_suite_names().begin(), all_suite_names().end(), item) ==
                           all_suite_names().end()) {
                    fail("unknown suite '" + item + "'");
                } else {
                    suites.insert(item);
                }
            }
        } else {
            fail("unknown key");
        }
    }
};

namespace detail {

/// Records from one (suite, parameters) evaluation plus its skipped count.
struct CaseBatch {
    std::vector<VerifyRecord> records;
    std::uint64_t skipped = 0;

    void add(std::string suite, std::string name, bool holds, std::string detail,
             bool exception_if_failed = false) {
        const Classification c = holds                 ? Classification::pass
                                 : exception_if_failed ? Classification::known_exception
                                                       : Classification::fail;
        records.push_back({std::move(suite), std::move(name), holds, c, std::move(detail)});
    }
};

/// Independent oracle: straight iteration from (w0, w1).
inline std::vector<BigInt> naive_terms(const RecurrenceParams& params, std::uint64_t last, BigInt w0 = 0,
                                       BigInt w1 = 1) {
    std::vector<BigInt> s{std::move(w0), std::move(w1)};
    while (s.size() < last + 1) {
        const std::size_t k = s.size();
        s.push_back(static_cast<long>(params.A()) * s[k - 1] + static_cast<long>(params.B()) * s[k - 2]);
    }
    s.resize(last + 1);
    return s;
}

inline std::vector<BigInt> library_terms(const RecurrenceParams& params, std::uint64_t last) {
    std::vector<BigInt> out;
    out.reserve(last + 1);
    for (std::uint64_t i = 0; i <= last; ++i) {
        out.push_back(term(params, i));
    }
    return out;
}

inline BigInt mod_of(const BigInt& x, std::uint64_t m) {
    BigInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), m);
    return r;
}

inline std::uint64_t ladder_modulus(std::uint64_t p, unsigned e) { return *checked_pow(p, e); }

using SuiteFn = std::function<void(const VerifyConfig&, const RecurrenceParams&, CaseBatch&)>;

inline void suite_addition(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    const std::uint64_t n_max = c.index_max;
    const auto e = library_terms(pr, 2 * n_max + 1);
    const long b = static_cast<long>(pr.B());
    std::uint64_t count = 0;
    for (std::uint64_t n = 0; n <= n_max; ++n) {
        for (std::uint64_t t = 1; t <= n_max; ++t, ++count) {
            if (e[n + t] != e[n + 1] * e[t] + b * e[n] * e[t - 1]) {
                out.add("addition", pr.to_string(), false,
                        "e(n+t) != e(n+1)e(t) + B e(n)e(t-1) at n=" + std::to_string(n) + " t=" + std::to_string(t));
                return;
            }
        }
    }
    out.add("addition", pr.to_string(), true, std::to_string(count) + " identities");
}

inline void suite_doubling(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    const auto naive = naive_terms(pr, c.doubling_max + 1);
    for (std::uint64_t n = 0; n <= c.doubling_max; ++n) {
        const auto [x, y] = term_pair_fast(pr, n);
        if (x != naive[n] || y != naive[n + 1]) {
            out.add("doubling", pr.to_string(), false, "pair mismatch at n=" + std::to_string(n));
            return;
        }
    }
    out.add("doubling", pr.to_string(), true, "n<=" + std::to_string(c.doubling_max));
}

inline void suite_companion(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    std::vector<BigInt> v;
    for (std::uint64_t n = 0; n <= c.index_max; ++n) {
        v.push_back(companion(pr, n));
    }
    bool ok = v[0] == 2 && v[1] == static_cast<long>(pr.A());
    std::uint64_t bad = ok ? 0 : 1;
    for (std::uint64_t n = 2; ok && n <= c.index_max; ++n) {
        ok = v[n] == static_cast<long>(pr.A()) * v[n - 1] + static_cast<long>(pr.B()) * v[n - 2];
        bad = n;
    }
    out.add("companion", pr.to_string(), ok, ok ? "v(0)=2, v(1)=A, recurrence holds" : "fails at n=" + std::to_string(bad));
}

inline void suite_space(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    const auto e = library_terms(pr, c.space_n_max + c.space_shift);
    const long a = static_cast<long>(pr.A());
    const long b = static_cast<long>(pr.B());
    for (std::int64_t r = -c.space_coeff; r <= c.space_coeff; ++r) {
        for (std::int64_t s = -c.space_coeff; s <= c.space_coeff; ++s) {
            for (std::uint64_t p = 0; p <= c.space_shift; ++p) {
                for (std::uint64_t q = 0; q <= c.space_shift; ++q) {
                    auto w = [&](std::uint64_t n) { return BigInt(static_cast<long>(r) * e[n + p] + static_cast<long>(s) * e[n + q]); };
                    for (std::uint64_t n = 2; n <= c.space_n_max; ++n) {
                        if (w(n) != a * w(n - 1) + b * w(n - 2)) {
                            out.add("space", pr.to_string(), false,
                                    "R=" + std::to_string(r) + " S=" + std::to_string(s) + " p=" + std::to_string(p) +
                                        " q=" + std::to_string(q) + " n=" + std::to_string(n));
                            return;
                        }
                    }
                }
            }
        }
    }
    out.add("space", pr.to_string(), true, "R e(n+p) + S e(n+q) closed under the recurrence");
}

inline void suite_seeds(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    for (std::int64_t w0 = -c.seed_max; w0 <= c.seed_max; ++w0) {
        for (std::int64_t w1 = -c.seed_max; w1 <= c.seed_max; ++w1) {
            const auto naive = naive_terms(pr, c.index_max, static_cast<long>(w0), static_cast<long>(w1));
            for (std::uint64_t n = 0; n <= c.index_max; ++n) {
                if (general_from_seeds(pr, static_cast<long>(w0), static_cast<long>(w1), n) != naive[n]) {
                    out.add("seeds", pr.to_string(), false,
                            "w0=" + std::to_string(w0) + " w1=" + std::to_string(w1) + " n=" + std::to_string(n));
                    return;
                }
            }
        }
    }
    out.add("seeds", pr.to_string(), true, "matches iteration from every seed pair");
}

inline void suite_catalan(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    const BigInt abs_b = std::abs(pr.B());
    for (std::uint64_t n = 1; n <= c.index_max; ++n) {
        const BigInt v = catalan_value(pr, n);
        if (v != catalan_closed_form(pr, n) || abs(v) != ipow(abs_b, n - 1)) {
            out.add("catalan", pr.to_string(), false, "e(n+1)e(n-1)-e(n)^2 != -(-B)^(n-1) at n=" + std::to_string(n));
            return;
        }
    }
    out.add("catalan", pr.to_string(), true, "e(n+1)e(n-1)-e(n)^2 = -(-B)^(n-1)");
}

inline void suite_term_mod(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    const auto e = library_terms(pr, c.term_mod_n_max);
    for (std::uint64_t m = 2; m <= c.m_max; ++m) {
        for (std::uint64_t n = 0; n <= c.term_mod_n_max; ++n) {
            if (BigInt(static_cast<unsigned long>(term_mod(pr, n, m))) != mod_of(e[n], m)) {
                out.add("term_mod", pr.to_string(), false, "m=" + std::to_string(m) + " n=" + std::to_string(n));
                return;
            }
        }
    }
    out.add("term_mod", pr.to_string(), true, "m<=" + std::to_string(c.m_max));
}

inline void suite_purity(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    for (std::uint64_t m = 2; m <= c.purity_m_max; ++m) {
        try {
            const auto cs = cycle_structure(pr, m, c.state_budget);
            const bool coprime = gcd_B(pr, m) == 1;
            // Periodicity from tail_len on, checked directly.
            const PairStepper step(pr, m);
            auto x = step.seed();
            for (std::uint64_t i = 0; i < cs.tail_len; ++i) {
                x = step(x);
            }
            auto y = x;
            for (std::uint64_t i = 0; i < cs.cycle_len; ++i) {
                y = step(y);
            }
            if (cs.pure != coprime || x != y) {
                out.add("purity", pr.to_string(), false, "m=" + std::to_string(m));
                return;
            }
        } catch (const std::logic_error& e) {
            out.add("purity", pr.to_string(), false, e.what());
            return;
        }
    }
    out.add("purity", pr.to_string(), true, "pure <=> gcd(B,m)=1 for m<=" + std::to_string(c.purity_m_max));
}

inline void suite_period(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    std::uint64_t checked = 0;
    for (std::uint64_t m = 2; m <= c.m_max; ++m) {
        if (gcd_B(pr, m) != 1) {
            continue;
        }
        const auto cs = cycle_structure(pr, m, c.state_budget);
        const std::uint64_t k = period(pr, m, c.state_budget);
        std::uint64_t first_return = 0;
        for (std::uint64_t j = 1; j <= cs.cycle_len; ++j) {
            if (term_mod(pr, j, m) == 0 && term_mod(pr, j + 1, m) == 1) {
                first_return = j;
                break;
            }
        }
        const auto r = rank(pr, m, c.state_budget);
        const bool ok = k == cs.cycle_len && k == first_return && r.alpha && k % *r.alpha == 0;
        if (!ok) {
            out.add("period", pr.to_string(), false, "m=" + std::to_string(m));
            return;
        }
        ++checked;
    }
    out.add("period", pr.to_string(), true, std::to_string(checked) + " moduli: k(m)=cycle_len, alpha | k(m)");
}

inline void suite_zero_ap(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    for (std::uint64_t m = 2; m <= c.m_max; ++m) {
        if (gcd_B(pr, m) != 1) {
            continue;
        }
        const auto k = period(pr, m, c.state_budget);
        const auto z = zero_indices_check(pr, m, 4 * k);
        if (!z.holds) {
            out.add("zero_ap", pr.to_string(), false,
                    "m=" + std::to_string(m) + " first violation n=" + std::to_string(*z.first_violation));
            return;
        }
    }
    out.add("zero_ap", pr.to_string(), true, "zeros are multiples of alpha up to 4 periods");
}

inline std::string ladder_text(const PeriodLawReport& r) {
    std::string s;
    for (const auto& rung : r.ladder) {
        s += (s.empty() ? "" : ",") + std::to_string(rung.period);
    }
    return "ladder=[" + s + "] t=" + std::to_string(r.t);
}

inline void suite_ladder(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    for (const auto p : c.ladder_primes) {
        if (pr.B() % static_cast<std::int64_t>(p) == 0) {
            ++out.skipped;
            continue;
        }
        const auto r = period_law_report(pr, p, c.ladder_e_max, c.state_budget);
        bool monotone = true;
        for (std::size_t i = 1; i < r.ladder.size(); ++i) {
            const auto lo = r.ladder[i - 1].period;
            const auto hi = r.ladder[i].period;
            monotone = monotone && (hi == lo || hi == p * lo);
        }
        const std::string name = pr.to_string() + " p=" + std::to_string(p);
        const bool holds = monotone && r.law_holds;
        // Only the law itself may fail as a p = 2 exception.
        out.add("ladder", name, holds, ladder_text(r) + (monotone ? "" : " non-monotone"), monotone && p == 2);
    }
}

inline void suite_squares(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    for (const auto p : c.squares_primes) {
        if (pr.B() % static_cast<std::int64_t>(p) == 0) {
            ++out.skipped;
            continue;
        }
        bool divides = true;
        for (unsigned e = 1; e <= c.squares_e_max; ++e) {
            const std::uint64_t m = ladder_modulus(p, e);
            divides = divides && period(pr, m, c.state_budget) % squares_period(pr, m, c.state_budget) == 0;
        }
        const auto r = squares_period_law_report(pr, p, c.squares_e_max, c.state_budget);
        out.add("squares", pr.to_string() + " p=" + std::to_string(p), divides && r.law_holds,
                ladder_text(r) + (divides ? "" : " squares period does not divide k"), divides && p == 2);
    }
}

inline void suite_cycle_entry(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    std::uint64_t applicable = 0, inapplicable = 0;
    for (std::uint64_t m = 2; m <= c.m_max; ++m) {
        if (gcd_B(pr, m) == 1) {
            continue;
        }
        const auto predicted = cycle_entry_prediction(pr, m);
        const auto observed = cycle_entry_observed(pr, m, c.state_budget);
        if (predicted != observed) {
            out.add("cycle_entry", pr.to_string(), false,
                    "m=" + std::to_string(m) + " predicted=" + (predicted ? std::to_string(*predicted) : "absent") +
                        " observed=" + (observed ? std::to_string(*observed) : "absent"));
            return;
        }
        (predicted ? applicable : inapplicable) += 1;
    }
    out.add("cycle_entry", pr.to_string(), true,
            std::to_string(applicable) + " predicted, " + std::to_string(inapplicable) + " inapplicable");
}

inline void suite_repetition(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    if (!pr.coprime_AB() || pr.has_exact_zero()) {
        ++out.skipped;
        return;
    }
    for (std::uint64_t p = 2; p <= c.repetition_p_max; ++p) {
        if (!is_prime(p)) {
            continue;
        }
        if (pr.B() % static_cast<std::int64_t>(p) == 0) {
            ++out.skipped;
            continue;
        }
        const auto r = repetition_law_check(pr, p, p * p * (p + 1));
        const bool growth = r.observed_next_rank && *r.observed_next_rank >= r.base_rank &&
                            *r.observed_next_rank % r.base_rank == 0;
        const std::string detail =
            "rank=" + std::to_string(r.base_rank) + " k=" + std::to_string(r.base_valuation) +
            " next=" + (r.observed_next_rank ? std::to_string(*r.observed_next_rank) : "none") +
            " nu(e(p*rank))=" + std::to_string(r.observed_valuation_at_pn);
        out.add("repetition", pr.to_string() + " p=" + std::to_string(p), r.holds && growth, detail,
                growth && r.known_exception);
    }
}

inline void suite_thm9(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    if (!pr.coprime_AB()) {
        ++out.skipped;
        return;
    }
    std::uint64_t checked = 0;
    for (std::uint64_t n = 1; n <= c.thm9_n_max; ++n) {
        if (abs(term(pr, n)) <= 1) {
            ++out.skipped;
            continue;
        }
        const auto v = thm9_check(pr, n, c.thm9_m_max);
        if (!v.holds) {
            out.add("thm9", pr.to_string(), false,
                    "n=" + std::to_string(n) + " m=" + std::to_string(*v.counterexample));
            return;
        }
        ++checked;
    }
    out.add("thm9", pr.to_string(), true, std::to_string(checked) + " values of n, m<=" + std::to_string(c.thm9_m_max));
}

inline void suite_thm10(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    if (!pr.coprime_AB()) {
        ++out.skipped;
        return;
    }
    std::uint64_t checked = 0;
    for (std::uint64_t n = 1; n <= c.thm10_n_max; ++n) {
        if (term(pr, n) == 0) {
            ++out.skipped;
            continue;
        }
        for (std::uint64_t k = 1; k <= c.thm10_k_max; ++k) {
            try {
                const auto v = thm10_check(pr, n, k, c.digit_budget);
                if (!v.holds) {
                    out.add("thm10", pr.to_string(), false, "n=" + std::to_string(n) + " k=" + std::to_string(k));
                    return;
                }
                ++checked;
            } catch (const budget_exceeded&) {
                ++out.skipped;
                break;
            }
        }
    }
    out.add("thm10", pr.to_string(), true, std::to_string(checked) + " (n,k) within budget");
}

inline void suite_thm11(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    if (!pr.coprime_AB()) {
        ++out.skipped;
        return;
    }
    const auto r = thm11_check(pr, c.thm11_a_max, c.thm11_b_max);
    std::string degenerate;
    for (auto a : r.degenerate) {
        degenerate += (degenerate.empty() ? "" : ",") + std::to_string(a);
    }
    std::string detail = "degenerate={" + degenerate + "}";
    if (!r.holds) {
        detail += " counterexamples=" + std::to_string(r.counterexamples.size()) + " first (a,b)=(" +
                  std::to_string(r.counterexamples.front().first) + "," +
                  std::to_string(r.counterexamples.front().second) + ")";
    }
    out.add("thm11", pr.to_string(), r.holds, detail);
}

inline void suite_zeros(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    if (pr.has_exact_zero()) {
        ++out.skipped;
        return;
    }
    for (const auto base : c.zeros_bases) {
        const auto r = bound_check(pr, base, c.zeros_n_max);
        std::ostringstream detail;
        detail << "max z(n)/log2(n)=" << r.max_ratio << " at n=" << r.max_ratio_at;
        out.add("zeros", pr.to_string() + " base=" + std::to_string(base),
                r.counts_agree && std::isfinite(r.max_ratio), detail.str());
    }
}

inline void suite_ean(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    for (std::uint64_t a = 1; a <= c.ean_a_max; ++a) {
        for (std::uint64_t n = 1; n <= c.ean_n_max; ++n) {
            if (!ean_expansion_check(pr, a, n).holds) {
                out.add("ean", pr.to_string(), false, "a=" + std::to_string(a) + " n=" + std::to_string(n));
                return;
            }
        }
    }
    out.add("ean", pr.to_string(), true, "binomial expansion of e(an) exact");
}

inline void suite_gcd_companion(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    if (!pr.coprime_AB()) {
        ++out.skipped;
        return;
    }
    const auto v = gcd_companion_check(pr, c.gcd_n_max);
    out.add("gcd_companion", pr.to_string(), v.holds,
            v.holds ? "gcd(v(n),e(n)) in {1,2}" : "fails at n=" + std::to_string(*v.counterexample));
}

inline void suite_thm6(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    for (const auto p : c.thm6_primes) {
        if (pr.B() % static_cast<std::int64_t>(p) == 0) {
            ++out.skipped;
            continue;
        }
        std::uint64_t checked = 0;
        std::string failure;
        for (std::uint64_t e = 1; e <= c.thm6_e_max && failure.empty(); ++e) {
            const auto r = rank(pr, ladder_modulus(p, static_cast<unsigned>(e)), c.state_budget);
            for (std::uint64_t j = 1; j <= c.thm6_multiples && failure.empty(); ++j) {
                const auto res = thm6_congruence_check(pr, p, e, j * *r.alpha);
                if (!res.holds) {
                    failure = res.context;
                }
                ++checked;
            }
        }
        out.add("thm6", pr.to_string() + " p=" + std::to_string(p), failure.empty(),
                failure.empty() ? std::to_string(checked) + " instances" : failure);
    }
}

inline void suite_thm8(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    for (std::uint64_t p = 3; p <= c.thm8_p_max; p += 2) {
        for (std::uint64_t n = 1; n <= c.thm8_n_max; ++n) {
            const auto res = thm8_identity_check(pr, p, n);
            if (!res.holds) {
                out.add("thm8", pr.to_string(), false, res.context);
                return;
            }
        }
    }
    out.add("thm8", pr.to_string(), true, "odd p<=" + std::to_string(c.thm8_p_max));
}

inline void suite_period_step(const VerifyConfig& c, const RecurrenceParams& pr, CaseBatch& out) {
    std::uint64_t checked = 0;
    for (std::uint64_t n = 1; n <= c.step_n_max; ++n) {
        if (abs(term(pr, n)) <= 1) {
            ++out.skipped;
            continue;
        }
        for (std::uint64_t a = 1; a <= c.step_a_max; ++a) {
            const auto res = period_step_congruence(pr, a, n);
            if (!res.holds) {
                out.add("period_step", pr.to_string(), false, res.context);
                return;
            }
            ++checked;
        }
    }
    out.add("period_step", pr.to_string(), true, std::to_string(checked) + " instances");
}

inline const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"addition", suite_addition},       {"doubling", suite_doubling},
        {"companion", suite_companion},     {"space", suite_space},
        {"seeds", suite_seeds},             {"catalan", suite_catalan},
        {"term_mod", suite_term_mod},       {"purity", suite_purity},
        {"period", suite_period},           {"zero_ap", suite_zero_ap},
        {"ladder", suite_ladder},           {"squares", suite_squares},
        {"cycle_entry", suite_cycle_entry}, {"repetition", suite_repetition},
        {"thm9", suite_thm9},               {"thm10", suite_thm10},
        {"thm11", suite_thm11},             {"zeros", suite_zeros},
        {"ean", suite_ean},                 {"gcd_companion", suite_gcd_companion},
        {"thm6", suite_thm6},               {"thm8", suite_thm8},
        {"period_step", suite_period_step},
    };
    return table;
}

} // namespace detail

/// Runs the enabled suites over the grid. Records come out in suite order,
/// then grid order, independent of `jobs`.
inline VerifyReport verify_suite(const VerifyConfig& config) {
    const auto grid = config.grid();
    VerifyReport report;
    for (const auto& [name, fn] : detail::suite_table()) {
        if (!config.suites.contains(name)) {
            continue;
        }
        const auto batches = ordered_parallel_map(grid.size(), config.jobs, [&](std::size_t i) {
            detail::CaseBatch batch;
            try {
                fn(config, grid[i], batch);
            } catch (const budget_exceeded&) {
                ++batch.skipped;
            } catch (const std::exception& e) {
                batch.add(name, grid[i].to_string(), false, std::string("error: ") + e.what());
            }
            return batch;
        });
        for (const auto& b : batches) {
            report.summary.skipped += b.skipped;
            for (const auto& r : b.records) {
                report.records.push_back(r);
            }
        }
    }
    for (const auto& r : report.records) {
        ++report.summary.checks;
        switch (r.classification) {
        case Classification::pass:
            ++report.summary.passed;
            break;
        case Classification::fail:
            ++report.summary.failed;
            break;
        case Classification::known_exception:
            ++report.summary.known_exceptions;
            break;
        }
    }
    return report;
}

inline void write_verify_report(const VerifyReport& report, std::ostream& out, Format format) {
    RecordWriter writer(out, format);
    for (const auto& r : report.records) {
        writer.write(r.to_record());
    }
    writer.write(report.summary.as_record().to_record());
}

} // namespace lucas
