// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Tolerances (runtime limits, exact-match requirements) are
// pinned below; nothing is relaxed to make a line pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lucas/lucas.hpp"
#include "oracle.hpp"

using lucas::BigInt;
using lucas::RecurrenceParams;

namespace {

constexpr double limit_addition_s = 10.0;
constexpr double limit_period_law_s = 60.0;
constexpr double limit_wss_s = 120.0;

struct Outcome {
    bool pass;
    std::string detail;
};

std::vector<RecurrenceParams> grid() {
    std::vector<RecurrenceParams> out;
    for (int a = -5; a <= 5; ++a) {
        for (int b = -5; b <= 5; ++b) {
            if (b != 0) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

std::vector<RecurrenceParams> coprime_grid() {
    std::vector<RecurrenceParams> out;
    for (const auto& p : grid()) {
        if (p.coprime_AB()) {
            out.push_back(p);
        }
    }
    return out;
}

bool divisible(std::int64_t b, std::uint64_t p) { return b % static_cast<std::int64_t>(p) == 0; }

// Collects failures; keeps the first few for the report line.
class Failures {
public:
    void add(const std::string& what) {
        if (count_++ < 3) {
            first_ += (first_.empty() ? "" : "; ") + what;
        }
    }
    std::size_t count() const { return count_; }
    std::string summary() const {
        return std::to_string(count_) + " failures" + (first_.empty() ? "" : " [first: " + first_ + "]");
    }

private:
    std::size_t count_ = 0;
    std::string first_;
};

std::string seconds(double s) {
    std::ostringstream o;
    o.precision(2);
    o << std::fixed << s << " s";
    return o.str();
}

Outcome addition_identity(double& elapsed) {
    const auto t0 = std::chrono::steady_clock::now();
    Failures f;
    std::size_t params = 0;
    for (const auto& p : grid()) {
        ++params;
        std::vector<BigInt> e;
        for (std::uint64_t i = 0; i <= 81; ++i) {
            e.push_back(lucas::term(p, i));
        }
        for (std::uint64_t n = 0; n <= 40; ++n) {
            for (std::uint64_t t = 1; t <= 40; ++t) {
                if (e[n + t] != e[n + 1] * e[t] + p.B() * e[n] * e[t - 1]) {
                    f.add(p.to_string() + " n=" + std::to_string(n) + " t=" + std::to_string(t));
                }
            }
        }
        // The terms themselves are checked against plain iteration.
        const auto naive = oracle::sequence(p.A(), p.B(), 81);
        for (std::uint64_t i = 0; i <= 81; ++i) {
            if (naive[i] != e[i]) {
                f.add(p.to_string() + " term " + std::to_string(i));
            }
        }
    }
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = f.count() == 0 && elapsed < limit_addition_s;
    return {pass, std::to_string(params) + " params, n,t <= 40, " + f.summary() + ", " + seconds(elapsed) +
                      " (limit " + seconds(limit_addition_s) + ")"};
}

Outcome zero_index_ap() {
    Failures f;
    std::size_t cases = 0;
    for (const auto& p : grid()) {
        for (std::uint64_t m = 2; m <= 50; ++m) {
            if (lucas::gcd_B(p, m) != 1) {
                continue;
            }
            ++cases;
            const auto k = lucas::cycle_structure(p, m).cycle_len;
            const auto r = lucas::zero_indices_check(p, m, 4 * k);
            if (!r.holds || !r.alpha) {
                f.add(p.to_string() + " m=" + std::to_string(m));
            }
        }
    }
    return {f.count() == 0, std::to_string(cases) + " (params, m) cases, " + f.summary()};
}

Outcome repetition_law() {
    Failures f;
    std::size_t cases = 0, degenerate = 0;
    for (const auto& p : coprime_grid()) {
        if (p.has_exact_zero()) {
            ++degenerate;
            continue;
        }
        for (std::uint64_t q = 3; q <= 37; q += 2) {
            if (!lucas::is_prime(q) || divisible(p.B(), q)) {
                continue;
            }
            ++cases;
            const auto r = lucas::repetition_law_check(p, q, q * q * (q + 1));
            if (!r.holds || r.predicted_next_rank != q * r.base_rank) {
                f.add(p.to_string() + " p=" + std::to_string(q));
            }
        }
    }
    const auto fib2 = lucas::repetition_law_check(lucas::fibonacci(), 2, 100);
    const auto v = lucas::valuation(oracle::e(1, 1, 6), 2);
    const bool exception_ok = !fib2.holds && fib2.known_exception && fib2.observed_valuation_at_pn == 3 &&
                              v == lucas::Valuation::finite(3);
    return {f.count() == 0 && exception_ok,
            std::to_string(cases) + " odd-prime cases (" + std::to_string(degenerate) +
                " params with an exact zero term skipped), " + f.summary() +
                "; Fibonacci p=2 known exception: " + (exception_ok ? "yes" : "no") + " (nu2(F6)=" +
                std::to_string(fib2.observed_valuation_at_pn) + ")"};
}

Outcome spot_values() {
    Failures f;
    const auto fib = lucas::fibonacci();
    const auto pell = lucas::pell();
    const auto expect = [&](bool ok, const std::string& what) {
        if (!ok) {
            f.add(what);
        }
    };
    expect(lucas::period(fib, 10) == 60 && oracle::period(1, 1, 10) == 60, "k(10)=60");
    expect(lucas::period(fib, 100) == 300 && oracle::period(1, 1, 100) == 300, "k(100)=300");
    expect(lucas::rank(fib, 10).alpha == 15U && oracle::rank(1, 1, 10) == 15U, "alpha(10)=15");
    const BigInt f25 = lucas::term(fib, 25);
    expect(f25 == oracle::e(1, 1, 25) && f25 % 25 == 0 && f25 % 125 != 0, "25 || F(25)");
    expect(lucas::period(pell, 3) == 8 && oracle::period(2, 1, 3) == 8, "Pell k(3)=8");
    expect(lucas::rank(pell, 3).alpha == 4U && oracle::rank(2, 1, 3) == 4U, "Pell alpha(3)=4");
    expect(lucas::term(pell, 7) == 169 && oracle::e(2, 1, 7) == 169 && BigInt(13 * 13) == 169, "Pell e(7)=169");
    return {f.count() == 0, "7 spot values, " + f.summary()};
}

Outcome period_law(double& elapsed) {
    const auto t0 = std::chrono::steady_clock::now();
    Failures f;
    std::size_t cases = 0;
    std::set<std::uint64_t> failing_primes;
    auto params = grid();
    params.push_back(lucas::fibonacci());
    params.push_back(lucas::pell());
    for (const auto& p : params) {
        for (const std::uint64_t q : {2U, 3U, 5U, 7U, 11U, 13U}) {
            if (divisible(p.B(), q)) {
                continue;
            }
            ++cases;
            const auto r = lucas::period_law_report(p, q, 3);
            if (!r.law_holds) {
                failing_primes.insert(q);
                std::string ladder;
                for (const auto& rung : r.ladder) {
                    ladder += (ladder.empty() ? "" : ",") + std::to_string(rung.period);
                }
                f.add(p.to_string() + " p=" + std::to_string(q) + " ladder " + ladder);
            }
        }
    }
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string primes;
    for (const auto q : failing_primes) {
        primes += (primes.empty() ? "" : ",") + std::to_string(q);
    }
    return {f.count() == 0 && elapsed < limit_period_law_s,
            std::to_string(cases) + " ladders, " + f.summary() +
                (primes.empty() ? "" : " (failing primes: " + primes + ")") + ", " + seconds(elapsed) + " (limit " +
                seconds(limit_period_law_s) + ")"};
}

Outcome squares_law() {
    Failures f;
    std::size_t ladders = 0, identities = 0;
    for (const auto& p : grid()) {
        for (const std::uint64_t q : {3U, 5U, 7U}) {
            if (divisible(p.B(), q)) {
                continue;
            }
            ++ladders;
            if (!lucas::squares_period_law_report(p, q, 2).law_holds) {
                f.add("squares " + p.to_string() + " p=" + std::to_string(q));
            }
        }
        for (std::uint64_t q = 3; q <= 9; q += 2) {
            for (std::uint64_t n = 1; n <= 15; ++n) {
                ++identities;
                if (!lucas::thm8_identity_check(p, q, n).holds) {
                    f.add("determinant " + p.to_string() + " p=" + std::to_string(q) + " n=" + std::to_string(n));
                }
            }
        }
    }
    return {f.count() == 0, std::to_string(ladders) + " squares ladders, " + std::to_string(identities) +
                                " determinant identities, " + f.summary()};
}

Outcome congruences() {
    Failures f;
    std::size_t cases = 0;
    for (const auto& p : grid()) {
        for (const std::uint64_t q : {3U, 5U, 7U, 11U, 13U}) {
            if (divisible(p.B(), q)) {
                continue;
            }
            for (unsigned e = 1; e <= 2; ++e) {
                const std::uint64_t m = *lucas::checked_pow(q, e);
                const auto alpha = lucas::rank(p, m).alpha;
                if (!alpha) {
                    f.add(p.to_string() + " no rank mod " + std::to_string(m));
                    continue;
                }
                for (std::uint64_t j = 1; j <= 3; ++j) {
                    ++cases;
                    const auto r = lucas::thm6_congruence_check(p, q, e, j * *alpha);
                    if (!r.holds) {
                        f.add(r.context);
                    }
                }
            }
        }
    }
    const auto fib = lucas::thm6_congruence_check(lucas::fibonacci(), 5, 1, 5);
    const bool fib_ok = fib.holds && fib.lhs == 24 && fib.rhs == 24 && oracle::mod(oracle::e(1, 1, 26) *
                                                                                      oracle::e(1, 1, 24), 25) == 24;
    const auto pell = lucas::thm6_congruence_check(lucas::pell(), 3, 1, 4);
    const bool pell_ok = pell.holds && pell.lhs == 1 && pell.rhs == 1 &&
                         oracle::mod(oracle::e(2, 1, 13) * oracle::e(2, 1, 11), 9) == 1;
    if (!fib_ok) {
        f.add("F(26)F(24) mod 25");
    }
    if (!pell_ok) {
        f.add("Pell mod 9");
    }
    return {f.count() == 0, std::to_string(cases) + " scanned (p,e,n) instances + 2 worked values, " + f.summary()};
}

Outcome ean_expansion() {
    Failures f;
    std::size_t cases = 0;
    for (const auto& p : grid()) {
        for (std::uint64_t a = 1; a <= 8; ++a) {
            for (std::uint64_t n = 1; n <= 12; ++n) {
                ++cases;
                if (!lucas::ean_expansion_check(p, a, n).holds) {
                    f.add(p.to_string() + " a=" + std::to_string(a) + " n=" + std::to_string(n));
                }
            }
        }
    }
    return {f.count() == 0, std::to_string(cases) + " exact identities, " + f.summary()};
}

Outcome divisibility() {
    Failures f;
    std::size_t thm9 = 0, thm10 = 0, thm10_budget = 0, thm11 = 0, exempt_n = 0, exempt_a = 0;
    for (const auto& p : coprime_grid()) {
        for (std::uint64_t n = 1; n <= 8; ++n) {
            if (abs(lucas::term(p, n)) <= 1) {
                ++exempt_n;
                continue;
            }
            ++thm9;
            if (const auto v = lucas::thm9_check(p, n, 30); !v.holds) {
                f.add("thm9 " + p.to_string() + " n=" + std::to_string(n) + " m=" + std::to_string(*v.counterexample));
            }
            if (n <= 6) {
                try {
                    const auto v10 = lucas::thm10_check(p, n, 2);
                    ++thm10;
                    if (!v10.holds) {
                        f.add("thm10 " + p.to_string() + " n=" + std::to_string(n));
                    }
                } catch (const lucas::budget_exceeded&) {
                    ++thm10_budget;
                }
            }
        }
        ++thm11;
        const auto r = lucas::thm11_check(p, 15, 60);
        exempt_a += r.degenerate.size();
        for (const auto& [a, b] : r.counterexamples) {
            f.add("thm11 " + p.to_string() + " e(" + std::to_string(a) + ")" +
                  (b % a == 0 ? " does not divide " : " divides ") + "e(" + std::to_string(b) + ")");
        }
    }
    return {f.count() == 0, std::to_string(thm9) + " thm9 sweeps, " + std::to_string(thm10) + " thm10 sweeps (" +
                                std::to_string(thm10_budget) + " beyond index budget), " + std::to_string(thm11) +
                                " thm11 boxes; exempt |e|<=1: " + std::to_string(exempt_n) + " n, " +
                                std::to_string(exempt_a) + " a; " + f.summary()};
}

Outcome trailing_zeros() {
    const auto z150 = lucas::trailing_zeros(lucas::fibonacci(), 150, 10);
    const auto r = lucas::bound_check(lucas::fibonacci(), 10, 2000);
    bool samples_match = r.samples.size() == 1999;
    // Digit stripping against the exact oracle terms, independently of the library.
    const auto e = oracle::sequence(1, 1, 2000);
    for (const auto& s : r.samples) {
        mpz_class x = e[s.n];
        std::uint64_t z = 0;
        while (x % 10 == 0) {
            x /= 10;
            ++z;
        }
        samples_match = samples_match && z == s.zeros;
    }
    const bool finite = std::isfinite(r.max_ratio);
    std::ostringstream ratio;
    ratio << r.max_ratio;
    return {z150 == 2 && finite && r.counts_agree && samples_match,
            "z(150)=" + std::to_string(z150) + ", max z(n)/log2(n) over n<=2000 = " + ratio.str() + " at n=" +
                std::to_string(r.max_ratio_at) + ", digit/valuation counts agree: " +
                (r.counts_agree && samples_match ? "yes" : "no")};
}

Outcome wss(double& elapsed) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto jobs = lucas::default_jobs();
    const auto fib = lucas::wss_scan(lucas::fibonacci(), 9999, lucas::default_state_budget, jobs);
    const auto pell = lucas::wss_scan(lucas::pell(), 49, lucas::default_state_budget, jobs);
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string pell_primes;
    std::set<std::uint64_t> found;
    for (const auto& w : pell) {
        pell_primes += (pell_primes.empty() ? "" : ",") + std::to_string(w.p) + " (k=" + std::to_string(w.k_p) + ")";
        found.insert(w.p);
    }
    const bool pass = fib.empty() && found == std::set<std::uint64_t>{13} && elapsed < limit_wss_s;
    return {pass, "Fibonacci p<10^4: " + std::to_string(fib.size()) + " primes; Pell p<50: {" + pell_primes +
                      "} (required exactly {13}), " + seconds(elapsed) + " (limit " + seconds(limit_wss_s) + ")"};
}

Outcome cycle_entry() {
    Failures f;
    std::size_t applicable = 0, inapplicable = 0;
    for (const auto& p : grid()) {
        for (std::uint64_t m = 2; m <= 50; ++m) {
            if (lucas::gcd_B(p, m) == 1) {
                continue;
            }
            const auto predicted = lucas::cycle_entry_prediction(p, m);
            // Brute force from the test oracle's cycle, not the library's.
            const auto c = oracle::cycle(p.A(), p.B(), static_cast<long>(m));
            const std::pair<long, long> target{1 % static_cast<long>(m), oracle::smod(p.A(), static_cast<long>(m))};
            std::optional<std::uint64_t> observed;
            for (std::size_t i = 0; i < c.states.size(); ++i) {
                if (c.states[(i + 1) % c.states.size()] == target && c.states[i].second == target.first) {
                    observed = static_cast<std::uint64_t>(c.states[i].first);
                }
            }
            (predicted ? applicable : inapplicable)++;
            if (predicted != observed) {
                f.add(p.to_string() + " m=" + std::to_string(m));
            }
        }
    }
    const bool example_ok = !lucas::cycle_entry_prediction(RecurrenceParams(1, 2), 4).has_value() &&
                            !lucas::cycle_entry_observed(RecurrenceParams(1, 2), 4).has_value();
    if (!example_ok) {
        f.add("A=1,B=2 m=4 not reported inapplicable");
    }
    return {f.count() == 0, std::to_string(applicable) + " applicable and " + std::to_string(inapplicable) +
                                " inapplicable (params, m) cases matched brute force, " + f.summary()};
}

} // namespace

int main() {
    double t1 = 0, t5 = 0, t11 = 0;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"addition identity", [&] { return addition_identity(t1); }},
        {"zero indices form an arithmetic progression", zero_index_ap},
        {"law of repetition", repetition_law},
        {"Fibonacci and Pell spot values", spot_values},
        {"period law k(p^e) = p^(e-t) k(p)", [&] { return period_law(t5); }},
        {"squares period law and determinant identity", squares_law},
        {"determinant congruences mod p^(e+1)", congruences},
        {"e(an) binomial expansion", ean_expansion},
        {"divisibility biconditionals", divisibility},
        {"trailing zeros", trailing_zeros},
        {"k(p^2) = k(p) scan", [&] { return wss(t11); }},
        {"cycle entry residue", cycle_entry},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%-4s criterion %2zu  %-46s %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
