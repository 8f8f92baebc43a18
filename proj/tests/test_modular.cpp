#include <gtest/gtest.h>

#include "lucas/modular.hpp"
#include "oracle.hpp"

using lucas::RecurrenceParams;

namespace {

std::vector<RecurrenceParams> grid(int bound = 5) {
    std::vector<RecurrenceParams> out;
    for (int a = -bound; a <= bound; ++a) {
        for (int b = -bound; b <= bound; ++b) {
            if (b != 0) {
                out.emplace_back(a, b);
            }
        }
    }
    return out;
}

} // namespace

TEST(NumTheory, PrimalityAgreesWithTrialDivision) {
    for (std::uint64_t n = 0; n < 5000; ++n) {
        bool prime = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && prime; ++d) {
            prime = n % d != 0;
        }
        ASSERT_EQ(lucas::is_prime(n), prime) << n;
    }
    EXPECT_TRUE(lucas::is_prime(18446744073709551557ULL));
    EXPECT_FALSE(lucas::is_prime(3215031751ULL)); // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(NumTheory, FactorAndDivisors) {
    const auto f = lucas::factorize(360);
    ASSERT_EQ(f.size(), 3U);
    EXPECT_EQ(f[0].prime, 2U);
    EXPECT_EQ(f[0].exponent, 3U);
    EXPECT_EQ(lucas::divisors(12), (std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12}));
    EXPECT_TRUE(lucas::as_prime_power(125).has_value());
    EXPECT_FALSE(lucas::as_prime_power(10).has_value());
    EXPECT_FALSE(lucas::checked_pow(1ULL << 32, 2).has_value());
    EXPECT_EQ(lucas::inverse_mod(3, 7), 5U);
    EXPECT_FALSE(lucas::inverse_mod(2, 4).has_value());
}

TEST(ModMatrix, KnownValues) {
    const auto id = lucas::ModMatrix::identity(10);
    EXPECT_TRUE(lucas::mat_pow(id, 1'000'000'000).is_identity());
    EXPECT_EQ(lucas::mat_pow(lucas::ModMatrix::companion(lucas::fibonacci(), 10), 10)(0, 0), 9U);
    EXPECT_EQ(lucas::mat_pow(lucas::ModMatrix::companion(lucas::pell(), 3), 7)(0, 1), 1U);
}

TEST(ModMatrix, RejectsMismatchedModuli) {
    const auto a = lucas::ModMatrix::identity(5);
    const auto b = lucas::ModMatrix::identity(7);
    EXPECT_THROW(static_cast<void>(a * b), lucas::precondition_error);
}

TEST(ModMatrix, PowerMatchesTermsAndEntriesInRange) {
    for (const auto& p : grid(3)) {
        const auto e = oracle::sequence(p.A(), p.B(), 30);
        for (std::uint64_t m : {2U, 7U, 12U, 97U}) {
            const auto c = lucas::ModMatrix::companion(p, m);
            for (std::uint64_t n = 1; n < 30; ++n) {
                const auto pw = lucas::mat_pow(c, n);
                ASSERT_EQ(pw(0, 0), oracle::mod(e[n + 1], m));
                ASSERT_EQ(pw(0, 1), oracle::mod(p.B() * e[n], m));
                ASSERT_EQ(pw(1, 0), oracle::mod(e[n], m));
                ASSERT_EQ(pw(1, 1), oracle::mod(p.B() * e[n - 1], m));
            }
        }
    }
}

TEST(TermMod, KnownValues) {
    EXPECT_EQ(lucas::term_mod(lucas::fibonacci(), 10, 7), 6U);
    EXPECT_EQ(lucas::term_mod(lucas::pell(), 0, 13), 0U);
    EXPECT_EQ(lucas::term_mod(lucas::pell(), 7, 3), 1U);
    EXPECT_THROW(lucas::term_mod(lucas::pell(), 7, 1), lucas::precondition_error);
}

TEST(TermMod, LargeModulusNoOverflow) {
    const std::uint64_t m = (1ULL << 62) - 57;
    const auto e = oracle::sequence(7, -3, 200);
    for (std::uint64_t n = 0; n <= 200; n += 13) {
        ASSERT_EQ(lucas::term_mod(RecurrenceParams(7, -3), n, m), oracle::mod(e[n], m));
    }
}

TEST(CycleStructure, KnownValues) {
    const auto f10 = lucas::cycle_structure(lucas::fibonacci(), 10);
    EXPECT_EQ(f10.tail_len, 0U);
    EXPECT_EQ(f10.cycle_len, 60U);
    EXPECT_TRUE(f10.pure);
    const auto c = lucas::cycle_structure(RecurrenceParams(1, 2), 4);
    EXPECT_EQ(c.tail_len, 2U);
    EXPECT_EQ(c.cycle_len, 2U);
    EXPECT_FALSE(c.pure);
    EXPECT_EQ(lucas::cycle_structure(lucas::fibonacci(), 2).cycle_len, 3U);
}

TEST(CycleStructure, MatchesOracleAndPurityOverGrid) {
    for (const auto& p : grid()) {
        for (std::uint64_t m = 2; m <= 30; ++m) {
            const auto got = lucas::cycle_structure(p, m);
            const auto want = oracle::cycle(p.A(), p.B(), static_cast<long>(m));
            ASSERT_EQ(got.tail_len, want.tail) << p.to_string() << " m=" << m;
            ASSERT_EQ(got.cycle_len, want.length) << p.to_string() << " m=" << m;
            ASSERT_EQ(got.pure, oracle::gcd(p.B(), static_cast<long>(m)) == 1);
        }
    }
}

TEST(CycleStructure, BudgetIsEnforced) {
    EXPECT_THROW(lucas::cycle_structure(lucas::fibonacci(), 1000, 1000), lucas::budget_exceeded);
}

TEST(Period, KnownValues) {
    EXPECT_EQ(lucas::period(lucas::fibonacci(), 10), 60U);
    EXPECT_EQ(lucas::period(lucas::fibonacci(), 100), 300U);
    EXPECT_EQ(lucas::period(lucas::pell(), 3), 8U);
    EXPECT_THROW(lucas::period(RecurrenceParams(1, 2), 4), lucas::no_pure_period);
}

TEST(Period, EqualsCycleLengthWhenPure) {
    for (const auto& p : grid()) {
        for (std::uint64_t m = 2; m <= 40; ++m) {
            if (lucas::gcd_B(p, m) != 1) {
                continue;
            }
            const auto k = lucas::period(p, m);
            ASSERT_EQ(k, oracle::period(p.A(), p.B(), static_cast<long>(m)));
            ASSERT_EQ(k, lucas::cycle_structure(p, m).cycle_len);
            ASSERT_TRUE(lucas::mat_pow(lucas::ModMatrix::companion(p, m), k).is_identity());
        }
    }
}

TEST(Rank, KnownValues) {
    EXPECT_EQ(lucas::rank(lucas::fibonacci(), 10).alpha, 15U);
    EXPECT_EQ(lucas::rank(lucas::pell(), 3).alpha, 4U);
    EXPECT_FALSE(lucas::rank(RecurrenceParams(1, 2), 4).alpha.has_value());
    const auto r25 = lucas::rank(lucas::fibonacci(), 25);
    EXPECT_EQ(r25.alpha, 25U);
    EXPECT_EQ(r25.valuation_at_alpha, 2U);
}

TEST(Rank, MatchesOracleOverGrid) {
    for (const auto& p : grid()) {
        for (std::uint64_t m = 2; m <= 30; ++m) {
            ASSERT_EQ(lucas::rank(p, m).alpha, oracle::rank(p.A(), p.B(), static_cast<long>(m)))
                << p.to_string() << " m=" << m;
        }
    }
}

TEST(ZeroIndices, KnownValues) {
    const auto r5 = lucas::zero_indices_check(lucas::fibonacci(), 5, 40);
    EXPECT_TRUE(r5.holds);
    EXPECT_EQ(r5.alpha, 5U);
    const auto r2 = lucas::zero_indices_check(lucas::fibonacci(), 2, 10);
    EXPECT_TRUE(r2.holds);
    EXPECT_EQ(r2.alpha, 3U);
    const auto p3 = lucas::zero_indices_check(lucas::pell(), 3, 12);
    EXPECT_TRUE(p3.holds);
    EXPECT_EQ(p3.alpha, 4U);
}

TEST(PeriodLaw, KnownValues) {
    const auto f5 = lucas::period_law_report(lucas::fibonacci(), 5, 2);
    EXPECT_EQ(f5.ladder, (std::vector<lucas::PeriodRung>{{1, 20}, {2, 100}}));
    EXPECT_EQ(f5.t, 1U);
    EXPECT_TRUE(f5.law_holds);
    const auto f2 = lucas::period_law_report(lucas::fibonacci(), 2, 3);
    EXPECT_EQ(f2.ladder, (std::vector<lucas::PeriodRung>{{1, 3}, {2, 6}, {3, 12}}));
    EXPECT_TRUE(f2.law_holds);
    const auto f3 = lucas::period_law_report(lucas::fibonacci(), 3, 1);
    EXPECT_EQ(f3.ladder, (std::vector<lucas::PeriodRung>{{1, 8}}));
    EXPECT_TRUE(f3.law_holds);
}

TEST(PeriodLaw, FailsAtTwoWhenBIsThreeModFour) {
    // Brute force: k(2), k(4), k(8) = 3, 6, 6 for A=1, B=3.
    const auto r = lucas::period_law_report(RecurrenceParams(1, 3), 2, 3);
    EXPECT_EQ(r.ladder, (std::vector<lucas::PeriodRung>{{1, 3}, {2, 6}, {3, 6}}));
    EXPECT_FALSE(r.law_holds);
    EXPECT_EQ(r.violating_exponent, 3U);
}

TEST(PeriodLaw, PellThirteenHasTwoFlatRungs) {
    const auto r = lucas::period_law_report(lucas::pell(), 13, 3);
    EXPECT_EQ(r.t, 2U);
    EXPECT_EQ(r.ladder[2].period, 13 * r.ladder[0].period);
    EXPECT_TRUE(r.law_holds);
}

TEST(SquaresPeriod, KnownValues) {
    EXPECT_EQ(lucas::squares_period(lucas::fibonacci(), 5), 10U);
    EXPECT_EQ(lucas::squares_period(lucas::fibonacci(), 2), 3U);
    const auto pell3 = lucas::squares_period_law_report(lucas::pell(), 3, 2);
    EXPECT_EQ(pell3.ladder, (std::vector<lucas::PeriodRung>{{1, 4}, {2, 12}}));
    EXPECT_TRUE(pell3.law_holds);
}

TEST(SquaresPeriod, MatchesOracle) {
    for (const auto& p : grid(3)) {
        for (std::uint64_t m = 2; m <= 30; ++m) {
            if (lucas::gcd_B(p, m) != 1) {
                continue;
            }
            const auto c = oracle::cycle(p.A(), p.B(), static_cast<long>(m));
            std::vector<long> sq;
            for (const auto& s : c.states) {
                sq.push_back(s.first * s.first % static_cast<long>(m));
            }
            std::uint64_t want = c.length;
            for (std::uint64_t d = 1; d <= c.length; ++d) {
                bool ok = c.length % d == 0;
                for (std::size_t i = 0; ok && i < sq.size(); ++i) {
                    ok = sq[i] == sq[(i + d) % sq.size()];
                }
                if (ok) {
                    want = d;
                    break;
                }
            }
            ASSERT_EQ(lucas::squares_period(p, m), want) << p.to_string() << " m=" << m;
        }
    }
}

TEST(CycleEntry, KnownValues) {
    EXPECT_FALSE(lucas::cycle_entry_prediction(RecurrenceParams(1, 2), 4).has_value());
    EXPECT_FALSE(lucas::cycle_entry_observed(RecurrenceParams(1, 2), 4).has_value());
    EXPECT_FALSE(lucas::cycle_entry_prediction(RecurrenceParams(1, 3), 9).has_value());
    EXPECT_FALSE(lucas::cycle_entry_observed(RecurrenceParams(1, 3), 9).has_value());
    EXPECT_EQ(lucas::cycle_entry_prediction(RecurrenceParams(1, 2), 6), 3U);
    EXPECT_EQ(lucas::cycle_entry_observed(RecurrenceParams(1, 2), 6), 3U);
    EXPECT_THROW(lucas::cycle_entry_prediction(lucas::fibonacci(), 10), lucas::precondition_error);
}

TEST(CycleEntry, PredictionMatchesBruteForceOverGrid) {
    for (const auto& p : grid()) {
        for (std::uint64_t m = 2; m <= 40; ++m) {
            if (lucas::gcd_B(p, m) == 1) {
                continue;
            }
            const auto c = oracle::cycle(p.A(), p.B(), static_cast<long>(m));
            const std::pair<long, long> target{1 % static_cast<long>(m), oracle::smod(p.A(), static_cast<long>(m))};
            std::optional<std::uint64_t> observed;
            for (std::size_t i = 0; i < c.states.size(); ++i) {
                if (c.states[(i + 1) % c.states.size()] == target && c.states[i].second == target.first) {
                    observed = static_cast<std::uint64_t>(c.states[i].first);
                }
            }
            ASSERT_EQ(lucas::cycle_entry_prediction(p, m), observed) << p.to_string() << " m=" << m;
        }
    }
}
