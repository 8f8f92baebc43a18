// lucas-atlas: command-line front end for the lucas library.
//
// Exit codes: 0 success, 1 verification failures, 2 usage error,
// 3 budget exceeded.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "lucas/lucas.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failures = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

struct Options {
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::uint64_t modulus = 0;
    std::int64_t index = 0;
    std::uint64_t p = 0;
    std::uint64_t e = 1;
    std::uint64_t a_mult = 2;
    std::string format = "json";
    std::string out;
    // Each subcommand owns its bound: CLI11 writes defaults into the bound
    // variable when an option is declared, so shared storage would clash.
    std::uint64_t scan_bound = 100000;
    std::uint64_t m_max = 30;
    std::uint64_t k_max = 2;
    std::uint64_t a_max = 15;
    std::uint64_t b_max = 60;
    std::uint64_t n_max = 2000;
    std::uint64_t p_max = 0;
    std::uint64_t budget = lucas::default_state_budget;
    unsigned jobs = 1;
    bool samples = false;
    std::string a_range, b_range, m_range;
    std::string config;
};

lucas::IntRange parse_range(const std::string& text) {
    const auto sep = text.find(':');
    try {
        if (sep == std::string::npos) {
            const auto v = std::stoll(text);
            return {v, v};
        }
        return {std::stoll(text.substr(0, sep)), std::stoll(text.substr(sep + 1))};
    } catch (const std::logic_error&) {
        throw lucas::precondition_error("bad range '" + text + "' (expected lo:hi)");
    }
}

lucas::Decimal decimal(const lucas::BigInt& x) { return {x.get_str()}; }

lucas::FieldValue optional_field(const std::optional<std::uint64_t>& v) {
    return v ? lucas::FieldValue(*v) : lucas::FieldValue(std::monostate{});
}

class Output {
public:
    explicit Output(const Options& o) : format_(lucas::parse_format(o.format)) {
        if (!o.out.empty()) {
            file_ = std::make_unique<std::ofstream>(o.out);
            if (!*file_) {
                throw std::runtime_error("cannot open " + o.out);
            }
        }
        writer_.emplace(stream(), format_);
    }

    std::ostream& stream() { return file_ ? *file_ : std::cout; }
    lucas::Format format() const { return format_; }
    void write(const lucas::Record& r) { writer_->write(r); }

private:
    lucas::Format format_;
    std::unique_ptr<std::ofstream> file_;
    std::optional<lucas::RecordWriter> writer_;
};

lucas::RecurrenceParams params_of(const Options& o) { return {o.a, o.b}; }

std::string ladder_string(const lucas::PeriodLawReport& r) {
    std::string s;
    for (const auto& rung : r.ladder) {
        s += (s.empty() ? "" : ";") + std::to_string(rung.exponent) + ":" + std::to_string(rung.period);
    }
    return s;
}

int emit_law(const Options& o, const lucas::PeriodLawReport& r) {
    Output out(o);
    out.write({{"A", o.a},
               {"B", o.b},
               {"p", r.p},
               {"ladder", ladder_string(r)},
               {"t", std::uint64_t{r.t}},
               {"law_holds", r.law_holds},
               {"violating_exponent",
                r.violating_exponent ? lucas::FieldValue(std::uint64_t{*r.violating_exponent}) : std::monostate{}}});
    return r.law_holds ? exit_ok : exit_failures;
}

lucas::Record congruence_record(const std::string& identity, const lucas::CongruenceCheckResult& r) {
    return {{"identity", identity},
            {"context", r.context},
            {"lhs", decimal(r.lhs)},
            {"rhs", decimal(r.rhs)},
            {"modulus", r.modulus ? lucas::FieldValue(decimal(*r.modulus)) : std::monostate{}},
            {"holds", r.holds}};
}

int run_identities(const Options& o) {
    const auto pr = params_of(o);
    const auto n = lucas::TermIndex::checked(o.index).value();
    Output out(o);
    bool all = true;
    auto emit = [&](const std::string& name, const lucas::CongruenceCheckResult& r) {
        out.write(congruence_record(name, r));
        all = all && r.holds;
    };
    {
        const auto c = lucas::catalan_value(pr, n);
        const auto f = lucas::catalan_closed_form(pr, n);
        emit("catalan", {c, f, std::nullopt, c == f, pr.to_string() + " n=" + std::to_string(n)});
    }
    emit("ean_expansion", lucas::ean_expansion_check(pr, o.a_mult, n));
    emit("period_step", lucas::period_step_congruence(pr, o.a_mult, n));
    if (o.p >= 3 && o.p % 2 == 1) {
        emit("thm8_identity", lucas::thm8_identity_check(pr, o.p, n));
        if (lucas::is_prime(o.p)) {
            try {
                emit("thm6_congruence", lucas::thm6_congruence_check(pr, o.p, o.e, n));
            } catch (const lucas::hypothesis_not_met& ex) {
                std::cerr << "thm6_congruence skipped: " << ex.what() << '\n';
            }
        }
    }
    return all ? exit_ok : exit_failures;
}

// -A / -B pin the grid to one coordinate; --budget overrides the config.
int run_verify(const Options& o, const CLI::App& sub) {
    lucas::VerifyConfig config;
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) {
            throw lucas::precondition_error("cannot open config " + o.config);
        }
        config = lucas::VerifyConfig::parse(in);
    }
    if (sub.count("-A") > 0) {
        config.a_min = config.a_max = o.a;
    }
    if (sub.count("-B") > 0) {
        config.b_min = config.b_max = o.b;
    }
    if (sub.count("--budget") > 0) {
        config.state_budget = o.budget;
    }
    if (o.jobs > 1) {
        config.jobs = o.jobs;
    }
    const auto report = lucas::verify_suite(config);
    Output out(o);
    lucas::write_verify_report(report, out.stream(), out.format());
    return report.summary.all_pass() ? exit_ok : exit_failures;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Arithmetic of e(n) = A e(n-1) + B e(n-2), e(0)=0, e(1)=1"};
    app.require_subcommand(1);
    Options o;
    std::function<int()> action;

    auto shared = [&](CLI::App* sub, bool needs_params = true) {
        auto* a = sub->add_option("-A", o.a, "coefficient A");
        auto* b = sub->add_option("-B", o.b, "coefficient B (nonzero)");
        if (needs_params) {
            a->required();
            b->required();
        }
        sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", o.out, "output path (default: standard output)");
        sub->add_option("--budget", o.budget, "pair-state budget");
    };
    auto add = [&](const std::string& name, const std::string& help, std::function<int()> fn,
                   bool needs_params = true) {
        auto* sub = app.add_subcommand(name, help);
        shared(sub, needs_params);
        sub->callback([&action, fn] { action = fn; });
        return sub;
    };

    auto* term = add("term", "exact e(n)", [&] {
        const auto pr = params_of(o);
        const auto n = lucas::TermIndex::checked(o.index);
        Output out(o);
        out.write({{"A", o.a}, {"B", o.b}, {"n", n.value()}, {"value", decimal(lucas::term(pr, n))}});
        return exit_ok;
    });
    term->add_option("-n,--index", o.index, "index")->required();

    auto* term_mod = add("term-mod", "e(n) mod m", [&] {
        const auto n = lucas::TermIndex::checked(o.index);
        Output out(o);
        out.write({{"A", o.a}, {"B", o.b}, {"n", n.value()}, {"m", o.modulus},
                   {"value", lucas::term_mod(params_of(o), n, o.modulus)}});
        return exit_ok;
    });
    term_mod->add_option("-n,--index", o.index, "index")->required();
    term_mod->add_option("-m,--modulus", o.modulus, "modulus")->required();

    auto* period = add("period", "pair period k(m)", [&] {
        Output out(o);
        out.write({{"A", o.a}, {"B", o.b}, {"m", o.modulus}, {"period", lucas::period(params_of(o), o.modulus, o.budget)}});
        return exit_ok;
    });
    period->add_option("-m,--modulus", o.modulus, "modulus")->required();

    auto* cycle = add("cycle", "tail and cycle of the pair sequence mod m", [&] {
        const auto cs = lucas::cycle_structure(params_of(o), o.modulus, o.budget);
        Output out(o);
        out.write({{"A", o.a}, {"B", o.b}, {"m", o.modulus}, {"pure", cs.pure}, {"tail_len", cs.tail_len},
                   {"cycle_len", cs.cycle_len}});
        return exit_ok;
    });
    cycle->add_option("-m,--modulus", o.modulus, "modulus")->required();

    auto* rank = add("rank", "rank of apparition mod m", [&] {
        const auto r = lucas::rank(params_of(o), o.modulus, o.budget);
        Output out(o);
        out.write({{"A", o.a}, {"B", o.b}, {"m", o.modulus}, {"alpha", optional_field(r.alpha)},
                   {"valuation_at_alpha", optional_field(r.valuation_at_alpha)}});
        return exit_ok;
    });
    rank->add_option("-m,--modulus", o.modulus, "modulus")->required();

    auto* law = add("period-law", "k(p^e) ladder and the p^(e-t) law", [&] {
        return emit_law(o, lucas::period_law_report(params_of(o), o.p, static_cast<unsigned>(o.e), o.budget));
    });
    law->add_option("--p", o.p, "prime")->required();
    law->add_option("--e", o.e, "largest exponent")->required();

    auto* squares = add("squares-law", "period ladder of e(n)^2 mod p^e", [&] {
        return emit_law(o, lucas::squares_period_law_report(params_of(o), o.p, static_cast<unsigned>(o.e), o.budget));
    });
    squares->add_option("--p", o.p, "prime")->required();
    squares->add_option("--e", o.e, "largest exponent")->required();

    auto* repetition = add("repetition", "law of repetition of a prime", [&] {
        const auto r = lucas::repetition_law_check(params_of(o), o.p, o.scan_bound);
        Output out(o);
        out.write({{"A", o.a},
                   {"B", o.b},
                   {"p", r.p},
                   {"base_rank", r.base_rank},
                   {"base_valuation", r.base_valuation},
                   {"predicted_next_rank", r.predicted_next_rank},
                   {"observed_next_rank", optional_field(r.observed_next_rank)},
                   {"observed_valuation_at_pn", r.observed_valuation_at_pn},
                   {"holds", r.holds},
                   {"classification", r.holds ? "pass" : (r.known_exception ? "known-exception" : "fail")}});
        return (r.holds || r.known_exception) ? exit_ok : exit_failures;
    });
    repetition->add_option("--p", o.p, "prime")->required();
    repetition->add_option("--limit", o.scan_bound, "index scan bound")->capture_default_str();

    auto verdict_record = [&](const char* bound_name, std::uint64_t bound, const lucas::SweepVerdict& v) {
        Output out(o);
        out.write({{"A", o.a}, {"B", o.b}, {"n", static_cast<std::uint64_t>(o.index)}, {bound_name, bound},
                   {"holds", v.holds}, {"counterexample", optional_field(v.counterexample)}});
        return v.holds ? exit_ok : exit_failures;
    };

    auto* thm9 = add("thm9", "e(n)^2 | e(nm) <=> e(n) | m", [&] {
        const auto n = lucas::TermIndex::checked(o.index).value();
        return verdict_record("m_max", o.m_max, lucas::thm9_check(params_of(o), n, o.m_max));
    });
    thm9->add_option("-n,--index", o.index, "n")->required();
    thm9->add_option("--limit", o.m_max, "m_max")->capture_default_str();

    auto* thm10 = add("thm10", "e(n)^(k+1) | e(n e(n)^k)", [&] {
        const auto n = lucas::TermIndex::checked(o.index).value();
        return verdict_record("k_max", o.k_max, lucas::thm10_check(params_of(o), n, o.k_max));
    });
    thm10->add_option("-n,--index", o.index, "n")->required();
    thm10->add_option("--limit", o.k_max, "k_max")->capture_default_str();

    auto* thm11 = add("thm11", "e(a) | e(b) <=> a | b", [&] {
        const auto r = lucas::thm11_check(params_of(o), o.a_max, o.b_max);
        std::string degenerate, counter;
        for (auto a : r.degenerate) {
            degenerate += (degenerate.empty() ? "" : ";") + std::to_string(a);
        }
        for (const auto& [a, b] : r.counterexamples) {
            counter += (counter.empty() ? "" : ";") + std::to_string(a) + "|" + std::to_string(b);
        }
        Output out(o);
        out.write({{"A", o.a}, {"B", o.b}, {"a_max", o.a_max}, {"b_max", o.b_max}, {"holds", r.holds},
                   {"degenerate", degenerate}, {"counterexamples", counter}});
        return r.holds ? exit_ok : exit_failures;
    });
    thm11->add_option("--limit", o.a_max, "a_max")->capture_default_str();
    thm11->add_option("--b-max", o.b_max, "b_max")->capture_default_str();

    auto* zeros = add("zeros", "trailing zeros of e(n) in base m", [&] {
        const auto n = lucas::TermIndex::checked(o.index).value();
        Output out(o);
        out.write({{"A", o.a}, {"B", o.b}, {"n", n}, {"base", o.modulus},
                   {"zeros", lucas::trailing_zeros(params_of(o), n, o.modulus)}});
        return exit_ok;
    });
    zeros->add_option("-n,--index", o.index, "n")->required();
    zeros->add_option("-m,--modulus", o.modulus, "base")->default_val(10);

    auto* bound = add("bound", "max trailing zeros / log2(n) over 2..n_max", [&] {
        const auto r = lucas::bound_check(params_of(o), o.modulus, o.n_max);
        Output out(o);
        if (o.samples) {
            for (const auto& s : r.samples) {
                out.write({{"A", o.a}, {"B", o.b}, {"base", r.base}, {"n", s.n}, {"zeros", s.zeros}});
            }
        } else {
            std::ostringstream ratio;
            ratio.precision(17);
            ratio << r.max_ratio;
            out.write({{"A", o.a}, {"B", o.b}, {"base", r.base}, {"n_max", o.n_max}, {"max_ratio", ratio.str()},
                       {"max_ratio_at", r.max_ratio_at}, {"counts_agree", r.counts_agree}});
        }
        return r.counts_agree ? exit_ok : exit_failures;
    });
    bound->add_option("-m,--modulus", o.modulus, "base")->default_val(10);
    bound->add_option("--limit", o.n_max, "n_max")->capture_default_str();
    bound->add_flag("--samples", o.samples, "emit every (n, zeros) sample");

    auto* identities = add("identities", "determinant and expansion identities at one index", [&] {
        return run_identities(o);
    });
    identities->add_option("-n,--index", o.index, "n")->required();
    identities->add_option("--p", o.p, "odd p for the determinant identities");
    identities->add_option("--e", o.e, "exponent for the prime-power congruence");
    identities->add_option("--a", o.a_mult, "multiplier a")->default_val(2);

    auto* wss = add("wss", "primes p <= limit with k(p^2) = k(p)", [&] {
        const auto findings = lucas::wss_scan(params_of(o), o.p_max, o.budget, o.jobs);
        Output out(o);
        for (const auto& f : findings) {
            out.write(f.to_record());
        }
        return exit_ok;
    });
    wss->add_option("--limit", o.p_max, "largest prime to test")->required();
    wss->add_option("--jobs", o.jobs, "worker threads")->default_val(lucas::default_jobs());

    auto* atlas = add(
        "atlas", "cycle data for every (A, B, m) in a grid",
        [&] {
            Output out(o);
            lucas::atlas(parse_range(o.a_range), parse_range(o.b_range), parse_range(o.m_range), out.stream(),
                         out.format(), o.budget, o.jobs);
            return exit_ok;
        },
        false);
    atlas->add_option("--a-range", o.a_range, "A range lo:hi (use --a-range=-5:5 for negatives)")->required();
    atlas->add_option("--b-range", o.b_range, "B range lo:hi")->required();
    atlas->add_option("--m-range", o.m_range, "modulus range lo:hi")->required();
    atlas->add_option("--jobs", o.jobs, "worker threads")->default_val(lucas::default_jobs());

    CLI::App* verify = nullptr;
    verify = add("verify", "run every property suite over a grid", [&] { return run_verify(o, *verify); }, false);
    verify->add_option("--config", o.config, "key = value config file");
    verify->add_option("--jobs", o.jobs, "worker threads")->default_val(lucas::default_jobs());

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        return action();
    } catch (const lucas::budget_exceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return exit_budget;
    } catch (const lucas::hypothesis_not_met& e) {
        std::cerr << "hypothesis not met: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    }
}
