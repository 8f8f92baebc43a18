#pragma once

/**
 * @file congruence.hpp
 * @brief Exact and modular checks of identities relating e(n), v(n) and
 *        the determinants of powers of the companion matrix.
 */

#include <cstdint>
#include <optional>
#include <string>

#include "lucas/divisibility.hpp"
#include "lucas/exact.hpp"
#include "lucas/numtheory.hpp"
#include "lucas/params.hpp"

namespace lucas {

/// Both sides of an identity. For congruences lhs and rhs are least
/// nonnegative residues; exact identities leave modulus empty.
struct CongruenceCheckResult {
    BigInt lhs;
    BigInt rhs;
    std::optional<BigInt> modulus;
    bool holds;
    std::string context;
};

namespace detail {

inline BigInt residue(const BigInt& x, const BigInt& m) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

inline BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline CongruenceCheckResult exact_result(BigInt lhs, BigInt rhs, std::string context) {
    const bool holds = lhs == rhs;
    return {std::move(lhs), std::move(rhs), std::nullopt, holds, std::move(context)};
}

inline CongruenceCheckResult modular_result(const BigInt& lhs, const BigInt& rhs, BigInt modulus,
                                            std::string context) {
    BigInt l = residue(lhs, modulus);
    BigInt r = residue(rhs, modulus);
    const bool holds = l == r;
    return {std::move(l), std::move(r), std::move(modulus), holds, std::move(context)};
}

} // namespace detail

/// 2^(a-1) e(a n) = sum over odd j of C(a, j) D^((j-1)/2) e(n)^j v(n)^(a-j).
inline CongruenceCheckResult ean_expansion_check(const RecurrenceParams& params, std::uint64_t a, std::uint64_t n) {
    if (a < 1 || n < 1) {
        throw precondition_error("ean_expansion_check needs a, n >= 1");
    }
    require_digit_budget(params, a * n);
    const BigInt en = term(params, n);
    const BigInt vn = companion(params, n);
    const BigInt d = static_cast<long>(params.D());

    BigInt rhs = 0;
    for (std::uint64_t j = 1; j <= a; j += 2) {
        rhs += detail::binomial(a, j) * ipow(d, (j - 1) / 2) * ipow(en, j) * ipow(vn, a - j);
    }
    BigInt lhs = ipow(BigInt(2), a - 1) * term(params, a * n);
    return detail::exact_result(std::move(lhs), std::move(rhs),
                                params.to_string() + " a=" + std::to_string(a) + " n=" + std::to_string(n));
}

/// gcd(v(n), e(n)) is 1 or 2 for 1 <= n <= n_max.
inline SweepVerdict gcd_companion_check(const RecurrenceParams& params, std::uint64_t n_max) {
    if (!params.coprime_AB()) {
        throw precondition_error("gcd_companion_check requires gcd(A, B) = 1");
    }
    require_digit_budget(params, n_max + 1);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const BigInt g = gcd(companion(params, n), term(params, n));
        if (g != 1 && g != 2) {
            return {false, n};
        }
    }
    return {true, std::nullopt};
}

/// e(np+1) e(np-1) = (-B)^(p-1) (e(n+1) e(n-1))^p  (mod p^(e+1)), given p^e | e(n).
inline CongruenceCheckResult thm6_congruence_check(const RecurrenceParams& params, std::uint64_t p,
                                                   std::uint64_t e, std::uint64_t n) {
    if (p == 2 || !is_prime(p)) {
        throw precondition_error("thm6 requires an odd prime, got " + std::to_string(p));
    }
    if (e < 1 || n < 1) {
        throw precondition_error("thm6 requires e, n >= 1");
    }
    require_digit_budget(params, n * p + 1);
    const BigInt prime = static_cast<unsigned long>(p);
    const std::string context =
        params.to_string() + " p=" + std::to_string(p) + " e=" + std::to_string(e) + " n=" + std::to_string(n);
    if (!detail::divides(ipow(prime, e), term(params, n))) {
        throw hypothesis_not_met("p^e does not divide e(n): " + context);
    }
    const BigInt modulus = ipow(prime, e + 1);

    const auto [before_np, at_np] = term_pair_fast(params, n * p - 1);
    const BigInt after_np = static_cast<long>(params.A()) * at_np + static_cast<long>(params.B()) * before_np;
    const BigInt lhs = after_np * before_np;

    const auto [before_n, at_n] = term_pair_fast(params, n - 1);
    const BigInt after_n = static_cast<long>(params.A()) * at_n + static_cast<long>(params.B()) * before_n;
    BigInt rhs_base = detail::residue(after_n * before_n, modulus);
    BigInt minus_b = detail::residue(BigInt(-static_cast<long>(params.B())), modulus);
    BigInt rhs;
    BigInt t;
    mpz_powm_ui(rhs.get_mpz_t(), rhs_base.get_mpz_t(), p, modulus.get_mpz_t());
    mpz_powm_ui(t.get_mpz_t(), minus_b.get_mpz_t(), p - 1, modulus.get_mpz_t());
    rhs *= t;
    return detail::modular_result(lhs, rhs, modulus, context);
}

/// e(pn+2) e(pn) - e(pn+1)^2 = (e(n+2) e(n) - e(n+1)^2)^p for odd p.
inline CongruenceCheckResult thm8_identity_check(const RecurrenceParams& params, std::uint64_t p, std::uint64_t n) {
    if (p < 3 || p % 2 == 0) {
        throw precondition_error("thm8 identity requires odd p >= 3, got " + std::to_string(p));
    }
    if (n < 1) {
        throw precondition_error("thm8 identity requires n >= 1");
    }
    require_digit_budget(params, p * n + 2);
    auto determinant = [&](std::uint64_t k) {
        // e(k+2) e(k) - e(k+1)^2
        const auto [ek, ek1] = term_pair_fast(params, k);
        const BigInt ek2 = static_cast<long>(params.A()) * ek1 + static_cast<long>(params.B()) * ek;
        return BigInt(ek2 * ek - ek1 * ek1);
    };
    return detail::exact_result(determinant(p * n), ipow(determinant(n), p),
                                params.to_string() + " p=" + std::to_string(p) + " n=" + std::to_string(n));
}

/// 2^a e(an+1) = v(n)^a  (mod |e(n)|). Modulus 1 is vacuous; e(n) = 0 makes
/// it an exact identity.
inline CongruenceCheckResult period_step_congruence(const RecurrenceParams& params, std::uint64_t a,
                                                    std::uint64_t n) {
    if (a < 1 || n < 1) {
        throw precondition_error("period_step_congruence needs a, n >= 1");
    }
    require_digit_budget(params, a * n + 1);
    const std::string context = params.to_string() + " a=" + std::to_string(a) + " n=" + std::to_string(n);
    const BigInt modulus = abs(term(params, n));
    const BigInt lhs = ipow(BigInt(2), a) * term(params, a * n + 1);
    const BigInt rhs = ipow(companion(params, n), a);
    if (modulus == 0) {
        return detail::exact_result(lhs, rhs, context);
    }
    return detail::modular_result(lhs, rhs, modulus, context);
}

} // namespace lucas
