#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "zmod.hpp"

namespace syntomic {

/// Global finite-precision context for the truncated models: an odd prime p,
/// ramification index e (prime element pi with pi^e = p), K-theory degree q,
/// reported p-adic precision n_prec, X-degree bound x_trunc, divided-power
/// level pd_level, number of p-base variables m_pbase and the multidegree
/// window win (Laurent exponents kept in [-win, win]^m).
struct TruncationParams {
    std::uint64_t p = 5;
    unsigned e = 2;
    unsigned q = 2;
    unsigned n_prec = 3;
    unsigned x_trunc = 30;
    unsigned pd_level = 6;
    unsigned m_pbase = 1;
    unsigned win = 25;
    bool strict = false;

    void validate() const {
        if (!is_prime_u64(p) || p < 3)
            throw PreconditionError("p must be an odd prime (p >= 3)");
        if (e == 0)
            throw PreconditionError("e must be positive");
        if (q == 0)
            throw PreconditionError("q must be positive");
        if (q >= p)
            throw PreconditionError("q < p is required");
        if (e % p == 0)
            throw PreconditionError("p \xe2\x88\xa4 e is required");
        if (n_prec < 1)
            throw PreconditionError("n_prec >= 1 is required");
        if (x_trunc < e * (pd_level + 1))
            throw PreconditionError("x_trunc >= e*(pd_level+1) is required");
        if (win < p * p)
            throw PreconditionError("win >= p^2 is required");
        if (m_pbase > 4)
            throw PreconditionError("at most 4 p-base variables are supported");
        if (win > 900)
            throw PreconditionError("window bound must be at most 900");
        if (x_trunc > 1000)
            throw PreconditionError("x_trunc must be at most 1000");
        if (pd_level > 60)
            throw PreconditionError("pd_level must be at most 60");
        if ((std::uint64_t)p * (e > 1 ? e - 1 : 0) >= x_trunc && e > 1)
            throw PreconditionError("x_trunc must exceed p*(e-1)");
    }

    unsigned log_p_ceil(std::uint64_t v) const {
        unsigned k = 0;
        std::uint64_t t = 1;
        while (t < v) {
            t *= p;
            ++k;
        }
        return k;
    }

    /// Hard cap on divided-Frobenius iteration (geometric series of f_q).
    unsigned iterate_cap() const { return log_p_ceil(x_trunc) + n_prec + 2; }

    /// Working precision: every Frobenius iterate that survives past
    /// log_p(x_trunc) steps is dead by the X-weight mechanism, so this much
    /// headroom keeps all exact divisions by p^q away from reported digits.
    unsigned work_prec() const { return n_prec + q * (log_p_ceil(x_trunc) + 2) + 2; }
};

/// Immutable shared context: parameters, the working modulus and factorial
/// tables (unit parts of n!/p^{v_p(n!)}) used by the divided-power laws and
/// the exponential/logarithm series.  Every ring element holds a pointer to
/// one of these; values from different contexts never mix.
class Context {
  public:
    explicit Context(TruncationParams par) : par_(par) {
        par_.validate();
        mod_ = Modulus(par_.p, par_.work_prec());
        modn_ = Modulus(par_.p, par_.n_prec);
        std::size_t bound = std::max<std::size_t>(
            {par_.p * par_.pd_level, 2 * par_.pd_level, 2 * par_.p,
             series_cap()});
        bound += 8;
        fact_unit_.resize(bound + 1);
        fact_val_.resize(bound + 1);
        fact_unit_[0] = 1;
        fact_val_[0] = 0;
        for (std::size_t n = 1; n <= bound; ++n) {
            std::uint64_t u = n;
            unsigned v = 0;
            while (u % par_.p == 0) {
                u /= par_.p;
                ++v;
            }
            fact_unit_[n] = mod_.mul(fact_unit_[n - 1], u % mod_.pn());
            fact_val_[n] = fact_val_[n - 1] + v;
        }
    }

    const TruncationParams& params() const { return par_; }
    const Modulus& mod() const { return mod_; }
    /// Reported-precision modulus p^{n_prec}.
    const Modulus& mod_report() const { return modn_; }
    std::uint64_t p() const { return par_.p; }
    unsigned e() const { return par_.e; }
    unsigned q() const { return par_.q; }
    unsigned nvars() const { return par_.m_pbase; }

    /// Bound on the length of any exponential-type series before it must
    /// have terminated; exceeding it signals a convergence violation.
    unsigned series_cap() const {
        return par_.e * (par_.work_prec() + par_.pd_level + 2) + 4;
    }

    unsigned fact_val(std::size_t n) const { return fact_val_.at(n); }
    coeff_t fact_unit(std::size_t n) const { return fact_unit_.at(n); }

    /// n! as a residue (zero once v_p(n!) reaches the working precision).
    coeff_t factorial(std::size_t n) const {
        return mod_.mul_pk(fact_unit(n), fact_val(n));
    }

    /// binom(n, k) mod p^work.
    coeff_t binom(std::size_t n, std::size_t k) const {
        if (k > n)
            return 0;
        unsigned v = fact_val(n) - fact_val(k) - fact_val(n - k);
        coeff_t u = mod_.mul(fact_unit(n),
                             mod_.inv_unit(mod_.mul(fact_unit(k), fact_unit(n - k))));
        return mod_.mul_pk(u, v);
    }

    /// (ik)! / ((i!)^k k!): the coefficient in (u^[i])^[k] = c * u^[ik].
    coeff_t divided_power_coeff(std::size_t i, std::size_t k) const {
        unsigned v = fact_val(i * k) - (unsigned)k * fact_val(i) - fact_val(k);
        coeff_t den = mod_.mul(mod_.pow(fact_unit(i), k), fact_unit(k));
        coeff_t u = mod_.mul(fact_unit(i * k), mod_.inv_unit(den));
        return mod_.mul_pk(u, v);
    }

    /// p^l / l!  (an honest p-adic integer since v_p(l!) < l).
    coeff_t p_divided(std::size_t l) const {
        unsigned v = (unsigned)l - fact_val(l);
        return mod_.mul_pk(mod_.inv_unit(fact_unit(l)), v);
    }

    /// Exact division by k! at working precision.
    coeff_t div_factorial(coeff_t a, std::size_t k) const {
        coeff_t t = mod_.div_pk(a, fact_val(k));
        return mod_.mul(t, mod_.inv_unit(fact_unit(k)));
    }

    static std::shared_ptr<const Context> make(TruncationParams par) {
        return std::make_shared<const Context>(par);
    }

  private:
    TruncationParams par_;
    Modulus mod_;
    Modulus modn_;
    std::vector<coeff_t> fact_unit_;
    std::vector<unsigned> fact_val_;
};

using CtxPtr = std::shared_ptr<const Context>;

} // namespace syntomic
