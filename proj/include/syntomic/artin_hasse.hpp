#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "pd_ops.hpp"

namespace syntomic {

/// Coefficients of the Artin-Hasse series AH(t) = exp(sum_n t^{p^n}/p^n),
/// computed once per context by exact rational arithmetic and reduced to the
/// working precision.  The coefficients are p-integral (Dwork), which is
/// checked rather than assumed.
class ArtinHasseSeries {
  public:
    explicit ArtinHasseSeries(CtxPtr ctx) : ctx_(std::move(ctx)) {
        using boost::multiprecision::cpp_int;
        using boost::multiprecision::cpp_rational;
        const std::size_t K = ctx_->series_cap() + 1;
        const std::uint64_t p = ctx_->p();
        // c_0 = 1; (k+1) c_{k+1} = sum_{p^n - 1 <= k} c_{k+1-p^n}
        // (from AH'(t) = AH(t) * sum_n t^{p^n - 1}).
        std::vector<cpp_rational> c(K + 1);
        c[0] = 1;
        for (std::size_t k = 0; k + 1 <= K; ++k) {
            cpp_rational s = 0;
            for (std::uint64_t pw = 1; pw <= k + 1; pw *= p) {
                s += c[k + 1 - pw];
                if (pw > (k + 1) / p)
                    break;
            }
            c[k + 1] = s / cpp_rational(k + 1);
        }
        cpp_int pn = 1;
        for (unsigned i = 0; i < ctx_->mod().n(); ++i)
            pn *= p;
        coeffs_.resize(K + 1);
        for (std::size_t k = 0; k <= K; ++k) {
            cpp_int num = boost::multiprecision::numerator(c[k]);
            cpp_int den = boost::multiprecision::denominator(c[k]);
            if (den % p == 0)
                throw PreconditionError("Artin-Hasse coefficient is not p-integral");
            cpp_int dinv = 1, d = den % pn, t = pn;
            // inverse of den mod p^n by extended Euclid on cpp_int
            {
                cpp_int a = d < 0 ? d + t : d, b = t, x0 = 1, x1 = 0;
                while (b != 0) {
                    cpp_int qq = a / b, r = a - qq * b;
                    a = b;
                    b = r;
                    cpp_int nx = x0 - qq * x1;
                    x0 = x1;
                    x1 = nx;
                }
                dinv = x0 % t;
                if (dinv < 0)
                    dinv += t;
            }
            cpp_int v = ((num % pn) * dinv) % pn;
            if (v < 0)
                v += pn;
            coeffs_[k] = v.convert_to<coeff_t>();
        }
    }

    coeff_t coeff(std::size_t k) const { return coeffs_.at(k); }
    std::size_t max_k() const { return coeffs_.size() - 1; }
    const CtxPtr& ctx() const { return ctx_; }

    /// AH(z) for a topologically nilpotent z in D: the power series must
    /// terminate within the cap, else the convergence precondition fails.
    RingElem eval(const RingElem& z) const {
        RingElem acc = RingElem::scalar(ctx_, Ring::D, 1);
        RingElem pw = z;
        for (std::size_t k = 1; !pw.is_zero(); ++k) {
            if (k > max_k())
                throw InexactDivision("Artin-Hasse series did not terminate: "
                                      "convergence precondition violated");
            acc = acc + pw.scaled_c(coeffs_[k]);
            pw = pw * z;
        }
        return acc;
    }

  private:
    CtxPtr ctx_;
    std::vector<coeff_t> coeffs_;
};

/// exp(z) = sum z^k / k! with every division exact (errors otherwise).
inline RingElem pd_exp(const RingElem& z) {
    const CtxPtr& ctx = z.ctx();
    RingElem acc = RingElem::scalar(ctx, Ring::D, 1);
    RingElem pw = z;
    for (std::size_t k = 1; !pw.is_zero(); ++k) {
        if (k > ctx->series_cap())
            throw InexactDivision("exp series did not terminate");
        unsigned v = ctx->fact_val(k);
        if (!pw.divisible_pk(v))
            throw InexactDivision("exp: x^n/n! division is inexact");
        acc = acc + pw.div_pk(v).scaled_c(ctx->mod().inv_unit(ctx->fact_unit(k)));
        pw = pw * z;
    }
    return acc;
}

/// log(w) for w = 1 + z with z topologically nilpotent; divisions by k are
/// exact by the termination contract.
inline RingElem pd_log(const RingElem& w) {
    const CtxPtr& ctx = w.ctx();
    RingElem z = w - RingElem::scalar(ctx, Ring::D, 1);
    RingElem acc = RingElem::zero(ctx, Ring::D);
    RingElem pw = z;
    for (std::size_t k = 1; !pw.is_zero(); ++k) {
        if (k > ctx->series_cap())
            throw InexactDivision("log series did not terminate");
        std::uint64_t ku = k;
        unsigned v = 0;
        while (ku % ctx->p() == 0) {
            ku /= ctx->p();
            ++v;
        }
        if (!pw.divisible_pk(v))
            throw InexactDivision("log: z^k/k division is inexact");
        RingElem t = pw.div_pk(v).scaled_c(ctx->mod().inv_unit(ku % ctx->mod().pn()));
        acc = (k % 2) ? acc + t : acc - t;
        pw = pw * z;
    }
    return acc;
}

/// Inverse of a unit c(1 + n) in D with n topologically nilpotent.
inline RingElem pd_inverse(const RingElem& w) {
    const CtxPtr& ctx = w.ctx();
    coeff_t c = w.constant_coeff();
    if (!ctx->mod().is_unit(c))
        throw InexactDivision("element is not a unit in the truncated model");
    coeff_t ci = ctx->mod().inv_unit(c);
    RingElem n = w.scaled_c(ci) - RingElem::scalar(ctx, Ring::D, 1);
    RingElem acc = RingElem::scalar(ctx, Ring::D, 1);
    RingElem pw = -n;
    for (std::size_t k = 1; !pw.is_zero(); ++k) {
        if (k > ctx->series_cap())
            throw InexactDivision("geometric series did not terminate");
        acc = acc + pw;
        pw = pw * (-n);
    }
    return acc.scaled_c(ci);
}

inline RingElem pd_pow(const RingElem& z, std::uint64_t k) {
    RingElem acc = RingElem::scalar(z.ctx(), Ring::D, 1);
    RingElem base = z;
    while (k) {
        if (k & 1)
            acc = acc * base;
        if (acc.is_zero())
            return acc;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

/// Artin-Hasse exponential with respect to the Frobenius lift:
/// E_1(x) = exp(sum_{n>=0} f^n(x)/p^n), evaluated through the ghost-Witt
/// factorization E_1(x) = prod_m AH(x_m) with p^n x_n = f^n(x) -
/// sum_{m<n} p^m x_m^{p^{n-m}}.  Every x_m is p-integral here, so the whole
/// computation stays in D; divergence surfaces as an inexact division or a
/// series cap violation.
inline RingElem artin_hasse_exp_D(const FrobeniusD& frob, const ArtinHasseSeries& ah,
                                  const RingElem& x) {
    const CtxPtr& ctx = frob.ctx();
    if (x.tag() != Ring::D)
        throw PreconditionError("E_1 expects a D element");
    std::vector<RingElem> witt;
    RingElem fn = x; // f^n(x)
    RingElem result = RingElem::scalar(ctx, Ring::D, 1);
    const unsigned cap = ctx->params().iterate_cap() + ctx->params().n_prec + 2;
    for (unsigned n = 0;; ++n) {
        if (n > cap)
            throw InexactDivision("E_1: ghost recursion did not terminate");
        RingElem acc = fn;
        bool alive = !fn.is_zero();
        for (unsigned m = 0; m < n; ++m) {
            if (witt[m].is_zero())
                continue;
            std::uint64_t expnt = 1;
            for (unsigned i = 0; i < n - m; ++i)
                expnt *= ctx->p();
            RingElem pw = pd_pow(witt[m], expnt);
            if (!pw.is_zero())
                alive = true;
            acc = acc - pw.mul_pk(m);
        }
        if (!alive && acc.is_zero())
            break;
        RingElem xn = acc.div_pk(n);
        witt.push_back(xn);
        if (!xn.is_zero())
            result = result * ah.eval(xn);
        fn = frob.apply(fn);
    }
    return result;
}

/// The coefficient extraction of s_q: (1/p) log(f(w)/w^p) for a unit w of D.
/// For w = E_1(x) this returns -x on the nose.
inline RingElem frobenius_log_ratio(const FrobeniusD& frob, const RingElem& w) {
    const CtxPtr& ctx = frob.ctx();
    RingElem fw = frob.apply(w);
    RingElem wp = pd_pow(w, ctx->p());
    RingElem ratio = fw * pd_inverse(wp);
    RingElem lg = pd_log(ratio);
    return lg.div_pk(1);
}

} // namespace syntomic
