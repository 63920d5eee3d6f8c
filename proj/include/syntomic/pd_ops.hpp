#pragma once

#include <vector>

#include "diff_form.hpp"

namespace syntomic {

/// Divided power t^[k] of a single PD monomial t = c X^d T^a u^[j].  For
/// j >= 1 this is integral outright; for j = 0 the coefficient must be
/// divisible by p (the monomial lies in pD), otherwise the divided power does
/// not exist in D and we signal it.
inline RingElem pd_monomial_divided_power(const CtxPtr& ctx, const Monomial& mk,
                                          coeff_t c, unsigned k) {
    const Modulus& md = ctx->mod();
    if (k == 0)
        return RingElem::scalar(ctx, Ring::D, 1);
    Multidegree a = mk.alpha(ctx->nvars()).scaled((long long)k);
    coeff_t ck = md.pow(c, k);
    if (mk.j() >= 1) {
        // (c X^d T^a u^[j])^[k] = c^k X^{kd} T^{ka} * ((jk)!/((j!)^k k!)) u^[jk]
        if ((std::size_t)mk.j() * k > ctx->params().pd_level)
            return RingElem::zero(ctx, Ring::D);
        coeff_t coeff = md.mul(ck, ctx->divided_power_coeff(mk.j(), k));
        return RingElem::monomial(ctx, Ring::D, mk.j() * k, mk.d() * k, a, 1)
            .scaled_c(coeff);
    }
    // j = 0: need c^k / k! integral, i.e. v_p(c) covers v_p(k!).
    unsigned vk = ctx->fact_val(k);
    if (md.val(ck) < vk)
        throw InexactDivision("divided power of an element outside the PD ideal");
    coeff_t coeff = ctx->div_factorial(ck, k);
    return RingElem::monomial(ctx, Ring::D, 0, mk.d() * k, a, 1).scaled_c(coeff);
}

/// Divided power x^[k] for x a sum of admissible PD monomials, via the
/// binomial convolution (a + b)^[k] = sum_i a^[i] b^[k-i].
inline RingElem pd_divided_power(const RingElem& x, unsigned k) {
    const CtxPtr& ctx = x.ctx();
    if (x.tag() != Ring::D)
        throw PreconditionError("divided powers are taken in D");
    // table[i] = (partial sum of terms)^[i], built term by term
    std::vector<RingElem> table(k + 1, RingElem::zero(ctx, Ring::D));
    table[0] = RingElem::scalar(ctx, Ring::D, 1);
    for (const auto& [mk, c] : x.terms()) {
        std::vector<RingElem> next(k + 1, RingElem::zero(ctx, Ring::D));
        for (unsigned n = 0; n <= k; ++n)
            for (unsigned i = 0; i <= n; ++i) {
                if (table[n - i].is_zero())
                    continue;
                RingElem t = pd_monomial_divided_power(ctx, mk, c, i);
                next[n] = next[n] + table[n - i] * t;
            }
        table = std::move(next);
    }
    return table[k];
}

/// Frobenius on the PD envelope: f(T) = T^p, f(X) = X^p and
/// f(u^[j]) = (X^{pe} - p)^[j], computed through the divided-power law.
class FrobeniusD {
  public:
    explicit FrobeniusD(CtxPtr ctx) : ctx_(std::move(ctx)) {
        fu_ = RingElem::x(ctx_, Ring::D, ctx_->p() * ctx_->e()) -
              RingElem::scalar(ctx_, Ring::D, (long long)ctx_->p());
        cache_.push_back(RingElem::scalar(ctx_, Ring::D, 1));
    }

    const RingElem& fu_power(unsigned j) const {
        while (cache_.size() <= j)
            cache_.push_back(pd_divided_power(fu_, (unsigned)cache_.size()));
        return cache_[j];
    }

    RingElem apply(const RingElem& x) const {
        if (x.tag() != Ring::D)
            throw PreconditionError("FrobeniusD expects a D element");
        RingElem out = RingElem::zero(ctx_, Ring::D);
        for (const auto& [mk, c] : x.terms()) {
            RingElem base = RingElem::monomial(ctx_, Ring::D, 0,
                                               mk.d() * (unsigned)ctx_->p(),
                                               mk.alpha(ctx_->nvars())
                                                   .scaled((long long)ctx_->p()),
                                               1)
                                .scaled_c(c);
            out = out + base * fu_power(mk.j());
        }
        return out;
    }

    /// f on D tensor Omega^s: coefficients through f, dlog T factors pick up
    /// p each, the dX factor picks up p X^{p-1}.
    DiffForm apply_form(const DiffForm& w) const {
        if (w.tag() != Ring::D)
            throw PreconditionError("FrobeniusD expects a form over D");
        const unsigned m = ctx_->nvars();
        DiffForm out(ctx_, Ring::D, w.degree());
        for (const auto& [lab, c] : w.terms()) {
            RingElem fc = apply(c);
            unsigned tcount = lab.degree() - (lab.has_dx(m) ? 1 : 0);
            fc = fc.mul_pk(tcount);
            if (lab.has_dx(m)) {
                fc = fc.mul_pk(1);
                fc = fc * RingElem::x(ctx_, Ring::D, (unsigned)ctx_->p() - 1);
            }
            out.add_term(lab, fc);
        }
        return out;
    }

    /// f_q = f / p^q on forms over D; exactness of the division is checked.
    DiffForm f_q(const DiffForm& w, unsigned q) const {
        return apply_form(w).div_pk(q);
    }

    /// sum_{n>=0} f_q^n(w): iterates are window-clamped so the geometric
    /// series terminates; exceeding the cap signals misconfiguration.
    DiffForm f_q_sum(const DiffForm& w, unsigned q) const {
        DiffForm acc = w.window_clamped();
        DiffForm cur = acc;
        for (unsigned n = 0; n < ctx_->params().iterate_cap(); ++n) {
            if (cur.is_zero())
                return acc;
            cur = f_q(cur, q).window_clamped();
            acc = acc + cur;
        }
        if (!cur.is_zero())
            throw TruncationError("divided-Frobenius iteration cap exceeded");
        return acc;
    }

    const CtxPtr& ctx() const { return ctx_; }

  private:
    CtxPtr ctx_;
    RingElem fu_;
    mutable std::vector<RingElem> cache_;
};

/// Coefficient data of the PD ideals: I^[r] at PD slot n is p^{c(r,n)} B.
class IdealCoeffs {
  public:
    explicit IdealCoeffs(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    /// w(t) = min_{l >= t} v_p(p^l / l!), clamped at the working precision.
    unsigned w(unsigned t) const {
        const auto& par = ctx_->params();
        unsigned nwork = par.work_prec();
        // beyond this l the valuation exceeds the working precision
        unsigned lmax = (unsigned)((std::uint64_t)nwork * (par.p - 1) / (par.p - 2) + 2);
        unsigned best = nwork;
        for (unsigned l = t; l <= std::max(t, lmax); ++l) {
            unsigned v = l - ctx_->fact_val(l);
            best = std::min(best, v);
            if (l > lmax)
                break;
        }
        return best;
    }

    /// Valuation c(r, n) with I^[r] = sum_n p^{c(r,n)} B u^[n].
    unsigned c(unsigned r, unsigned n) const {
        if (n >= r)
            return 0;
        unsigned best = ctx_->params().work_prec();
        for (unsigned i = 0; i <= n; ++i) {
            unsigned v = ctx_->fact_val(n) - ctx_->fact_val(i) -
                         ctx_->fact_val(n - i); // v_p(binom(n, i))
            best = std::min(best, v + w(r - i));
        }
        return best;
    }

  private:
    CtxPtr ctx_;
};

/// Kinds of PD ideal at the truncation (J = J^[1], I = I^[1]).
struct PDIdealSpec {
    enum Kind { J, I, Jr, Ir } kind = J;
    int r = 1;

    static PDIdealSpec j() { return {J, 1}; }
    static PDIdealSpec i() { return {I, 1}; }
    static PDIdealSpec jr(int r) { return {Jr, r}; }
    static PDIdealSpec ir(int r) { return {Ir, r}; }

    int level() const { return (kind == J || kind == I) ? 1 : r; }
    bool divided_i() const { return kind == I || kind == Ir; }
};

/// Finite generating set of the requested PD ideal at the truncation.
/// J^[r] <- { u^[j] : r <= j <= L };  I^[r] <- { p^{<l>} u^[j] : j + l >= r }.
/// Negative r (and r = 0) give all of D, generated by 1.
inline std::vector<RingElem> ideal_generators(const CtxPtr& ctx, PDIdealSpec spec) {
    const auto& par = ctx->params();
    int r = spec.level();
    if (r > (int)par.pd_level)
        throw PreconditionError("ideal level exceeds pd_level");
    std::vector<RingElem> out;
    if (r <= 0) {
        out.push_back(RingElem::scalar(ctx, Ring::D, 1));
        return out;
    }
    if (!spec.divided_i()) {
        for (unsigned j = (unsigned)r; j <= par.pd_level; ++j)
            out.push_back(RingElem::pd_gen(ctx, j));
        return out;
    }
    unsigned lmax = (unsigned)((std::uint64_t)par.n_prec * (par.p - 1) / (par.p - 2) + 1);
    for (unsigned j = 0; j <= par.pd_level; ++j) {
        unsigned lmin = (int)j >= r ? 0 : (unsigned)r - j;
        for (unsigned l = lmin; l <= std::max(lmin, lmax); ++l) {
            coeff_t s = ctx->p_divided(l);
            if (!s)
                continue;
            out.push_back(RingElem::pd_gen(ctx, j).scaled_c(s));
            if (l >= lmax)
                break;
        }
    }
    return out;
}

/// Slotwise membership x in I^[r] (resp. J^[r] when divided_i is false).
inline bool ideal_member(const IdealCoeffs& ic, const RingElem& x, PDIdealSpec spec) {
    int r = spec.level();
    if (r <= 0)
        return true;
    for (const auto& [mk, c] : x.terms()) {
        if (!spec.divided_i()) {
            if ((int)mk.j() < r)
                return false;
        } else {
            unsigned need = ic.c((unsigned)r, mk.j());
            if (x.ctx()->mod().val(c) < need)
                return false;
        }
    }
    return true;
}

/// The divided Frobenius f_q = f/p^q on J^[r] (x) Omega^s with q = r + s.
/// Defined for 0 <= r < p only; membership of the input and exactness of the
/// division are both enforced.
inline DiffForm divided_frobenius(const FrobeniusD& frob, const DiffForm& x,
                                  unsigned r, unsigned s) {
    const CtxPtr& ctx = frob.ctx();
    if (r >= ctx->p())
        throw PreconditionError("divided Frobenius is undefined for r >= p");
    if (x.degree() != s)
        throw PreconditionError("form degree does not match s");
    IdealCoeffs ic(ctx);
    for (const auto& [lab, c] : x.terms())
        if (!ideal_member(ic, c, PDIdealSpec::jr((int)r)))
            throw PreconditionError("divided Frobenius: coefficient not in J^[r]");
    return frob.f_q(x, r + s);
}

} // namespace syntomic
