#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <vector>

#include "monomial.hpp"

namespace syntomic {

/// The truncated coefficient rings.  K is the residue-field model (Laurent
/// polynomials over F_p), A0 its unramified lift, B = A0[[X]] mod X^M,
/// A = B/(X^e - p), and D the divided-power envelope of B -> A truncated at
/// level L.  D elements are kept in the normal form produced by the rewrite
/// X^e u^[j] = p u^[j] + (j+1) u^[j+1], so every stored monomial has X-degree
/// below e; on that basis D is a free module and equality is literal.
enum class Ring { K, A0, B, A, D };

inline const char* ring_name(Ring r) {
    switch (r) {
    case Ring::K: return "k";
    case Ring::A0: return "A0";
    case Ring::B: return "B";
    case Ring::A: return "A";
    case Ring::D: return "D";
    }
    return "?";
}

class RingElem {
  public:
    using Term = std::pair<Monomial, coeff_t>;

    RingElem() = default;
    RingElem(CtxPtr ctx, Ring tag) : ctx_(std::move(ctx)), tag_(tag) {}

    static RingElem zero(CtxPtr ctx, Ring tag) { return RingElem(std::move(ctx), tag); }

    static RingElem scalar(CtxPtr ctx, Ring tag, long long v) {
        RingElem r(ctx, tag);
        coeff_t c = ctx->mod().reduce_int(v);
        if (tag == Ring::K)
            c %= ctx->p();
        if (c)
            r.terms_.push_back({Monomial(0, 0, Multidegree{ctx->nvars(), {}}), c});
        return r;
    }

    static RingElem monomial(CtxPtr ctx, Ring tag, unsigned j, unsigned d,
                             const Multidegree& a, long long v = 1) {
        RingElem r(ctx, tag);
        coeff_t c = ctx->mod().reduce_int(v);
        if (c) {
            r.terms_.push_back({Monomial(j, d, a), c});
            r.normalize();
        }
        return r;
    }

    /// The variable T_i (1-based) as a ring element.
    static RingElem var(CtxPtr ctx, Ring tag, unsigned i, int exponent = 1) {
        Multidegree a{ctx->nvars(), {}};
        a.c[i - 1] = exponent;
        return monomial(std::move(ctx), tag, 0, 0, a);
    }

    /// X (only meaningful for B, A, D).
    static RingElem x(CtxPtr ctx, Ring tag, unsigned power = 1) {
        Multidegree a{ctx->nvars(), {}};
        return monomial(std::move(ctx), tag, 0, power, a);
    }

    /// u^[j] as a D element.
    static RingElem pd_gen(CtxPtr ctx, unsigned j) {
        Multidegree a{ctx->nvars(), {}};
        return monomial(std::move(ctx), Ring::D, j, 0, a);
    }

    const CtxPtr& ctx() const { return ctx_; }
    Ring tag() const { return tag_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    coeff_t coeff(const Monomial& mkey) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), mkey,
                                   [](const Term& t, const Monomial& k) { return t.first < k; });
        return (it != terms_.end() && it->first == mkey) ? it->second : 0;
    }
    coeff_t constant_coeff() const {
        return coeff(Monomial(0, 0, Multidegree{ctx_->nvars(), {}}));
    }

    RingElem operator-() const {
        RingElem r(*this);
        for (auto& t : r.terms_)
            t.second = tag_ == Ring::K ? (coeff_t)((ctx_->p() - t.second) % ctx_->p())
                                       : modulus().neg(t.second);
        return r;
    }

    RingElem operator+(const RingElem& o) const {
        check_compat(o);
        RingElem r(ctx_, tag_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin(), b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first))
                r.terms_.push_back(*a++);
            else if (a == terms_.end() || b->first < a->first)
                r.terms_.push_back(*b++);
            else {
                coeff_t c = modulus().add(a->second, b->second);
                if (tag_ == Ring::K)
                    c %= ctx_->p();
                if (c)
                    r.terms_.push_back({a->first, c});
                ++a;
                ++b;
            }
        }
        return r;
    }
    RingElem operator-(const RingElem& o) const { return *this + (-o); }

    RingElem operator*(const RingElem& o) const {
        check_compat(o);
        RingElem r(ctx_, tag_);
        if (is_zero() || o.is_zero())
            return r;
        const unsigned m = ctx_->nvars();
        std::map<std::uint64_t, coeff_t> acc;
        for (const auto& [ma, ca] : terms_)
            for (const auto& [mb, cb] : o.terms_) {
                coeff_t c = modulus().mul(ca, cb);
                if (!c)
                    continue;
                if (tag_ == Ring::D) {
                    // divided-power law u^[i] u^[j] = binom(i+j, i) u^[i+j];
                    // levels beyond the truncation die and must not be packed
                    if (ma.j() + mb.j() > ctx_->params().pd_level)
                        continue;
                    c = modulus().mul(c, ctx_->binom(ma.j() + mb.j(), ma.j()));
                    if (!c)
                        continue;
                }
                Monomial mk = Monomial::product(ma, mb, m);
                auto [it, fresh] = acc.try_emplace(mk.key, 0);
                it->second = modulus().add(it->second, c);
                if (!it->second)
                    acc.erase(it);
            }
        r.terms_.reserve(acc.size());
        for (const auto& [k, c] : acc)
            r.terms_.push_back({Monomial(k), c});
        r.normalize();
        return r;
    }

    RingElem scaled(long long v) const {
        RingElem r(ctx_, tag_);
        coeff_t c = modulus().reduce_int(v);
        if (tag_ == Ring::K)
            c %= ctx_->p();
        for (const auto& [mk, cc] : terms_) {
            coeff_t nc = modulus().mul(cc, c);
            if (tag_ == Ring::K)
                nc %= ctx_->p();
            if (nc)
                r.terms_.push_back({mk, nc});
        }
        return r;
    }
    RingElem scaled_c(coeff_t c) const {
        RingElem r(ctx_, tag_);
        for (const auto& [mk, cc] : terms_) {
            coeff_t nc = modulus().mul(cc, c);
            if (tag_ == Ring::K)
                nc %= ctx_->p();
            if (nc)
                r.terms_.push_back({mk, nc});
        }
        return r;
    }
    RingElem mul_pk(unsigned k) const {
        if (tag_ == Ring::K)
            return k == 0 ? *this : RingElem(ctx_, tag_);
        RingElem r(ctx_, tag_);
        for (const auto& [mk, cc] : terms_) {
            coeff_t nc = modulus().mul_pk(cc, k);
            if (nc)
                r.terms_.push_back({mk, nc});
        }
        return r;
    }

    /// Exact division of every coefficient by p^k; throws InexactDivision.
    RingElem div_pk(unsigned k) const {
        RingElem r(ctx_, tag_);
        for (const auto& [mk, cc] : terms_)
            r.terms_.push_back({mk, modulus().div_pk(cc, k)});
        return r;
    }

    bool divisible_pk(unsigned k) const {
        for (const auto& [mk, cc] : terms_)
            if (cc % modulus().ppow(k) != 0)
                return false;
        return true;
    }

    /// Minimum coefficient valuation (working precision if zero).
    unsigned min_val() const {
        unsigned v = modulus().n();
        for (const auto& [mk, cc] : terms_)
            v = std::min(v, modulus().val(cc));
        return v;
    }

    bool operator==(const RingElem& o) const {
        return tag_ == o.tag_ && terms_ == o.terms_;
    }

    /// Equality after reduction to the reported precision p^{n_prec}.
    bool eq_reported(const RingElem& o) const {
        check_compat(o);
        return (*this - o).divisible_pk(ctx_->params().n_prec);
    }

    /// Frobenius on K, A0, B: T_i -> T_i^p, X -> X^p, identity on scalars.
    /// The result is re-truncated (X-degree and window); strict mode flags
    /// dropped terms.
    RingElem frobenius() const {
        if (tag_ == Ring::A || tag_ == Ring::D)
            throw PreconditionError("frobenius on this ring goes through the PD layer");
        RingElem r(ctx_, tag_);
        const unsigned m = ctx_->nvars();
        const unsigned M = ctx_->params().x_trunc;
        std::map<std::uint64_t, coeff_t> acc;
        for (const auto& [mk, cc] : terms_) {
            unsigned nd = mk.d() * (unsigned)ctx_->p();
            if (tag_ == Ring::B && nd >= M) {
                flag_drop("frobenius: X-degree left the truncation");
                continue;
            }
            Multidegree na = mk.alpha(m).scaled((long long)ctx_->p());
            if (!na.in_window(ctx_->params().win)) {
                flag_drop("frobenius: multidegree left the window");
                continue;
            }
            acc[Monomial(0, nd, na).key] = cc;
        }
        for (const auto& [k, c] : acc)
            r.terms_.push_back({Monomial(k), c});
        return r;
    }

    /// The projection B -> A (rewrite X^e = p) or D -> A (kill u^[j], j>=1).
    RingElem project_to_A() const {
        if (tag_ != Ring::B && tag_ != Ring::D)
            throw PreconditionError("project_to_A expects a B or D element");
        RingElem r(ctx_, Ring::A);
        for (const auto& [mk, cc] : terms_) {
            if (mk.j() != 0)
                continue;
            r.terms_.push_back({mk, cc});
        }
        r.normalize();
        return r;
    }

    /// Reduction A0 -> k (and A -> A/pi-power style reductions go through
    /// forms, not here).
    RingElem reduce_mod_p() const {
        if (tag_ != Ring::A0 && tag_ != Ring::K)
            throw PreconditionError("reduce_mod_p expects an A0 element");
        RingElem r(ctx_, Ring::K);
        for (const auto& [mk, cc] : terms_) {
            coeff_t c = cc % ctx_->p();
            if (c)
                r.terms_.push_back({mk, c});
        }
        return r;
    }

    /// Canonical lift k -> A0.
    RingElem lift_to_A0() const {
        if (tag_ != Ring::K)
            throw PreconditionError("lift_to_A0 expects a k element");
        RingElem r(ctx_, Ring::A0);
        r.terms_ = terms_;
        return r;
    }

    RingElem retag(Ring t) const {
        RingElem r(ctx_, t);
        r.terms_ = terms_;
        r.normalize();
        return r;
    }

    /// Drop monomials outside the multidegree window (strict mode flags).
    RingElem window_clamped() const {
        RingElem r(ctx_, tag_);
        for (const auto& [mk, cc] : terms_) {
            if (mk.alpha(ctx_->nvars()).in_window(ctx_->params().win))
                r.terms_.push_back({mk, cc});
            else
                flag_drop("multidegree left the window");
        }
        return r;
    }

    bool in_window() const {
        for (const auto& [mk, cc] : terms_)
            if (!mk.alpha(ctx_->nvars()).in_window(ctx_->params().win))
                return false;
        return true;
    }

    /// Exact division by X (throws if some monomial has no X factor).
    RingElem div_x() const {
        RingElem r(ctx_, tag_);
        for (const auto& [mk, cc] : terms_) {
            if (mk.d() == 0)
                throw InexactDivision("element is not divisible by X");
            r.terms_.push_back({mk.with_d(mk.d() - 1), cc});
        }
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
        return r;
    }

    /// Reduce all coefficients to the reported precision.
    RingElem reported() const {
        RingElem r(ctx_, tag_);
        for (const auto& [mk, cc] : terms_) {
            coeff_t c = modulus().to_precision(cc, ctx_->params().n_prec);
            if (c)
                r.terms_.push_back({mk, c});
        }
        return r;
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [mk, cc] : terms_) {
            if (!first)
                os << " + ";
            first = false;
            os << cc;
            Multidegree a = mk.alpha(ctx_->nvars());
            if (!a.is_zero())
                os << "*T^" << a.str();
            if (mk.d())
                os << "*X^" << mk.d();
            if (mk.j())
                os << "*u[" << mk.j() << "]";
        }
        return os.str();
    }

  private:
    const Modulus& modulus() const { return ctx_->mod(); }

    void check_compat(const RingElem& o) const {
        if (tag_ != o.tag_ || !(ctx_->mod() == o.ctx_->mod()))
            throw PreconditionError("ring elements from incompatible contexts");
    }

    void flag_drop(const char* what) const {
        if (ctx_->params().strict)
            throw TruncationError(what);
    }

    /// Restore the tag's canonical form.  For D this applies the rewrite
    /// X^d u^[j] = X^{d mod e} sum_i binom(t,i) i! binom(i+j,i) p^{t-i} u^[i+j]
    /// (t = d div e); levels above pd_level vanish in the truncated envelope.
    void normalize() {
        const unsigned m = ctx_->nvars();
        const unsigned e = ctx_->e();
        const unsigned M = ctx_->params().x_trunc;
        const unsigned L = ctx_->params().pd_level;
        const Modulus& md = modulus();

        bool need = false;
        for (const auto& [mk, cc] : terms_) {
            switch (tag_) {
            case Ring::K:
                if (cc >= ctx_->p())
                    need = true;
                break;
            case Ring::A0:
                break;
            case Ring::B:
                if (mk.d() >= M)
                    need = true;
                break;
            case Ring::A:
                if (mk.d() >= e)
                    need = true;
                break;
            case Ring::D:
                if (mk.d() >= e || mk.j() > L)
                    need = true;
                break;
            }
            if (mk.j() != 0 && tag_ != Ring::D)
                throw PreconditionError("PD generator in a non-PD ring");
        }
        if (!need) {
            std::sort(terms_.begin(), terms_.end(),
                      [](const Term& a, const Term& b) { return a.first < b.first; });
            return;
        }

        std::map<std::uint64_t, coeff_t> acc;
        auto put = [&](Monomial mk, coeff_t c) {
            if (!c)
                return;
            auto [it, fresh] = acc.try_emplace(mk.key, 0);
            it->second = md.add(it->second, c);
            if (!it->second)
                acc.erase(it);
        };
        for (const auto& [mk, cc] : terms_) {
            switch (tag_) {
            case Ring::K:
                put(mk, cc % ctx_->p());
                break;
            case Ring::A0:
                put(mk, cc);
                break;
            case Ring::B:
                if (mk.d() >= M)
                    flag_drop("X-degree reached the truncation bound");
                else
                    put(mk, cc);
                break;
            case Ring::A: {
                unsigned t = mk.d() / e, rd = mk.d() % e;
                put(mk.with_d(rd), md.mul_pk(cc, t));
                break;
            }
            case Ring::D: {
                unsigned t = mk.d() / e, rd = mk.d() % e, j = mk.j();
                if (j > L)
                    break; // level truncation: u^[j] = 0 beyond L
                if (t == 0) {
                    put(mk, cc);
                    break;
                }
                for (unsigned i = 0; i <= t && i + j <= L; ++i) {
                    coeff_t c = md.mul(cc, ctx_->binom(t, i));
                    c = md.mul(c, ctx_->factorial(i));
                    c = md.mul(c, ctx_->binom(i + j, i));
                    c = md.mul_pk(c, t - i);
                    put(Monomial(i + j, rd, mk.alpha(m)), c);
                }
                break;
            }
            }
        }
        terms_.clear();
        terms_.reserve(acc.size());
        for (const auto& [k, c] : acc)
            terms_.push_back({Monomial(k), c});
    }

    CtxPtr ctx_;
    Ring tag_ = Ring::B;
    std::vector<Term> terms_;
};

} // namespace syntomic
