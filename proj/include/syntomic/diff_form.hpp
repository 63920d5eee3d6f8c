#pragma once

#include <vector>

#include "linalg.hpp"
#include "ring_elem.hpp"

namespace syntomic {

/// Differential form of pure degree over one of the ring models: a finite
/// association from wedge-monomial labels to coefficients.  Labels run over
/// dlog T_i factors plus (for B, A, D) one dX resp. dpi factor; dpi
/// coefficients are kept reduced mod pi^{e-1}, which realizes the torsion in
/// Omega_A.
class DiffForm {
  public:
    using Term = std::pair<WedgeLabel, RingElem>;

    DiffForm() = default;
    DiffForm(CtxPtr ctx, Ring tag, unsigned degree)
        : ctx_(std::move(ctx)), tag_(tag), degree_(degree) {}

    static DiffForm zero(CtxPtr ctx, Ring tag, unsigned degree) {
        return DiffForm(std::move(ctx), tag, degree);
    }

    static DiffForm from_term(const RingElem& coeff, WedgeLabel lab) {
        DiffForm f(coeff.ctx(), coeff.tag(), lab.degree());
        f.add_term(lab, coeff);
        return f;
    }

    /// dlog T_i (1-based) as a degree-1 form with coefficient 1.
    static DiffForm dlog_t(CtxPtr ctx, Ring tag, unsigned i) {
        DiffForm f(ctx, tag, 1);
        f.add_term(WedgeLabel(1u << (i - 1)), RingElem::scalar(ctx, tag, 1));
        return f;
    }
    /// dX (for B/D) resp. dpi (for A) as a degree-1 form.
    static DiffForm dx(CtxPtr ctx, Ring tag) {
        DiffForm f(ctx, tag, 1);
        f.add_term(WedgeLabel(1u << ctx->nvars()), RingElem::scalar(ctx, tag, 1));
        return f;
    }

    const CtxPtr& ctx() const { return ctx_; }
    Ring tag() const { return tag_; }
    unsigned degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    RingElem coeff(WedgeLabel lab) const {
        for (const auto& [l, c] : terms_)
            if (l == lab)
                return c;
        return RingElem::zero(ctx_, tag_);
    }

    void add_term(WedgeLabel lab, RingElem c) {
        if (lab.degree() != degree_)
            throw PreconditionError("wedge label degree mismatch");
        if (lab.bits >= (1u << max_slots()))
            throw PreconditionError("wedge label uses factors the ring lacks");
        c = normalized_coeff(lab, std::move(c));
        if (c.is_zero())
            return;
        for (auto& [l, cc] : terms_)
            if (l == lab) {
                cc = cc + c;
                if (cc.is_zero())
                    std::erase_if(terms_, [&](const Term& t) { return t.first == lab; });
                return;
            }
        terms_.push_back({lab, std::move(c)});
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return a.first < b.first; });
    }

    DiffForm operator+(const DiffForm& o) const {
        check_compat(o);
        if (degree_ != o.degree_)
            throw PreconditionError("adding forms of different degree");
        DiffForm r = *this;
        for (const auto& [l, c] : o.terms_)
            r.add_term(l, c);
        return r;
    }
    DiffForm operator-() const {
        DiffForm r = *this;
        for (auto& [l, c] : r.terms_)
            c = -c;
        return r;
    }
    DiffForm operator-(const DiffForm& o) const { return *this + (-o); }

    DiffForm scaled(long long v) const {
        DiffForm r(ctx_, tag_, degree_);
        for (const auto& [l, c] : terms_)
            r.add_term(l, c.scaled(v));
        return r;
    }
    DiffForm mul_elem(const RingElem& a) const {
        DiffForm r(ctx_, tag_, degree_);
        for (const auto& [l, c] : terms_)
            r.add_term(l, c * a);
        return r;
    }
    DiffForm mul_pk(unsigned k) const {
        DiffForm r(ctx_, tag_, degree_);
        for (const auto& [l, c] : terms_)
            r.add_term(l, c.mul_pk(k));
        return r;
    }
    DiffForm div_pk(unsigned k) const {
        DiffForm r(ctx_, tag_, degree_);
        for (const auto& [l, c] : terms_)
            r.add_term(l, c.div_pk(k));
        return r;
    }

    bool operator==(const DiffForm& o) const {
        return tag_ == o.tag_ && degree_ == o.degree_ && terms_ == o.terms_;
    }

    /// Graded-commutative product.
    DiffForm wedge(const DiffForm& o) const {
        check_compat(o);
        DiffForm r(ctx_, tag_, degree_ + o.degree_);
        for (const auto& [la, ca] : terms_)
            for (const auto& [lb, cb] : o.terms_) {
                int s = WedgeLabel::wedge_sign(la, lb);
                if (!s)
                    continue;
                RingElem c = ca * cb;
                if (s < 0)
                    c = -c;
                r.add_term(la.merged(lb), c);
            }
        return r;
    }

    /// Exterior derivative.  On dlog monomials d(x * w) = dx ^ w with dx
    /// expanded in the dlog basis; the X part uses X dlogX = dX and
    /// d(u^[j]) = u^[j-1] e X^{e-1} dX.
    DiffForm d() const {
        const unsigned m = ctx_->nvars();
        const unsigned e = ctx_->e();
        DiffForm r(ctx_, tag_, degree_ + 1);
        WedgeLabel dxl(1u << m);
        for (const auto& [lab, c] : terms_) {
            for (const auto& [mk, cc] : c.terms()) {
                Multidegree a = mk.alpha(m);
                // dlog T_i parts
                for (unsigned i = 0; i < m; ++i) {
                    if (a.c[i] == 0)
                        continue;
                    WedgeLabel ti(1u << i);
                    int s = WedgeLabel::wedge_sign(ti, lab);
                    if (!s)
                        continue;
                    RingElem t(ctx_, tag_);
                    t = RingElem::monomial(ctx_, tag_, mk.j(), mk.d(), a,
                                           s * a.c[i]).scaled_c(cc);
                    r.add_term(ti.merged(lab), t);
                }
                if (tag_ == Ring::K || tag_ == Ring::A0)
                    continue;
                // X part: d(X^d) = d X^{d-1} dX
                if (mk.d() > 0) {
                    int s = WedgeLabel::wedge_sign(dxl, lab);
                    if (s) {
                        RingElem t = RingElem::monomial(ctx_, tag_, mk.j(), mk.d() - 1, a,
                                                        s * (long long)mk.d())
                                         .scaled_c(cc);
                        r.add_term(dxl.merged(lab), t);
                    }
                }
                // PD part: d(u^[j]) = u^[j-1] e X^{e-1} dX
                if (mk.j() > 0) {
                    int s = WedgeLabel::wedge_sign(dxl, lab);
                    if (s) {
                        RingElem t = RingElem::monomial(ctx_, tag_, mk.j() - 1,
                                                        mk.d() + e - 1, a,
                                                        s * (long long)e)
                                         .scaled_c(cc);
                        r.add_term(dxl.merged(lab), t);
                    }
                }
            }
        }
        return r;
    }

    /// Inverse Cartier operator on forms over k: the distinguished
    /// representative C^{-1}(x dlog-monomial) = x^p dlog-monomial, i.e.
    /// coefficient multidegrees are scaled by p.  Out-of-window images are
    /// dropped (strict mode flags them).
    DiffForm inverse_cartier() const {
        if (tag_ != Ring::K)
            throw PreconditionError("inverse Cartier is defined over k");
        DiffForm r(ctx_, tag_, degree_);
        for (const auto& [lab, c] : terms_) {
            RingElem nc = c.frobenius();
            r.add_term(lab, nc);
        }
        return r;
    }

    /// Is d(omega) divisible by p^n (forms over A0)?  Always true for n <= 0;
    /// n beyond the reported precision is rejected.
    bool zfrak_member(int n) const {
        if (tag_ != Ring::A0)
            throw PreconditionError("zfrak membership is defined over A0");
        if (n <= 0)
            return true;
        if ((unsigned)n > ctx_->params().n_prec)
            throw PreconditionError("insufficient precision for zfrak level");
        return d().div_reported_pk((unsigned)n);
    }

    /// All coefficients divisible by p^k after reduction to reported
    /// precision.
    bool div_reported_pk(unsigned k) const {
        for (const auto& [lab, c] : terms_)
            for (const auto& [mk, cc] : c.terms())
                if (ctx_->mod().to_precision(cc, ctx_->params().n_prec) %
                    ctx_->mod().ppow(k))
                    return false;
        return true;
    }

    DiffForm window_clamped() const {
        DiffForm r(ctx_, tag_, degree_);
        for (const auto& [lab, c] : terms_)
            r.add_term(lab, c.window_clamped());
        return r;
    }

    DiffForm reported() const {
        DiffForm r(ctx_, tag_, degree_);
        for (const auto& [lab, c] : terms_)
            r.add_term(lab, c.reported());
        return r;
    }

    std::string str() const {
        if (terms_.empty())
            return "0";
        std::string s;
        for (const auto& [lab, c] : terms_) {
            if (!s.empty())
                s += "  +  ";
            s += "(" + c.str() + ") " + lab.str(ctx_->nvars());
        }
        return s;
    }

  private:
    unsigned max_slots() const {
        return ctx_->nvars() + ((tag_ == Ring::K || tag_ == Ring::A0) ? 0 : 1);
    }

    /// dpi coefficients of A-forms live in A/(pi^{e-1}), in which p = pi^e
    /// also vanishes: X-degrees >= e-1 and multiples of p are both dropped.
    RingElem normalized_coeff(WedgeLabel lab, RingElem c) const {
        if (tag_ == Ring::A && lab.has_dx(ctx_->nvars())) {
            RingElem r(ctx_, Ring::A);
            for (const auto& [mk, cc] : c.terms()) {
                coeff_t cp = cc % ctx_->p();
                if (mk.d() + 1 < ctx_->e() && cp)
                    r = r + RingElem::monomial(ctx_, Ring::A, 0, mk.d(),
                                               mk.alpha(ctx_->nvars()), 1)
                                .scaled_c(cp);
            }
            return r;
        }
        return c;
    }

    void check_compat(const DiffForm& o) const {
        if (tag_ != o.tag_)
            throw PreconditionError("forms over different rings");
    }

    CtxPtr ctx_;
    Ring tag_ = Ring::B;
    unsigned degree_ = 0;
    std::vector<Term> terms_;
};

/// F_p span data of B_s^q at a fixed multidegree: B_0 = 0, B_1 = d Omega^{q-1},
/// B_{s+1} = B_1 + C^{-1} B_s, computed by the downward recursion in the
/// multidegree (beta needs beta/p).  Vectors are label-indexed coordinates.
class BGroups {
  public:
    BGroups(CtxPtr ctx, unsigned q) : ctx_(std::move(ctx)), q_(q), fp_(ctx_->p(), 1) {
        labels_q_ = wedge_labels(ctx_->nvars(), q, false);
        labels_q1_ = q > 0 ? wedge_labels(ctx_->nvars(), q - 1, false)
                           : std::vector<WedgeLabel>{};
    }

    unsigned dim_omega() const { return (unsigned)labels_q_.size(); }
    const Modulus& fp() const { return fp_; }
    const std::vector<WedgeLabel>& labels() const { return labels_q_; }

    /// d: Omega^{q-1}(beta) -> Omega^q(beta) over F_p.
    ZnMatrix d_matrix(const Multidegree& beta) const {
        ZnMatrix d(fp_, labels_q_.size(), labels_q1_.size());
        for (std::size_t j = 0; j < labels_q1_.size(); ++j) {
            WedgeLabel lab = labels_q1_[j];
            for (unsigned i = 0; i < ctx_->nvars(); ++i) {
                if (beta.c[i] == 0)
                    continue;
                WedgeLabel ti(1u << i);
                int s = WedgeLabel::wedge_sign(ti, lab);
                if (!s)
                    continue;
                WedgeLabel tgt = ti.merged(lab);
                long long v = (long long)s * beta.c[i];
                for (std::size_t r = 0; r < labels_q_.size(); ++r)
                    if (labels_q_[r] == tgt)
                        d.at(r, j) = fp_.reduce_int(v);
            }
        }
        return d;
    }

    /// Howell span of B_s^q at multidegree beta.
    HowellForm span(unsigned s, const Multidegree& beta) const {
        if (!beta.in_window(ctx_->params().win))
            throw PreconditionError("b_group: multidegree outside the window");
        std::vector<Vec> gens;
        if (s >= 1) {
            ZnMatrix d = d_matrix(beta);
            for (std::size_t j = 0; j < d.cols; ++j) {
                Vec c = d.col(j);
                if (!detail::vec_zero(c))
                    gens.push_back(std::move(c));
            }
        }
        if (s >= 2 && beta.divisible_by(ctx_->p())) {
            HowellForm prev = span(s - 1, beta.divided(ctx_->p()));
            for (const auto& c : prev.cols())
                gens.push_back(c); // C^{-1} is the identity on label coords
        }
        return HowellForm::of(fp_, labels_q_.size(), std::move(gens));
    }

    unsigned dim(unsigned s, const Multidegree& beta) const {
        return (unsigned)span(s, beta).length();
    }

  private:
    CtxPtr ctx_;
    unsigned q_;
    Modulus fp_;
    std::vector<WedgeLabel> labels_q_, labels_q1_;
};

/// Enumerate the window multidegrees in a deterministic order.
inline std::vector<Multidegree> window_multidegrees(const CtxPtr& ctx) {
    const unsigned m = ctx->nvars();
    const int w = (int)ctx->params().win;
    std::vector<Multidegree> out;
    Multidegree cur{m, {}};
    // odometer over [-w, w]^m
    for (unsigned i = 0; i < m; ++i)
        cur.c[i] = -w;
    if (m == 0) {
        out.push_back(cur);
        return out;
    }
    while (true) {
        out.push_back(cur);
        unsigned i = 0;
        while (i < m && cur.c[i] == w) {
            cur.c[i] = -w;
            ++i;
        }
        if (i == m)
            break;
        ++cur.c[i];
    }
    return out;
}

/// Full-window F_p basis of B_s^q as forms over k (spec operation).
inline std::vector<DiffForm> b_group_basis(const CtxPtr& ctx, unsigned s, unsigned q) {
    BGroups bg(ctx, q);
    std::vector<DiffForm> out;
    for (const auto& beta : window_multidegrees(ctx)) {
        HowellForm h = bg.span(s, beta);
        for (const auto& col : h.cols()) {
            DiffForm f(ctx, Ring::K, q);
            for (std::size_t r = 0; r < col.size(); ++r)
                if (col[r])
                    f.add_term(bg.labels()[r],
                               RingElem::monomial(ctx, Ring::K, 0, 0, beta,
                                                  (long long)col[r]));
            if (!f.is_zero())
                out.push_back(std::move(f));
        }
    }
    return out;
}

} // namespace syntomic
