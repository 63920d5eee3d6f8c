#pragma once

#include "syntomic.hpp"

namespace syntomic {

/// Truncated model of Omega_A^deg / p d Omega_A^{deg-1}, per multidegree
/// orbit: the ambient free module on the A-form basis (dlogT labels with
/// X-degree < e, dpi labels with X-degree < e-1) modulo the span of
/// p d(basis of Omega_A^{deg-1}).
class AQuotientModel {
  public:
    AQuotientModel(const SyntomicContext& sc, unsigned deg) : sc_(sc), deg_(deg) {
        const CtxPtr& ctx = sc.ctx();
        const unsigned m = ctx->nvars();
        for (std::size_t o = 0; o < sc.orbit_count(); ++o) {
            TermBasis tb;
            for (auto lab : wedge_labels(m, deg, true)) {
                unsigned dmax = lab.has_dx(m) ? ctx->e() - 1 : ctx->e();
                for (unsigned d = 0; d < dmax; ++d)
                    for (const auto& a : sc.orbit(o))
                        tb.push(Monomial(0, d, a), lab, 0);
            }
            bases_.push_back(std::move(tb));
        }
        tors_.resize(sc.orbit_count());
        for (std::size_t o = 0; o < sc.orbit_count(); ++o) {
            std::vector<Vec> rg;
            // torsion of the dpi part: p * (dpi slot) vanishes in A/(pi^{e-1})
            for (std::size_t i = 0; i < bases_[o].size(); ++i)
                if (bases_[o].entries[i].lab.has_dx(m)) {
                    Vec v(bases_[o].size(), 0);
                    v[i] = sc.modn().p() % sc.modn().pn();
                    tors_[o].push_back(v);
                    rg.push_back(std::move(v));
                }
            if (deg_ > 0) {
                // p d(omega) over all lower A-basis forms in this orbit
                for (auto lab : wedge_labels(m, deg_ - 1, true)) {
                    unsigned dmax = lab.has_dx(m) ? ctx->e() - 1 : ctx->e();
                    for (unsigned d = 0; d < dmax; ++d)
                        for (const auto& a : sc.orbit(o)) {
                            DiffForm w = DiffForm::from_term(
                                RingElem::monomial(ctx, Ring::A, 0, d, a, 1), lab);
                            Vec v = decompose(o, w.d().mul_pk(1));
                            if (!detail::vec_zero(v))
                                rg.push_back(std::move(v));
                        }
                }
            }
            rel_.push_back(
                HowellForm::of(sc.modn(), bases_[o].size(), std::move(rg)));
        }
    }

    unsigned degree() const { return deg_; }
    const TermBasis& basis(std::size_t o) const { return bases_[o]; }
    /// p d Omega^{deg-1} together with the dpi torsion.
    const HowellForm& relations(std::size_t o) const { return rel_[o]; }
    /// The dpi torsion relations alone (the module structure of Omega_A^deg).
    const std::vector<Vec>& torsion_rels(std::size_t o) const { return tors_[o]; }
    const SyntomicContext& syn() const { return sc_; }

    /// Coordinates of an A-form in the ambient basis (reported precision).
    Vec decompose(std::size_t o, const DiffForm& w) const {
        if (w.tag() != Ring::A || w.degree() != deg_)
            throw PreconditionError("A-quotient: wrong ring or degree");
        const TermBasis& tb = bases_[o];
        Vec v(tb.size(), 0);
        const Modulus& modn = sc_.modn();
        for (const auto& [lab, c] : w.terms())
            for (const auto& [mk, cc] : c.terms()) {
                if (!mk.alpha(sc_.ctx()->nvars()).in_window(sc_.ctx()->params().win))
                    continue;
                coeff_t rc = sc_.ctx()->mod().to_precision(cc, modn.n());
                if (!rc)
                    continue;
                auto idx = tb.find(mk, lab);
                if (!idx)
                    throw PreconditionError("A-quotient: monomial outside basis");
                v[*idx] = modn.add(v[*idx], rc);
            }
        return v;
    }

    DiffForm from_coords(std::size_t o, const Vec& v) const {
        DiffForm w(sc_.ctx(), Ring::A, deg_);
        const TermBasis& tb = bases_[o];
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i]) {
                const auto& en = tb.entries[i];
                w.add_term(en.lab, RingElem::monomial(sc_.ctx(), Ring::A, 0,
                                                      en.mono.d(),
                                                      en.mono.alpha(sc_.ctx()->nvars()),
                                                      1)
                                       .scaled_c(v[i]));
            }
        return w;
    }

    /// Canonical residue modulo p d Omega_A^{deg-1}.
    Vec residue(std::size_t o, Vec v) const {
        rel_[o].reduce(v);
        return v;
    }

    /// Invariant factors of the quotient module, aggregated over orbits.
    std::vector<unsigned> invariants() const {
        std::vector<unsigned> out;
        for (std::size_t o = 0; o < bases_.size(); ++o) {
            std::vector<Vec> full;
            for (std::size_t i = 0; i < bases_[o].size(); ++i) {
                Vec e(bases_[o].size(), 0);
                e[i] = 1;
                full.push_back(std::move(e));
            }
            auto part = subquotient_invariants(sc_.modn(), bases_[o].size(), full,
                                               rel_[o].cols());
            out.insert(out.end(), part.begin(), part.end());
        }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    const SyntomicContext& sc_;
    unsigned deg_;
    std::vector<TermBasis> bases_;
    std::vector<HowellForm> rel_;
    std::vector<std::vector<Vec>> tors_;
};

/// Image of a span under reduction to a coarser precision p^{n'} (same
/// ambient dimension).  Used to report buffered-precision kernels mod p^N:
/// kernels of exp_p computed at the reported precision itself pick up
/// spurious p-power tails (classes of infinite order look like coboundaries
/// once multiplied into the top digits), so the Theorem 2 pipeline computes
/// at a buffered precision and reduces.
inline HowellForm reduce_span(const HowellForm& h, const Modulus& lower) {
    std::vector<Vec> gens;
    for (const auto& c : h.cols()) {
        Vec v(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            v[i] = c[i] % lower.pn();
        gens.push_back(std::move(v));
    }
    return HowellForm::of(lower, h.dim(), std::move(gens));
}

/// Monomial-wise lift Omega_A -> D (x) Omega_B: dlogT labels keep their
/// coefficients, dpi labels become dX labels.
inline DiffForm lift_A_to_D(const DiffForm& w) {
    const CtxPtr& ctx = w.ctx();
    DiffForm out(ctx, Ring::D, w.degree());
    for (const auto& [lab, c] : w.terms())
        for (const auto& [mk, cc] : c.terms())
            out.add_term(lab, RingElem::monomial(ctx, Ring::D, 0, mk.d(),
                                                 mk.alpha(ctx->nvars()), 1)
                                  .scaled_c(cc));
    return out;
}

/// Projection D (x) Omega_B -> Omega_A: kill u^[j >= 1], rewrite X^e = p,
/// dX becomes dpi (with the pi^{e-1} torsion applied by the A form).
inline DiffForm project_D_to_A(const DiffForm& w) {
    const CtxPtr& ctx = w.ctx();
    DiffForm out(ctx, Ring::A, w.degree());
    for (const auto& [lab, c] : w.terms())
        out.add_term(lab, c.project_to_A());
    return out;
}

/// The maps of Theorem 2 at the chain level: the identification (iso_one)
/// H^{q-1}(I/J) with Omega_A^{q-1}/p d Omega_A^{q-2}, the boundary chase
/// exp_p = delta o iso_one into H^q(S(q)), and psi from H^{q-1}(S'(q)).
class ExpPsi {
  public:
    explicit ExpPsi(const SyntomicContext& sc)
        : sc_(sc), qm_(sc, sc.q() - 1) {}

    const AQuotientModel& quotient_model() const { return qm_; }

    /// iso_one: omega -> p * lift(omega) as an element of
    /// (I/J)^{q-1} = I (x) Omega^{q-1} / J (x) Omega^{q-1}.
    DiffForm iso_one(const DiffForm& omega_A) const {
        return lift_A_to_D(omega_A).mul_pk(1);
    }

    /// Inverse direction on the subquotient: strip the J part, divide by p,
    /// project to A.
    DiffForm iso_one_inv(const DiffForm& w_D) const {
        DiffForm j0(sc_.ctx(), Ring::D, w_D.degree());
        for (const auto& [lab, c] : w_D.terms())
            for (const auto& [mk, cc] : c.terms())
                if (mk.j() == 0)
                    j0.add_term(lab, RingElem::monomial(sc_.ctx(), Ring::D, 0,
                                                        mk.d(),
                                                        mk.alpha(sc_.ctx()->nvars()), 1)
                                         .scaled_c(cc));
        return project_D_to_A(j0.div_pk(1));
    }

    /// The chase of Theorem 2's proof: p omega-tilde in S'(q)^{q-1} maps under
    /// the S'(q) differential to (d(p w~), (1-f_q)(p w~)), which lies in
    /// S(q)^q.  Returned as the two symbolic components.
    std::pair<DiffForm, DiffForm> exp_chase(const DiffForm& omega_A) const {
        DiffForm pw = iso_one(omega_A);
        DiffForm first = pw.d();
        DiffForm second = pw - sc_.frob().f_q(pw, sc_.q()).window_clamped();
        return {first, second};
    }

    /// exp_p of an ambient Q-basis vector as coordinates in S(q)^q (orbit o).
    const ZnMatrix& exp_matrix(std::size_t o) const {
        auto it = expm_.find(o);
        if (it != expm_.end())
            return it->second;
        unsigned q = sc_.q();
        const FinComplex& S = sc_.syntomic_complex(o);
        ZnMatrix M(sc_.modn(), S.terms[q].rank, qm_.basis(o).size());
        std::size_t rs = sc_.basis(Tower::J, q, o).size();
        for (std::size_t i = 0; i < qm_.basis(o).size(); ++i) {
            auto [w1, w2] =
                exp_chase(qm_.from_coords(o, unit_vec(qm_.basis(o).size(), i)));
            Vec a = sc_.decompose(Tower::J, q, o, w1);
            Vec b = sc_.decompose(Tower::D, q - 1, o, w2);
            Vec col(M.rows, 0);
            for (std::size_t r = 0; r < a.size(); ++r)
                col[r] = a[r];
            for (std::size_t r = 0; r < b.size(); ++r)
                col[rs + r] = b[r];
            M.set_col(i, col);
        }
        return expm_.emplace(o, std::move(M)).first->second;
    }

    /// Coboundary span of S(q) at degree q (orbit o).
    const HowellForm& boundaries(std::size_t o) const {
        return sc_.fiber_cohomology(Tower::J, 0, o, sc_.q()).boundaries;
    }

    /// exp_p is well defined on the quotient: relation generators chase into
    /// coboundaries.
    bool well_defined(std::size_t o) const {
        const ZnMatrix& M = exp_matrix(o);
        for (const auto& r : qm_.relations(o).cols())
            if (!boundaries(o).contains(M.apply(r)))
                return false;
        return true;
    }

    /// ker(exp_p) as a span in the ambient Q space (includes the relations).
    const HowellForm& ker_exp(std::size_t o) const {
        auto it = ker_.find(o);
        if (it != ker_.end())
            return it->second;
        const ZnMatrix& M = exp_matrix(o);
        const HowellForm& B = boundaries(o);
        std::size_t dim = qm_.basis(o).size();
        // { v : M v in span(B) }: kernel of [M | B] projected to v part
        ZnMatrix MB(sc_.modn(), M.rows, dim + B.ncols());
        for (std::size_t r = 0; r < M.rows; ++r) {
            for (std::size_t c = 0; c < dim; ++c)
                MB.at(r, c) = M.at(r, c);
            for (std::size_t c = 0; c < B.ncols(); ++c)
                MB.at(r, dim + c) = B.cols()[c][r];
        }
        std::vector<Vec> gens;
        for (const auto& k : kernel_gens(MB))
            gens.push_back(Vec(k.begin(), k.begin() + dim));
        for (const auto& r : qm_.relations(o).cols())
            gens.push_back(r);
        return ker_.emplace(o, HowellForm::of(sc_.modn(), dim, std::move(gens)))
            .first->second;
    }

    /// psi of a cocycle (x, y) of S'(q) (or of the modified complex) at
    /// degree q-1: the class of x in H^{q-1}(I/J) read through iso_one^{-1},
    /// as a canonical residue in the Q model.
    Vec psi_of_cocycle(std::size_t o, const Vec& z) const {
        unsigned q = sc_.q();
        const TermBasis& ti = sc_.basis(Tower::I, q - 1, o);
        DiffForm x(sc_.ctx(), Ring::D, q - 1);
        for (std::size_t i = 0; i < ti.size(); ++i) {
            if (i >= z.size())
                break;
            if (!z[i])
                continue;
            const auto& en = ti.entries[i];
            if (en.mono.j() != 0)
                continue; // J part dies in I/J
            x.add_term(en.lab,
                       RingElem::monomial(sc_.ctx(), Ring::D, 0, en.mono.d(),
                                          en.mono.alpha(sc_.ctx()->nvars()), 1)
                           .scaled_c(sc_.modn().mul_pk(z[i], en.scale)));
        }
        DiffForm a = project_D_to_A(x.div_pk(1));
        return qm_.residue(o, qm_.decompose(o, a));
    }

    /// Image of psi from H^{q-1}(S'(q)) (cutoff 0) or from the modified
    /// complex (cutoff q-2), as a span in the ambient Q space including the
    /// relations.
    HowellForm psi_image(std::size_t o, unsigned cutoff) const {
        const CohomologyData& h = sc_.fiber_cohomology(Tower::I, cutoff, o, sc_.q() - 1);
        std::vector<Vec> gens;
        for (const auto& z : h.cocycles.cols())
            gens.push_back(psi_of_cocycle(o, z));
        for (const auto& r : qm_.relations(o).cols())
            gens.push_back(r);
        return HowellForm::of(sc_.modn(), qm_.basis(o).size(), std::move(gens));
    }

  private:
    static Vec unit_vec(std::size_t n, std::size_t i) {
        Vec v(n, 0);
        v[i] = 1;
        return v;
    }

    const SyntomicContext& sc_;
    AQuotientModel qm_;
    mutable std::map<std::size_t, ZnMatrix> expm_;
    mutable std::map<std::size_t, HowellForm> ker_;
};

} // namespace syntomic
