#pragma once

#include <map>
#include <set>
#include <optional>

#include "artin_hasse.hpp"
#include "fin_complex.hpp"
#include "symbol.hpp"

namespace syntomic {

/// The three towers of complex terms: degree-i terms are
///   J: J^[q-i] (x) Omega_B^i,  I: I^[q-i] (x) Omega_B^i,  D: D (x) Omega_B^i.
enum class Tower { J, I, D };

/// Basis of one tower term restricted to one multidegree orbit.  Entries are
/// normal-form monomials u^[j] X^{d<e} T^alpha times a wedge label; an entry
/// with scale s represents the generator p^s * monomial (the I tower is not
/// free as a subgroup of D).
struct TermBasis {
    struct Entry {
        Monomial mono;
        WedgeLabel lab;
        unsigned scale = 0;
    };
    std::vector<Entry> entries;
    std::map<std::pair<std::uint64_t, std::uint32_t>, std::size_t> index;

    std::size_t size() const { return entries.size(); }
    std::optional<std::size_t> find(const Monomial& mk, WedgeLabel lab) const {
        auto it = index.find({mk.key, lab.bits});
        return it == index.end() ? std::nullopt : std::optional(it->second);
    }
    void push(Monomial mk, WedgeLabel lab, unsigned scale) {
        index[{mk.key, lab.bits}] = entries.size();
        entries.push_back({mk, lab, scale});
    }
};

/// Realization of the syntomic complexes at the truncation: explicit bases
/// per multidegree orbit, the differential and divided-Frobenius matrices on
/// them, the mapping-fiber complexes S(q), S'(q), S_q and the maps of
/// Theorems 1 and 2.  Everything is block-diagonal over the orbits of
/// alpha -> p alpha, which is what keeps the realization small.
class SyntomicContext {
  public:
    SyntomicContext(CtxPtr ctx, unsigned q)
        : ctx_(std::move(ctx)), q_(q), frob_(ctx_), ah_(ctx_), ic_(ctx_),
          modn_(ctx_->mod_report()) {
        if (q_ >= ctx_->p())
            throw PreconditionError("q < p is required for the syntomic complexes");
        // Divided-power levels dropped by the Frobenius carry coefficients of
        // valuation >= floor(L/p)+1; the realized complexes are coherent mod
        // p^{n_prec} only once those drops vanish mod p^{n_prec + q}.
        const auto& par = ctx_->params();
        if (par.pd_level < par.p * (par.n_prec + q_ - 1))
            throw PreconditionError("pd_level too small for a coherent complex "
                                    "realization: need pd_level >= p*(n_prec+q-1)");
        build_orbits();
    }

    /// Smallest parameter profile on which the complex realization at this
    /// (p, e, q, n_prec) is coherent.
    static TruncationParams coherent_params(std::uint64_t p, unsigned e, unsigned q,
                                            unsigned n_prec, unsigned m_pbase = 1,
                                            unsigned win = 0) {
        TruncationParams par;
        par.p = p;
        par.e = e;
        par.q = q;
        par.n_prec = n_prec;
        par.m_pbase = m_pbase;
        par.pd_level = (unsigned)p * (n_prec + q - 1);
        par.x_trunc = e * (par.pd_level + 1) + e;
        par.win = win ? win : (unsigned)(p * p);
        par.validate();
        return par;
    }

    SyntomicContext(const SyntomicContext&) = delete;

    const CtxPtr& ctx() const { return ctx_; }
    unsigned q() const { return q_; }
    unsigned top_degree() const { return q_ + 1; }
    const FrobeniusD& frob() const { return frob_; }
    const ArtinHasseSeries& ah() const { return ah_; }
    const IdealCoeffs& ideal_coeffs() const { return ic_; }
    const Modulus& modn() const { return modn_; }

    // ---- orbит structure ----------------------------------------------

    std::size_t orbit_count() const { return orbits_.size(); }
    const std::vector<Multidegree>& orbit(std::size_t o) const { return orbits_[o]; }
    std::optional<std::size_t> orbit_of(const Multidegree& a) const {
        auto it = orbit_of_.find(Monomial(0, 0, a).key);
        return it == orbit_of_.end() ? std::nullopt : std::optional(it->second);
    }

    // ---- bases and matrices --------------------------------------------

    unsigned tower_level(Tower t, unsigned deg) const {
        if (t == Tower::D)
            return 0;
        return deg >= q_ ? 0 : q_ - deg;
    }

    const TermBasis& basis(Tower t, unsigned deg, std::size_t o) const {
        auto key = std::make_tuple((int)t, deg, o);
        auto it = bases_.find(key);
        if (it != bases_.end())
            return it->second;
        TermBasis tb;
        const auto& par = ctx_->params();
        unsigned r = tower_level(t, deg);
        auto labs = wedge_labels(ctx_->nvars(), deg, true);
        // The term is the abstract reduction (ideal (x) Z/p^N): free on the
        // scaled generators p^{c(r,j)} u^[j] X^d T^a (x) label, each of full
        // order p^N.
        for (unsigned j = (t == Tower::J ? r : 0); j <= par.pd_level; ++j) {
            unsigned scale = (t == Tower::I) ? ic_.c(r, j) : 0;
            for (unsigned d = 0; d < ctx_->e(); ++d)
                for (const auto& a : orbits_[o])
                    for (auto lab : labs)
                        tb.push(Monomial(j, d, a), lab, scale);
        }
        return bases_.emplace(key, std::move(tb)).first->second;
    }

    /// Coordinates of a (working-precision) form over D in the given term
    /// basis, reduced to the reported precision.  Monomials outside the
    /// window are dropped; monomials violating the tower's ideal constraint
    /// signal an error.
    Vec decompose(Tower t, unsigned deg, std::size_t o, const DiffForm& w) const {
        const TermBasis& tb = basis(t, deg, o);
        Vec v(tb.size(), 0);
        for (const auto& [lab, c] : w.terms())
            for (const auto& [mk, cc] : c.terms()) {
                if (!mk.alpha(ctx_->nvars()).in_window(ctx_->params().win))
                    continue;
                auto idx = tb.find(mk, lab);
                if (!idx)
                    throw PreconditionError("decompose: monomial outside the term "
                                            "module (orbit or ideal violation)");
                unsigned s = tb.entries[*idx].scale;
                // divide at working precision, then report
                coeff_t q = ctx_->mod().div_pk(cc, s);
                coeff_t rc = ctx_->mod().to_precision(q, ctx_->params().n_prec);
                if (rc)
                    v[*idx] = modn_.add(v[*idx], rc);
            }
        return v;
    }

    /// Split a full form into per-orbit coordinate vectors.
    std::map<std::size_t, Vec> decompose_all(Tower t, unsigned deg,
                                             const DiffForm& w) const {
        std::map<std::size_t, DiffForm> parts;
        for (const auto& [lab, c] : w.terms())
            for (const auto& [mk, cc] : c.terms()) {
                Multidegree a = mk.alpha(ctx_->nvars());
                if (!a.in_window(ctx_->params().win))
                    continue;
                auto o = orbit_of(a);
                if (!o)
                    continue;
                auto [it, fresh] = parts.try_emplace(
                    *o, DiffForm::zero(ctx_, Ring::D, deg));
                it->second.add_term(lab, RingElem::monomial(ctx_, Ring::D, mk.j(),
                                                            mk.d(), a, 1)
                                             .scaled_c(cc));
            }
        std::map<std::size_t, Vec> out;
        for (const auto& [o, f] : parts)
            out[o] = decompose(t, deg, o, f);
        return out;
    }

    DiffForm from_coords(Tower t, unsigned deg, std::size_t o, const Vec& v) const {
        const TermBasis& tb = basis(t, deg, o);
        DiffForm w = DiffForm::zero(ctx_, Ring::D, deg);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i])
                continue;
            const auto& en = tb.entries[i];
            coeff_t c = modn_.mul_pk(v[i] % modn_.pn(), en.scale);
            w.add_term(en.lab, RingElem::monomial(ctx_, Ring::D, en.mono.j(),
                                                  en.mono.d(),
                                                  en.mono.alpha(ctx_->nvars()), 1)
                                   .scaled_c(c));
        }
        return w;
    }

    DiffForm entry_form(Tower t, unsigned deg, std::size_t o, std::size_t i) const {
        const auto& en = basis(t, deg, o).entries[i];
        return DiffForm::from_term(
            RingElem::monomial(ctx_, Ring::D, en.mono.j(), en.mono.d(),
                               en.mono.alpha(ctx_->nvars()), 1)
                .mul_pk(en.scale),
            en.lab);
    }

    const ZnMatrix& d_matrix(Tower t, unsigned deg, std::size_t o) const {
        auto key = std::make_tuple(0, (int)t, deg, o);
        auto it = mats_.find(key);
        if (it != mats_.end())
            return it->second;
        const TermBasis& src = basis(t, deg, o);
        ZnMatrix M(modn_, basis(t, deg + 1, o).size(), src.size());
        for (std::size_t i = 0; i < src.size(); ++i)
            M.set_col(i, decompose(t, deg + 1, o, entry_form(t, deg, o, i).d()));
        return mats_.emplace(key, std::move(M)).first->second;
    }

    /// f_q = f/p^q, from the J or I tower into the D tower, same degree.
    const ZnMatrix& fq_matrix(Tower t, unsigned deg, std::size_t o) const {
        auto key = std::make_tuple(1, (int)t, deg, o);
        auto it = mats_.find(key);
        if (it != mats_.end())
            return it->second;
        const TermBasis& src = basis(t, deg, o);
        ZnMatrix M(modn_, basis(Tower::D, deg, o).size(), src.size());
        for (std::size_t i = 0; i < src.size(); ++i)
            M.set_col(i, decompose(Tower::D, deg, o,
                                   frob_.f_q(entry_form(t, deg, o, i), q_)
                                       .window_clamped()));
        return mats_.emplace(key, std::move(M)).first->second;
    }

    // ---- the mapping-fiber complexes -----------------------------------

    /// MF(1 - f_q : tower -> D), degrees 0..q+1, optionally truncated to
    /// degrees >= cutoff on both sides before taking the fiber.
    const FinComplex& fiber_complex(Tower t, unsigned cutoff, std::size_t o) const {
        auto key = std::make_tuple((int)t, cutoff, o);
        auto it = fibers_.find(key);
        if (it != fibers_.end())
            return it->second;
        FinComplex C;
        C.mod = modn_;
        unsigned n = top_degree() + 1;
        auto srank = [&](unsigned i) {
            return i < n && i >= cutoff ? basis(t, i, o).size() : 0;
        };
        auto drank = [&](unsigned i) {
            return i < n && i >= cutoff ? basis(Tower::D, i, o).size() : 0;
        };
        for (unsigned i = 0; i < n; ++i) {
            std::size_t rs = srank(i), rd = i ? drank(i - 1) : 0;
            C.terms.emplace_back(modn_, rs + rd);
        }
        for (unsigned i = 0; i + 1 < n; ++i) {
            ZnMatrix M(modn_, C.terms[i + 1].rank, C.terms[i].rank);
            std::size_t rs = srank(i), rd = i ? drank(i - 1) : 0;
            std::size_t rs1 = srank(i + 1);
            if (rs && rs1) {
                const ZnMatrix& d = d_matrix(t, i, o);
                for (std::size_t r = 0; r < rs1; ++r)
                    for (std::size_t c = 0; c < rs; ++c)
                        M.at(r, c) = d.at(r, c);
            }
            if (rs && drank(i)) {
                const ZnMatrix& fq = fq_matrix(t, i, o);
                const TermBasis& tb = basis(t, i, o);
                const TermBasis& td = basis(Tower::D, i, o);
                for (std::size_t r = 0; r < drank(i); ++r)
                    for (std::size_t c = 0; c < rs; ++c) {
                        // 1 - f_q: the inclusion contributes p^{scale} times
                        // the matching D-basis slot.
                        coeff_t v = modn_.neg(fq.at(r, c));
                        M.at(rs1 + r, c) = v;
                    }
                for (std::size_t c = 0; c < rs; ++c) {
                    auto slot = td.find(tb.entries[c].mono, tb.entries[c].lab);
                    if (!slot)
                        throw PreconditionError("tower term is not inside D term");
                    M.at(rs1 + *slot, c) =
                        modn_.add(M.at(rs1 + *slot, c),
                                  modn_.ppow(tb.entries[c].scale));
                }
            }
            if (rd && i < n && i >= 1 && drank(i)) {
                const ZnMatrix& dD = d_matrix(Tower::D, i - 1, o);
                for (std::size_t r = 0; r < drank(i); ++r)
                    for (std::size_t c = 0; c < rd; ++c)
                        M.at(rs1 + r, rs + c) = modn_.neg(dD.at(r, c));
            }
            C.diffs.push_back(std::move(M));
        }
        return fibers_.emplace(key, std::move(C)).first->second;
    }

    const FinComplex& syntomic_complex(std::size_t o) const {
        return fiber_complex(Tower::J, 0, o);
    }
    const FinComplex& syntomic_prime_complex(std::size_t o) const {
        return fiber_complex(Tower::I, 0, o);
    }
    const FinComplex& modified_complex(std::size_t o) const {
        return fiber_complex(Tower::I, q_ >= 2 ? q_ - 2 : 0, o);
    }

    const CohomologyData& fiber_cohomology(Tower t, unsigned cutoff, std::size_t o,
                                           unsigned deg) const {
        auto key = std::make_tuple((int)t, cutoff, o, deg);
        auto it = cohs_.find(key);
        if (it != cohs_.end())
            return it->second;
        CohomologyData h = cohomology(fiber_complex(t, cutoff, o), deg);
        return cohs_.emplace(key, std::move(h)).first->second;
    }

    /// Aggregated invariant factors over all orbits.
    std::vector<unsigned> fiber_invariants(Tower t, unsigned cutoff, unsigned deg) const {
        std::vector<unsigned> inv;
        for (std::size_t o = 0; o < orbit_count(); ++o) {
            auto h = fiber_cohomology(t, cutoff, o, deg).invariants;
            inv.insert(inv.end(), h.begin(), h.end());
        }
        std::sort(inv.begin(), inv.end());
        return inv;
    }

    // ---- U_X and S^q (Theorem 1) ---------------------------------------

    /// Span of U_X(D (x) Omega^{q-1}) in the D tower at degree q-1:
    /// generated by X*D, D (x) Omega^{q-2} ^ dX, and I.
    const HowellForm& ux_span(std::size_t o) const {
        auto it = ux_.find(o);
        if (it != ux_.end())
            return it->second;
        unsigned deg = q_ - 1;
        const TermBasis& tb = basis(Tower::D, deg, o);
        std::vector<Vec> gens;
        for (std::size_t i = 0; i < tb.size(); ++i) {
            const auto& en = tb.entries[i];
            // dX part
            if (en.lab.has_dx(ctx_->nvars())) {
                Vec v(tb.size(), 0);
                v[i] = 1;
                gens.push_back(std::move(v));
            }
            // X * monomial
            DiffForm xf = entry_form(Tower::D, deg, o, i)
                              .mul_elem(RingElem::x(ctx_, Ring::D, 1));
            gens.push_back(decompose(Tower::D, deg, o, xf));
        }
        // I part
        const TermBasis& ti = basis(Tower::I, deg, o);
        for (std::size_t i = 0; i < ti.size(); ++i)
            gens.push_back(decompose(Tower::D, deg, o,
                                     entry_form(Tower::I, deg, o, i)));
        return ux_.emplace(o, HowellForm::of(modn_, tb.size(), std::move(gens)))
            .first->second;
    }

    /// (d(D (x) Omega^{q-2}) + (1 - f_q)(J (x) Omega^{q-1}))  cap  U_X.
    const HowellForm& sq_denominator(std::size_t o) const {
        auto it = sqden_.find(o);
        if (it != sqden_.end())
            return it->second;
        unsigned deg = q_ - 1;
        std::size_t dim = basis(Tower::D, deg, o).size();
        std::vector<Vec> gens;
        if (deg > 0) {
            const ZnMatrix& d = d_matrix(Tower::D, deg - 1, o);
            for (std::size_t c = 0; c < d.cols; ++c)
                gens.push_back(d.col(c));
        }
        const TermBasis& tj = basis(Tower::J, deg, o);
        const ZnMatrix& fq = fq_matrix(Tower::J, deg, o);
        for (std::size_t c = 0; c < tj.size(); ++c) {
            Vec v = decompose(Tower::D, deg, o, entry_form(Tower::J, deg, o, c));
            for (std::size_t r = 0; r < dim; ++r)
                v[r] = modn_.sub(v[r], fq.at(r, c));
            gens.push_back(std::move(v));
        }
        std::vector<Vec> inter =
            span_intersection(modn_, dim, gens, ux_span(o).cols());
        return sqden_.emplace(o, HowellForm::of(modn_, dim, std::move(inter)))
            .first->second;
    }

    /// Invariant factors of S^q = U_X / denominator, aggregated.
    std::vector<unsigned> sq_invariants() const {
        std::vector<unsigned> inv;
        for (std::size_t o = 0; o < orbit_count(); ++o) {
            auto part = subquotient_invariants(
                modn_, basis(Tower::D, q_ - 1, o).size(), ux_span(o).cols(),
                sq_denominator(o).cols());
            inv.insert(inv.end(), part.begin(), part.end());
        }
        std::sort(inv.begin(), inv.end());
        return inv;
    }

    /// Is the model form (degree q-1 over D) in the S^q denominator?
    bool in_denominator(const DiffForm& w) const {
        for (auto& [o, v] : decompose_all(Tower::D, q_ - 1, w))
            if (!sq_denominator(o).contains(v))
                return false;
        return true;
    }

    bool in_ux(const DiffForm& w) const {
        for (auto& [o, v] : decompose_all(Tower::D, q_ - 1, w))
            if (!ux_span(o).contains(v))
                return false;
        return true;
    }

    // ---- Theorem 1 maps --------------------------------------------------

    /// Class map x -> (sum_n f_q^n(dx), x) into S(q)^q = D(x)Omega^q + D(x)Omega^{q-1}.
    std::pair<DiffForm, DiffForm> class_map(const DiffForm& x) const {
        DiffForm dx = x.d();
        DiffForm w = frob_.f_q_sum(dx.window_clamped(), q_);
        return {w, x};
    }

    /// Cocycle check of a degree-q pair against the S(q) differential.
    bool class_is_cocycle(const DiffForm& w, const DiffForm& x) const {
        auto wall = decompose_all(Tower::J, q_, w);
        auto xall = decompose_all(Tower::D, q_ - 1, x);
        std::vector<std::size_t> os;
        for (auto& [o, v] : wall)
            os.push_back(o);
        for (auto& [o, v] : xall)
            if (!wall.count(o))
                os.push_back(o);
        for (std::size_t o : os) {
            const FinComplex& S = syntomic_complex(o);
            Vec vec(S.terms[q_].rank, 0);
            std::size_t rs = basis(Tower::J, q_, o).size();
            if (wall.count(o)) {
                const Vec& wv = wall[o];
                for (std::size_t i = 0; i < wv.size(); ++i)
                    vec[i] = wv[i];
            }
            if (xall.count(o)) {
                const Vec& xv = xall[o];
                for (std::size_t i = 0; i < xv.size(); ++i)
                    vec[rs + i] = xv[i];
            }
            Vec img = S.diffs[q_].apply(vec);
            if (!detail::vec_zero(img))
                return false;
        }
        return true;
    }

    /// E_q on a model form in U_X: a component c dlogT_{i_1} ^ ... becomes
    /// {E_1(c), T_{i_1}, ...}; a component b ^ ... ^ dX rewrites as
    /// (bX) dlog-monomial ^ dX/X and becomes {E_1(bX), T_{i_1}, ..., pi}.
    SymbolSum symbol_of(const DiffForm& x) const {
        if (x.degree() != q_ - 1)
            throw PreconditionError("E_q expects a degree q-1 form");
        SymbolSum out;
        for (const auto& [lab, c] : x.terms()) {
            SymbolExpr s;
            RingElem arg = lab.has_dx(ctx_->nvars())
                               ? c * RingElem::x(ctx_, Ring::D, 1)
                               : c;
            s.entries.push_back(SymbolEntry::e1(std::move(arg)));
            for (unsigned i = 0; i < ctx_->nvars(); ++i)
                if (lab.has(i))
                    s.entries.push_back(SymbolEntry::var_t(i + 1));
            if (lab.has_dx(ctx_->nvars()))
                s.entries.push_back(SymbolEntry::prime());
            out.push_back(std::move(s));
        }
        return out;
    }

    /// dlog of a symbol entry, and f_1 applied to it.  dlog T and dlog X are
    /// fixed by f_1; for E_1 units the honest form dE * E^{-1} is used.
    DlogForm entry_dlog(const SymbolEntry& en, bool apply_f1) const {
        DlogForm r = DlogForm::zero(ctx_, 1);
        switch (en.kind) {
        case SymbolEntry::VarT:
            r.add(WedgeLabel(1u << (en.t_index - 1)), RingElem::scalar(ctx_, Ring::D, 1));
            return r;
        case SymbolEntry::Prime:
            r.add(WedgeLabel(1u << ctx_->nvars()), RingElem::scalar(ctx_, Ring::D, 1));
            return r;
        case SymbolEntry::E1: {
            RingElem E = artin_hasse_exp_D(frob_, ah_, en.e1_arg);
            DiffForm dE = DiffForm::from_term(E, WedgeLabel(0)).d();
            DiffForm dlog = dE.mul_elem(pd_inverse(E));
            if (apply_f1)
                dlog = frob_.f_q(dlog, 1);
            return DlogForm::from_model(dlog);
        }
        }
        throw PreconditionError("unknown symbol entry");
    }

    /// s_q of one symbol: sum_i (-1)^{i-1} (1/p) log(f(a_i)/a_i^p) *
    /// dlog a_1 ^ ... ^ f_1(dlog a_{i+1}) ^ ...  Entries T and pi contribute
    /// nothing to the log factor.
    DlogForm s_q(const SymbolExpr& sym) const {
        if (sym.entries.size() != q_)
            throw PreconditionError("symbol length must equal q");
        DlogForm out = DlogForm::zero(ctx_, q_ - 1);
        for (std::size_t i = 0; i < sym.entries.size(); ++i) {
            const auto& en = sym.entries[i];
            RingElem c(ctx_, Ring::D);
            if (en.kind == SymbolEntry::E1) {
                RingElem E = artin_hasse_exp_D(frob_, ah_, en.e1_arg);
                c = frobenius_log_ratio(frob_, E);
            } else {
                continue; // f(T)/T^p = 1, log vanishes
            }
            DlogForm w = DlogForm::zero(ctx_, 0);
            w.add(WedgeLabel(0), RingElem::scalar(ctx_, Ring::D, 1));
            for (std::size_t jj = 0; jj < sym.entries.size(); ++jj) {
                if (jj == i)
                    continue;
                w = w.wedge(entry_dlog(sym.entries[jj], jj > i));
            }
            DlogForm term = DlogForm::zero(ctx_, q_ - 1);
            for (const auto& [lab, wc] : w.terms)
                term.add(lab, wc * c);
            out = (i % 2 == 0) ? out + term : out + (-term);
        }
        return out;
    }

    DlogForm s_q(const SymbolSum& syms) const {
        DlogForm out = DlogForm::zero(ctx_, q_ - 1);
        for (const auto& s : syms)
            out = out + s_q(s);
        return out;
    }

  private:
    void build_orbits() {
        const auto& par = ctx_->params();
        for (const auto& a : window_multidegrees(ctx_)) {
            // find the primitive ancestor inside the window
            Multidegree b = a;
            while (!b.is_zero() && b.divisible_by(par.p))
                b = b.divided(par.p);
            std::uint64_t key = Monomial(0, 0, b).key;
            if (orbit_of_.count(Monomial(0, 0, a).key))
                continue;
            if (seen_prim_.count(key))
                continue;
            seen_prim_.insert(key);
            std::vector<Multidegree> chain;
            Multidegree cur = b;
            while (cur.in_window(par.win)) {
                chain.push_back(cur);
                orbit_of_[Monomial(0, 0, cur).key] = orbits_.size();
                if (cur.is_zero())
                    break;
                cur = cur.scaled((long long)par.p);
            }
            orbits_.push_back(std::move(chain));
        }
    }

    CtxPtr ctx_;
    unsigned q_;
    FrobeniusD frob_;
    ArtinHasseSeries ah_;
    IdealCoeffs ic_;
    Modulus modn_;
    std::vector<std::vector<Multidegree>> orbits_;
    std::map<std::uint64_t, std::size_t> orbit_of_;
    std::set<std::uint64_t> seen_prim_;

    mutable std::map<std::tuple<int, unsigned, std::size_t>, TermBasis> bases_;
    mutable std::map<std::tuple<int, int, unsigned, std::size_t>, ZnMatrix> mats_;
    mutable std::map<std::tuple<int, unsigned, std::size_t>, FinComplex> fibers_;
    mutable std::map<std::tuple<int, unsigned, std::size_t, unsigned>, CohomologyData> cohs_;
    mutable std::map<std::size_t, HowellForm> ux_, sqden_;
};

} // namespace syntomic
