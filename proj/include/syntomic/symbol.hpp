#pragma once

#include <variant>
#include <vector>

#include "ring_elem.hpp"

namespace syntomic {

/// One entry of a Milnor symbol in the A model: a p-base variable T_i, the
/// prime element (class of X), or an Artin-Hasse unit E_1(x) carried with its
/// PD argument so that chain-level maps can reuse the lift.
struct SymbolEntry {
    enum Kind { VarT, Prime, E1 } kind = VarT;
    unsigned t_index = 0; // for VarT (1-based)
    RingElem e1_arg;      // for E1: the argument x in D

    static SymbolEntry var_t(unsigned i) { return {VarT, i, {}}; }
    static SymbolEntry prime() { return {Prime, 0, {}}; }
    static SymbolEntry e1(RingElem x) { return {E1, 0, std::move(x)}; }
};

/// Formal Milnor symbol {a_1, ..., a_q}; purely syntactic carrier.
struct SymbolExpr {
    std::vector<SymbolEntry> entries;

    std::string str(unsigned /*m*/ = 0) const {
        std::string s = "{";
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i)
                s += ", ";
            switch (entries[i].kind) {
            case SymbolEntry::VarT:
                s += "T" + std::to_string(entries[i].t_index);
                break;
            case SymbolEntry::Prime:
                s += "pi";
                break;
            case SymbolEntry::E1:
                s += "E1(" + entries[i].e1_arg.str() + ")";
                break;
            }
        }
        return s + "}";
    }
};

/// A formal sum of symbols (E_q of a sum of dlog monomials).
using SymbolSum = std::vector<SymbolExpr>;

/// Element written in the dlog basis: a finite sum of c * dlogT_S (^ dX/X),
/// where the label's X slot means a dX/X factor.  The honest model form has
/// (c/X) ^ dX there; division by X is ill-conditioned in the truncated PD
/// normal form, so conversions only ever go model -> dlog (multiplying the
/// dX coefficient by X) and comparisons happen in dlog coordinates.
struct DlogForm {
    CtxPtr ctx;
    unsigned degree = 0;
    std::vector<std::pair<WedgeLabel, RingElem>> terms; // coeffs in D

    static DlogForm zero(CtxPtr c, unsigned deg) { return {std::move(c), deg, {}}; }

    void add(WedgeLabel lab, const RingElem& c) {
        if (lab.degree() != degree)
            throw PreconditionError("dlog label degree mismatch");
        if (c.is_zero())
            return;
        for (auto& [l, cc] : terms)
            if (l == lab) {
                cc = cc + c;
                if (cc.is_zero())
                    std::erase_if(terms, [&](const auto& t) { return t.first == lab; });
                return;
            }
        terms.push_back({lab, c});
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }

    DlogForm operator+(const DlogForm& o) const {
        DlogForm r = *this;
        for (const auto& [l, c] : o.terms)
            r.add(l, c);
        return r;
    }
    DlogForm operator-() const {
        DlogForm r = *this;
        for (auto& [l, c] : r.terms)
            c = -c;
        return r;
    }

    bool is_zero() const { return terms.empty(); }

    /// Coefficients reduced to the reported precision.
    DlogForm reported() const {
        DlogForm r = zero(ctx, degree);
        for (const auto& [l, c] : terms)
            r.add(l, c.reported());
        return r;
    }

    /// Up-conversion of a model form over D (dX coefficient gains an X).
    static DlogForm from_model(const DiffForm& f) {
        DlogForm r = zero(f.ctx(), f.degree());
        const unsigned m = f.ctx()->nvars();
        for (const auto& [lab, c] : f.terms()) {
            if (lab.has_dx(m))
                r.add(lab, c * RingElem::x(f.ctx(), Ring::D, 1));
            else
                r.add(lab, c);
        }
        return r;
    }

    /// Wedge of dlog forms (labels merge with sign, coefficients multiply).
    DlogForm wedge(const DlogForm& o) const {
        DlogForm r = zero(ctx, degree + o.degree);
        for (const auto& [la, ca] : terms)
            for (const auto& [lb, cb] : o.terms) {
                int s = WedgeLabel::wedge_sign(la, lb);
                if (!s)
                    continue;
                RingElem c = ca * cb;
                if (s < 0)
                    c = -c;
                r.add(la.merged(lb), c);
            }
        return r;
    }

    std::string str() const {
        if (terms.empty())
            return "0";
        std::string s;
        for (const auto& [lab, c] : terms) {
            if (!s.empty())
                s += "  +  ";
            std::string labstr;
            for (unsigned i = 0; i < ctx->nvars(); ++i)
                if (lab.has(i))
                    labstr += (labstr.empty() ? "" : "^") + ("dlogT" + std::to_string(i + 1));
            if (lab.has_dx(ctx->nvars()))
                labstr += (labstr.empty() ? "" : "^") + std::string("dlogX");
            s += "(" + c.str() + ") " + (labstr.empty() ? "1" : labstr);
        }
        return s;
    }
};

} // namespace syntomic
