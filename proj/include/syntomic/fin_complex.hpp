#pragma once

#include <vector>

#include "linalg.hpp"

namespace syntomic {

/// Finitely presented Z/p^n-module: rank generators modulo the column span
/// of the relation matrix (p^n is always implicit).
struct FinModule {
    Modulus mod;
    std::size_t rank = 0;
    ZnMatrix relations; // rank x (#relations); zero columns allowed

    FinModule() = default;
    FinModule(Modulus m, std::size_t r) : mod(m), rank(r), relations(m, r, 0) {}
    FinModule(Modulus m, std::size_t r, ZnMatrix rel)
        : mod(m), rank(r), relations(std::move(rel)) {}

    bool is_free() const { return relations.cols == 0; }

    std::vector<unsigned> invariants() const {
        return module_invariants(mod, rank, relations);
    }
    std::size_t length() const { return invariants_length(invariants()); }
};

/// Non-negative cochain complex of presented modules with differentials given
/// on generators.  d compose to zero and map relations into relations; this
/// is verified on construction.
struct FinComplex {
    Modulus mod;
    std::vector<FinModule> terms;
    std::vector<ZnMatrix> diffs; // diffs[i]: terms[i] -> terms[i+1]

    std::size_t top() const { return terms.empty() ? 0 : terms.size() - 1; }

    const ZnMatrix& diff(std::size_t i) const { return diffs.at(i); }

    void validate() const {
        for (std::size_t i = 0; i + 1 < terms.size(); ++i) {
            if (diffs[i].rows != terms[i + 1].rank || diffs[i].cols != terms[i].rank)
                throw PreconditionError("complex: differential shape mismatch");
            // d maps relations into the target relation span
            HowellForm relsp = HowellForm::of(mod, terms[i + 1].rank,
                                              terms[i + 1].relations.columns());
            for (std::size_t j = 0; j < terms[i].relations.cols; ++j)
                if (!relsp.contains(diffs[i].apply(terms[i].relations.col(j))))
                    throw PreconditionError("complex: differential not well defined "
                                            "on the presented module");
            if (i + 2 < terms.size()) {
                HowellForm rel2 = HowellForm::of(mod, terms[i + 2].rank,
                                                 terms[i + 2].relations.columns());
                ZnMatrix dd = diffs[i + 1].mul(diffs[i]);
                for (std::size_t j = 0; j < dd.cols; ++j)
                    if (!rel2.contains(dd.col(j)))
                        throw PreconditionError("complex: d o d != 0");
            }
        }
    }
};

/// Degreewise map of complexes commuting with the differentials.
struct ChainMap {
    FinComplex source;
    FinComplex target;
    std::vector<ZnMatrix> maps; // maps[i]: source.terms[i] -> target.terms[i]

    void validate() const {
        std::size_t n = std::min(source.terms.size(), target.terms.size());
        for (std::size_t i = 0; i + 1 < n; ++i) {
            ZnMatrix lhs = maps[i + 1].mul(source.diffs[i]);
            ZnMatrix rhs = target.diffs[i].mul(maps[i]);
            HowellForm rel = HowellForm::of(source.mod, target.terms[i + 1].rank,
                                            target.terms[i + 1].relations.columns());
            for (std::size_t j = 0; j < lhs.cols; ++j) {
                Vec d(lhs.rows);
                for (std::size_t r = 0; r < lhs.rows; ++r)
                    d[r] = source.mod.sub(lhs.at(r, j), rhs.at(r, j));
                if (!rel.contains(d))
                    throw PreconditionError("chain map: squares do not commute");
            }
        }
    }
};

/// Mapping fiber MF(f)^i = C^i + D^{i-1} with d(x, y) = (dx, f(x) - dy).
/// Comes with the canonical exact sequence 0 -> D[-1] -> MF(f) -> C -> 0.
inline FinComplex mapping_fiber(const ChainMap& f) {
    const FinComplex& C = f.source;
    const FinComplex& D = f.target;
    const Modulus& mod = C.mod;
    std::size_t n = std::max(C.terms.size(), D.terms.size() + 1);
    FinComplex MF;
    MF.mod = mod;
    auto crank = [&](std::size_t i) { return i < C.terms.size() ? C.terms[i].rank : 0; };
    auto drank = [&](std::size_t i) {
        return i < D.terms.size() ? D.terms[i].rank : (std::size_t)0;
    };
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t rc = crank(i), rd = i ? drank(i - 1) : 0;
        std::size_t nrel = (i < C.terms.size() ? C.terms[i].relations.cols : 0) +
                           (i && i - 1 < D.terms.size() ? D.terms[i - 1].relations.cols : 0);
        ZnMatrix rel(mod, rc + rd, nrel);
        std::size_t cidx = 0;
        if (i < C.terms.size())
            for (std::size_t j = 0; j < C.terms[i].relations.cols; ++j, ++cidx)
                for (std::size_t r = 0; r < rc; ++r)
                    rel.at(r, cidx) = C.terms[i].relations.at(r, j);
        if (i && i - 1 < D.terms.size())
            for (std::size_t j = 0; j < D.terms[i - 1].relations.cols; ++j, ++cidx)
                for (std::size_t r = 0; r < rd; ++r)
                    rel.at(rc + r, cidx) = D.terms[i - 1].relations.at(r, j);
        MF.terms.emplace_back(mod, rc + rd, std::move(rel));
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        ZnMatrix d(mod, MF.terms[i + 1].rank, MF.terms[i].rank);
        std::size_t rc = crank(i), rd = i ? drank(i - 1) : 0;
        // top-left: d_C
        if (i + 1 < C.terms.size())
            for (std::size_t r = 0; r < crank(i + 1); ++r)
                for (std::size_t c = 0; c < rc; ++c)
                    d.at(r, c) = C.diffs[i].at(r, c);
        // bottom-left: f
        if (i < C.terms.size() && i < D.terms.size() && i < f.maps.size())
            for (std::size_t r = 0; r < drank(i); ++r)
                for (std::size_t c = 0; c < rc; ++c)
                    d.at(crank(i + 1) + r, c) = f.maps[i].at(r, c);
        // bottom-right: -d_D
        if (i >= 1 && i < D.terms.size())
            for (std::size_t r = 0; r < drank(i); ++r)
                for (std::size_t c = 0; c < rd; ++c)
                    d.at(crank(i + 1) + r, rc + c) = mod.neg(D.diffs[i - 1].at(r, c));
        MF.diffs.push_back(std::move(d));
    }
    return MF;
}

/// Degrees below n replaced by zero.
inline FinComplex truncate_geq(const FinComplex& C, std::size_t n) {
    FinComplex R;
    R.mod = C.mod;
    for (std::size_t i = 0; i < C.terms.size(); ++i)
        R.terms.push_back(i >= n ? C.terms[i] : FinModule(C.mod, 0));
    for (std::size_t i = 0; i + 1 < C.terms.size(); ++i) {
        if (i + 1 > n && i >= n)
            R.diffs.push_back(C.diffs[i]);
        else
            R.diffs.push_back(ZnMatrix(C.mod, R.terms[i + 1].rank, R.terms[i].rank));
    }
    return R;
}

/// Cocycles, coboundaries and the invariant factors of H^i.
struct CohomologyData {
    HowellForm cocycles;    // span of cocycle representatives in R^{rank_i}
    HowellForm boundaries;  // span of coboundaries plus relations
    std::vector<unsigned> invariants;
    std::size_t length() const { return invariants_length(invariants); }
};

inline CohomologyData cohomology(const FinComplex& C, std::size_t i) {
    const Modulus& mod = C.mod;
    std::size_t rank = C.terms[i].rank;
    std::vector<Vec> zgens;
    if (i + 1 < C.terms.size() && C.terms[i + 1].rank > 0) {
        // kernel of composed map R^{rank} -> R^{rank'}/rel': stack with rel'
        const ZnMatrix& d = C.diffs[i];
        const ZnMatrix& rel = C.terms[i + 1].relations;
        ZnMatrix M(mod, C.terms[i + 1].rank, rank + rel.cols);
        for (std::size_t r = 0; r < d.rows; ++r) {
            for (std::size_t c = 0; c < rank; ++c)
                M.at(r, c) = d.at(r, c);
            for (std::size_t c = 0; c < rel.cols; ++c)
                M.at(r, rank + c) = rel.at(r, c);
        }
        for (const auto& k : kernel_gens(M)) {
            Vec v(k.begin(), k.begin() + rank);
            if (!detail::vec_zero(v))
                zgens.push_back(std::move(v));
        }
    } else {
        for (std::size_t r = 0; r < rank; ++r) {
            Vec v(rank, 0);
            v[r] = 1;
            zgens.push_back(std::move(v));
        }
    }
    std::vector<Vec> bgens;
    if (i > 0)
        for (std::size_t j = 0; j < C.terms[i - 1].rank; ++j)
            bgens.push_back(C.diffs[i - 1].col(j));
    for (std::size_t j = 0; j < C.terms[i].relations.cols; ++j)
        bgens.push_back(C.terms[i].relations.col(j));

    CohomologyData out;
    out.cocycles = HowellForm::of(mod, rank, zgens);
    out.boundaries = HowellForm::of(mod, rank, bgens);
    std::vector<Vec> zcols(out.cocycles.cols());
    std::vector<Vec> bcols(out.boundaries.cols());
    out.invariants = subquotient_invariants(mod, rank, zcols, bcols);
    return out;
}

/// Degreewise-exact sequence of complexes 0 -> A -> B -> C -> 0 given by
/// injections and projections on generators.
struct ComplexSES {
    FinComplex sub, mid, quot;
    std::vector<ZnMatrix> inj;  // sub -> mid
    std::vector<ZnMatrix> proj; // mid -> quot

    /// Verifies proj o inj = 0 and ker(proj) = im(inj) degreewise (with
    /// relations absorbed on both sides).
    void validate() const {
        const Modulus& mod = mid.mod;
        for (std::size_t i = 0; i < mid.terms.size(); ++i) {
            std::size_t rm = mid.terms[i].rank;
            ZnMatrix pi = proj[i].mul(inj[i]);
            HowellForm qrel = HowellForm::of(mod, quot.terms[i].rank,
                                             quot.terms[i].relations.columns());
            for (std::size_t j = 0; j < pi.cols; ++j)
                if (!qrel.contains(pi.col(j)))
                    throw PreconditionError("SES: proj o inj is not zero");
            // ker(proj mod rel) = im(inj) + rel
            std::vector<Vec> kergens;
            {
                const ZnMatrix& qrelm = quot.terms[i].relations;
                ZnMatrix M(mod, quot.terms[i].rank, rm + qrelm.cols);
                for (std::size_t r = 0; r < M.rows; ++r) {
                    for (std::size_t c = 0; c < rm; ++c)
                        M.at(r, c) = proj[i].at(r, c);
                    for (std::size_t c = 0; c < qrelm.cols; ++c)
                        M.at(r, rm + c) = qrelm.at(r, c);
                }
                for (const auto& k : kernel_gens(M))
                    kergens.push_back(Vec(k.begin(), k.begin() + rm));
            }
            std::vector<Vec> imgens;
            for (std::size_t j = 0; j < sub.terms[i].rank; ++j)
                imgens.push_back(inj[i].col(j));
            for (std::size_t j = 0; j < mid.terms[i].relations.cols; ++j)
                imgens.push_back(mid.terms[i].relations.col(j));
            HowellForm him = HowellForm::of(mod, rm, imgens);
            HowellForm hker = HowellForm::of(mod, rm, kergens);
            if (!him.equals_span(hker))
                throw PreconditionError("SES: not exact in the middle degreewise");
        }
    }
};

/// Snake-lemma connecting map H^i(quot) -> H^{i+1}(sub).  Input classes are
/// cocycle representatives; the output representative does not depend on the
/// lift (tested property, see the complex-engine tests).
inline Vec connecting_apply(const ComplexSES& s, std::size_t i, const Vec& z) {
    const Modulus& mod = s.mid.mod;
    // lift z through proj (modulo quot relations)
    const ZnMatrix& P = s.proj[i];
    const ZnMatrix& qrel = s.quot.terms[i].relations;
    ZnMatrix M(mod, s.quot.terms[i].rank, P.cols + qrel.cols);
    for (std::size_t r = 0; r < M.rows; ++r) {
        for (std::size_t c = 0; c < P.cols; ++c)
            M.at(r, c) = P.at(r, c);
        for (std::size_t c = 0; c < qrel.cols; ++c)
            M.at(r, P.cols + c) = qrel.at(r, c);
    }
    auto sol = solve(M, z);
    if (!sol)
        throw PreconditionError("connecting map: class does not lift");
    Vec x(sol->begin(), sol->begin() + P.cols);
    Vec w = s.mid.diffs[i].apply(x);
    // w = inj(y) + relations; solve for y
    const ZnMatrix& I1 = s.inj[i + 1];
    const ZnMatrix& mrel = s.mid.terms[i + 1].relations;
    ZnMatrix M2(mod, s.mid.terms[i + 1].rank, I1.cols + mrel.cols);
    for (std::size_t r = 0; r < M2.rows; ++r) {
        for (std::size_t c = 0; c < I1.cols; ++c)
            M2.at(r, c) = I1.at(r, c);
        for (std::size_t c = 0; c < mrel.cols; ++c)
            M2.at(r, I1.cols + c) = mrel.at(r, c);
    }
    auto sol2 = solve(M2, w);
    if (!sol2)
        throw PreconditionError("connecting map: differential of lift is not in the sub");
    return Vec(sol2->begin(), sol2->begin() + I1.cols);
}

/// The connecting map as a matrix from the cocycle generators of H^i(quot)
/// to coordinates in R^{rank_sub(i+1)}.
inline ZnMatrix connecting_map(const ComplexSES& s, std::size_t i,
                               const CohomologyData& hq) {
    const Modulus& mod = s.mid.mod;
    std::size_t n = hq.cocycles.ncols();
    ZnMatrix out(mod, s.sub.terms[i + 1].rank, n);
    for (std::size_t j = 0; j < n; ++j)
        out.set_col(j, connecting_apply(s, i, hq.cocycles.cols()[j]));
    return out;
}

} // namespace syntomic
