#pragma once

#include <optional>
#include <vector>

#include "zmod.hpp"

namespace syntomic {

using Vec = std::vector<coeff_t>;

/// Dense matrix over Z/p^n, row-major.
struct ZnMatrix {
    Modulus mod;
    std::size_t rows = 0, cols = 0;
    std::vector<coeff_t> a;

    ZnMatrix() = default;
    ZnMatrix(Modulus m, std::size_t r, std::size_t c)
        : mod(m), rows(r), cols(c), a(r * c, 0) {}

    static ZnMatrix identity(Modulus m, std::size_t n) {
        ZnMatrix I(m, n, n);
        for (std::size_t i = 0; i < n; ++i)
            I.at(i, i) = 1;
        return I;
    }

    coeff_t& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    coeff_t at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    Vec col(std::size_t j) const {
        Vec v(rows);
        for (std::size_t i = 0; i < rows; ++i)
            v[i] = at(i, j);
        return v;
    }
    void set_col(std::size_t j, const Vec& v) {
        for (std::size_t i = 0; i < rows; ++i)
            at(i, j) = v[i];
    }

    Vec apply(const Vec& x) const {
        Vec y(rows, 0);
        for (std::size_t i = 0; i < rows; ++i) {
            __uint128_t acc = 0;
            for (std::size_t j = 0; j < cols; ++j) {
                acc += (__uint128_t)at(i, j) * x[j];
                if ((j & 15) == 15)
                    acc %= mod.pn();
            }
            y[i] = (coeff_t)(acc % mod.pn());
        }
        return y;
    }

    ZnMatrix mul(const ZnMatrix& o) const {
        ZnMatrix r(mod, rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                coeff_t v = at(i, k);
                if (!v)
                    continue;
                for (std::size_t j = 0; j < o.cols; ++j)
                    r.at(i, j) = mod.add(r.at(i, j), mod.mul(v, o.at(k, j)));
            }
        return r;
    }

    bool is_zero() const {
        for (coeff_t v : a)
            if (v)
                return false;
        return true;
    }

    std::vector<Vec> columns() const {
        std::vector<Vec> out(cols);
        for (std::size_t j = 0; j < cols; ++j)
            out[j] = col(j);
        return out;
    }

    static ZnMatrix from_columns(Modulus m, std::size_t dim, const std::vector<Vec>& cs) {
        ZnMatrix r(m, dim, cs.size());
        for (std::size_t j = 0; j < cs.size(); ++j)
            r.set_col(j, cs[j]);
        return r;
    }
};

namespace detail {
inline void axpy(const Modulus& mod, Vec& y, coeff_t c, const Vec& x) {
    if (!c)
        return;
    for (std::size_t i = 0; i < y.size(); ++i)
        if (x[i])
            y[i] = mod.add(y[i], mod.mul(c, x[i]));
}
inline bool vec_zero(const Vec& v) {
    for (coeff_t c : v)
        if (c)
            return false;
    return true;
}
} // namespace detail

/// Canonical Howell form of a column span in (Z/p^n)^dim.  Columns are in
/// echelon order with monic pivots p^a; membership, canonical residues and
/// the module length of the span all read off directly.
class HowellForm {
  public:
    HowellForm() = default;
    HowellForm(Modulus m, std::size_t dim) : mod_(m), dim_(dim) {}

    /// Build from a generating set of columns (each of size dim).
    static HowellForm of(Modulus mod, std::size_t dim, std::vector<Vec> gens) {
        HowellForm h(mod, dim);
        // Each working item is (column, tracking) where tracking records the
        // expression in the original generators; tracking is optional.
        std::vector<Vec> work = std::move(gens);
        std::vector<Vec> pending;
        for (std::size_t r = 0; r < dim && !work.empty(); ++r) {
            // pick minimal-valuation entry at row r
            std::size_t best = work.size();
            unsigned bestv = mod.n() + 1;
            for (std::size_t j = 0; j < work.size(); ++j) {
                unsigned v = mod.val(work[j][r]);
                if (work[j][r] && v < bestv) {
                    bestv = v;
                    best = j;
                }
            }
            if (best == work.size())
                continue;
            Vec piv = std::move(work[best]);
            work.erase(work.begin() + best);
            // make monic: pivot entry = p^a
            unsigned aval = bestv;
            coeff_t unit = piv[r];
            for (unsigned i = 0; i < aval; ++i)
                unit /= mod.p();
            coeff_t iu = mod.inv_unit(unit);
            for (auto& c : piv)
                c = mod.mul(c, iu);
            // eliminate row r from the remaining columns
            for (auto& w : work) {
                if (!w[r])
                    continue;
                coeff_t f = mod.neg(w[r] / mod.ppow(aval));
                detail::axpy(mod, w, f, piv);
            }
            // Howell closure: p^{n-a} * pivot has zero at this row but may
            // contribute below it.
            if (aval > 0) {
                Vec extra(piv.size());
                for (std::size_t i = 0; i < piv.size(); ++i)
                    extra[i] = mod.mul(piv[i], mod.ppow(mod.n() - aval));
                if (!detail::vec_zero(extra))
                    work.push_back(std::move(extra));
            }
            h.cols_.push_back(std::move(piv));
            h.pivot_row_.push_back(r);
            h.pivot_val_.push_back(aval);
            // drop columns that became zero
            std::erase_if(work, [](const Vec& v) { return detail::vec_zero(v); });
        }
        // canonical reduction above pivots: entries of column k at pivot row
        // of column j (j != k) reduced mod p^{a_j}
        for (std::size_t j = 0; j < h.cols_.size(); ++j) {
            for (std::size_t k = 0; k < h.cols_.size(); ++k) {
                if (j == k)
                    continue;
                coeff_t v = h.cols_[k][h.pivot_row_[j]];
                coeff_t rem = v % mod.ppow(h.pivot_val_[j]);
                if (rem != v) {
                    coeff_t f = mod.neg((v - rem) / mod.ppow(h.pivot_val_[j]));
                    detail::axpy(mod, h.cols_[k], f, h.cols_[j]);
                }
            }
        }
        return h;
    }

    const Modulus& mod() const { return mod_; }
    std::size_t dim() const { return dim_; }
    std::size_t ncols() const { return cols_.size(); }
    const std::vector<Vec>& cols() const { return cols_; }
    std::size_t pivot_row(std::size_t j) const { return pivot_row_[j]; }
    unsigned pivot_val(std::size_t j) const { return pivot_val_[j]; }

    /// Module length (log_p of the cardinality) of the span.
    std::size_t length() const {
        std::size_t s = 0;
        for (unsigned v : pivot_val_)
            s += mod_.n() - v;
        return s;
    }

    /// Canonical residue of v modulo the span (reduces in place), returning
    /// the coordinates used.  v is a member iff the residue is zero.
    Vec reduce(Vec& v) const {
        Vec coords(cols_.size(), 0);
        for (std::size_t j = 0; j < cols_.size(); ++j) {
            coeff_t c = v[pivot_row_[j]];
            coeff_t q = c / mod_.ppow(pivot_val_[j]);
            if (q) {
                coords[j] = q;
                detail::axpy(mod_, v, mod_.neg(q), cols_[j]);
            }
        }
        return coords;
    }

    bool contains(Vec v) const {
        reduce(v);
        return detail::vec_zero(v);
    }

    bool contains_span(const HowellForm& other) const {
        for (const auto& c : other.cols_)
            if (!contains(c))
                return false;
        return true;
    }

    bool equals_span(const HowellForm& other) const {
        return cols_ == other.cols_ && pivot_row_ == other.pivot_row_;
    }

  private:
    Modulus mod_;
    std::size_t dim_ = 0;
    std::vector<Vec> cols_;
    std::vector<std::size_t> pivot_row_;
    std::vector<unsigned> pivot_val_;
};

/// Generators of { x : A x = 0 } over Z/p^n.
inline std::vector<Vec> kernel_gens(const ZnMatrix& A) {
    const Modulus& mod = A.mod;
    std::size_t R = A.rows, C = A.cols;
    std::vector<Vec> stacked(C, Vec(R + C, 0));
    for (std::size_t j = 0; j < C; ++j) {
        for (std::size_t i = 0; i < R; ++i)
            stacked[j][i] = A.at(i, j);
        stacked[j][R + j] = 1;
    }
    HowellForm h = HowellForm::of(mod, R + C, std::move(stacked));
    std::vector<Vec> out;
    for (std::size_t j = 0; j < h.ncols(); ++j) {
        if (h.pivot_row(j) >= R) {
            Vec x(C);
            for (std::size_t i = 0; i < C; ++i)
                x[i] = h.cols()[j][R + i];
            out.push_back(std::move(x));
        }
    }
    return out;
}

/// One solution of A x = b, if any.
inline std::optional<Vec> solve(const ZnMatrix& A, const Vec& b) {
    const Modulus& mod = A.mod;
    std::size_t R = A.rows, C = A.cols;
    std::vector<Vec> stacked(C, Vec(R + C, 0));
    for (std::size_t j = 0; j < C; ++j) {
        for (std::size_t i = 0; i < R; ++i)
            stacked[j][i] = A.at(i, j);
        stacked[j][R + j] = 1;
    }
    HowellForm h = HowellForm::of(mod, R + C, std::move(stacked));
    Vec v(R + C, 0);
    for (std::size_t i = 0; i < R; ++i)
        v[i] = b[i];
    // Eliminate the upper block using pivots that live there.
    for (std::size_t j = 0; j < h.ncols(); ++j) {
        std::size_t r = h.pivot_row(j);
        if (r >= R)
            break;
        coeff_t c = v[r];
        if (!c)
            continue;
        if (c % mod.ppow(h.pivot_val(j)) != 0)
            return std::nullopt;
        coeff_t q = c / mod.ppow(h.pivot_val(j));
        detail::axpy(mod, v, mod.neg(q), h.cols()[j]);
    }
    for (std::size_t i = 0; i < R; ++i)
        if (v[i])
            return std::nullopt;
    // v now holds -(solution) in the tracking block: b - A x ... the tracking
    // block accumulated the negated combination, so negate it back.
    Vec x(C);
    for (std::size_t i = 0; i < C; ++i)
        x[i] = mod.neg(v[R + i]);
    return x;
}

/// Diagonal valuations of the Smith normal form (sorted ascending).  Entries
/// equal to n correspond to diagonal zeros and are omitted.
inline std::vector<unsigned> snf_valuations(ZnMatrix A) {
    const Modulus& mod = A.mod;
    std::vector<unsigned> vals;
    std::size_t top = 0;
    while (top < A.rows && top < A.cols) {
        // locate global min-valuation entry in the trailing block
        std::size_t bi = A.rows, bj = A.cols;
        unsigned bestv = mod.n();
        for (std::size_t i = top; i < A.rows; ++i)
            for (std::size_t j = top; j < A.cols; ++j) {
                coeff_t c = A.at(i, j);
                if (!c)
                    continue;
                unsigned v = mod.val(c);
                if (v < bestv) {
                    bestv = v;
                    bi = i;
                    bj = j;
                    if (v == 0)
                        goto found;
                }
            }
    found:
        if (bi == A.rows)
            break;
        // swap into (top, top)
        for (std::size_t j = 0; j < A.cols; ++j)
            std::swap(A.at(top, j), A.at(bi, j));
        for (std::size_t i = 0; i < A.rows; ++i)
            std::swap(A.at(i, top), A.at(i, bj));
        // make pivot monic p^v
        coeff_t unit = A.at(top, top);
        for (unsigned k = 0; k < bestv; ++k)
            unit /= mod.p();
        coeff_t iu = mod.inv_unit(unit);
        for (std::size_t j = top; j < A.cols; ++j)
            A.at(top, j) = mod.mul(A.at(top, j), iu);
        // clear row and column (all entries have valuation >= bestv)
        for (std::size_t i = top + 1; i < A.rows; ++i) {
            coeff_t c = A.at(i, top);
            if (!c)
                continue;
            coeff_t f = mod.neg(c / mod.ppow(bestv));
            for (std::size_t j = top; j < A.cols; ++j)
                A.at(i, j) = mod.add(A.at(i, j), mod.mul(f, A.at(top, j)));
        }
        for (std::size_t j = top + 1; j < A.cols; ++j) {
            coeff_t c = A.at(top, j);
            if (!c)
                continue;
            coeff_t f = mod.neg(c / mod.ppow(bestv));
            for (std::size_t i = top; i < A.rows; ++i)
                A.at(i, j) = mod.add(A.at(i, j), mod.mul(f, A.at(i, top)));
        }
        vals.push_back(bestv);
        ++top;
    }
    std::sort(vals.begin(), vals.end());
    return vals;
}

/// Invariant factors of the module (Z/p^n)^rank / col-span(relations),
/// reported as the sorted list of exponents b with cyclic factors Z/p^b
/// (b = n for unconstrained generators); zero factors dropped.
inline std::vector<unsigned> module_invariants(const Modulus& mod, std::size_t rank,
                                               const ZnMatrix& relations) {
    std::vector<unsigned> diag = relations.cols ? snf_valuations(relations)
                                                : std::vector<unsigned>{};
    std::vector<unsigned> out;
    for (std::size_t i = 0; i < rank; ++i) {
        unsigned b = i < diag.size() ? std::min<unsigned>(diag[i], mod.n()) : mod.n();
        if (b)
            out.push_back(b);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Invariant factors of span(gens) / span(subs) where subs must lie inside
/// span(gens); both live in an ambient free module of dimension dim.
inline std::vector<unsigned> subquotient_invariants(const Modulus& mod, std::size_t dim,
                                                    const std::vector<Vec>& gens,
                                                    const std::vector<Vec>& subs) {
    HowellForm g = HowellForm::of(mod, dim, gens);
    std::size_t k = g.ncols();
    if (k == 0)
        return {};
    // relations: the syzygies of the Howell generators plus the coordinates
    // of each sub generator.
    ZnMatrix G = ZnMatrix::from_columns(mod, dim, g.cols());
    std::vector<Vec> rel = kernel_gens(G);
    for (const auto& s : subs) {
        Vec v = s;
        Vec coords = g.reduce(v);
        if (!detail::vec_zero(v))
            throw PreconditionError("subquotient: subgroup is not contained in the span");
        rel.push_back(std::move(coords));
    }
    ZnMatrix R = ZnMatrix::from_columns(mod, k, rel);
    return module_invariants(mod, k, R);
}

inline std::size_t invariants_length(const std::vector<unsigned>& inv) {
    std::size_t s = 0;
    for (unsigned b : inv)
        s += b;
    return s;
}

/// Intersection of two column spans (generators of span(A) cap span(B)).
inline std::vector<Vec> span_intersection(const Modulus& mod, std::size_t dim,
                                          const std::vector<Vec>& A,
                                          const std::vector<Vec>& B) {
    ZnMatrix M(mod, dim, A.size() + B.size());
    for (std::size_t j = 0; j < A.size(); ++j)
        M.set_col(j, A[j]);
    for (std::size_t j = 0; j < B.size(); ++j) {
        Vec nb(dim);
        for (std::size_t i = 0; i < dim; ++i)
            nb[i] = mod.neg(B[j][i]);
        M.set_col(A.size() + j, nb);
    }
    std::vector<Vec> ker = kernel_gens(M);
    std::vector<Vec> out;
    for (const auto& x : ker) {
        Vec v(dim, 0);
        for (std::size_t j = 0; j < A.size(); ++j)
            detail::axpy(mod, v, x[j], A[j]);
        if (!detail::vec_zero(v))
            out.push_back(std::move(v));
    }
    return out;
}

} // namespace syntomic
