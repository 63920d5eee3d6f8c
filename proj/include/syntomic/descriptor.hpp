#pragma once

#include <sstream>

#include "diff_form.hpp"

namespace syntomic {

/// Indices of Proposition 3: eta_i and eta'_i are the unique integers with
/// p^{eta-1} i < e <= p^{eta} i and p^{eta'-1} i - 1 < e <= p^{eta'} i - 1.
inline std::pair<unsigned, unsigned> eta_indices(std::uint64_t p, unsigned e, unsigned i) {
    if (i < 1 || i >= e)
        throw PreconditionError("eta indices need 1 <= i < e");
    unsigned eta = 0, etap = 0;
    {
        std::uint64_t pw = i;
        while (pw < e) {
            pw *= p;
            ++eta;
        }
    }
    {
        std::uint64_t pw = i;
        while (pw < (std::uint64_t)e + 1) {
            pw *= p;
            ++etap;
        }
    }
    return {eta, etap};
}

/// Indices of formula (vi): l_n is maximal with n - l_n e >= e/(p-1) and
/// s_n = v_p(n - l_n e); defined for n > ep/(p-1).
inline std::pair<unsigned, unsigned> vi_indices(std::uint64_t p, unsigned e, unsigned n) {
    if ((std::uint64_t)n * (p - 1) <= (std::uint64_t)e * p)
        throw PreconditionError("vi indices need n > ep/(p-1)");
    unsigned l = 0;
    for (unsigned t = n / e + 1; t-- > 0;) {
        if ((long long)(p - 1) * ((long long)n - (long long)t * e) >= (long long)e) {
            l = t;
            break;
        }
    }
    unsigned rest = n - l * e, s = 0;
    while (rest % p == 0) {
        rest /= (unsigned)p;
        ++s;
    }
    return {l, s};
}

/// One atom of a structure descriptor.  Monomial tags (X^i, X^{i-1}dX ^) are
/// presentation only; window dimensions ignore them.
struct Atom {
    enum Kind {
        Zero,
        OmegaK,       // Omega_k^s (= Omega_F^s)
        OmegaModB,    // Omega_k^s / B_t^s
        OmegaA0ModP,  // Omega_{A0}^s / p
        ZfrakQuot,    // ((p^c Omega_{A0}^s cap Z_eta) + p^2) / p^2
        CokerCartier, // coker(Omega^{s} -> Omega^{s+1}/B_t + Omega^{s}/B_t)
        KMilnor,      // K_s(k), symbolic only
        KModKp,       // k / k^p
        KPower,       // k^{p^t}
    } kind = Zero;
    unsigned s = 0;       // form degree
    unsigned t = 0;       // B-level / power index / eta
    unsigned c = 0;       // p-power cap (ZfrakQuot)
    long long mult = 0;   // the multiplier m of the Cartier map
    bool twisted = false; // the (1 + aC) variant of case (iv)
    std::string tag;      // display prefix

    bool operator==(const Atom&) const = default;

    std::string str() const {
        std::ostringstream os;
        if (!tag.empty())
            os << tag << " ";
        switch (kind) {
        case Zero: os << "0"; break;
        case OmegaK: os << "Omega^" << s; break;
        case OmegaModB: os << "Omega^" << s << "/B_" << t; break;
        case OmegaA0ModP: os << "Omega_{A0}^" << s << "/p"; break;
        case ZfrakQuot:
            os << "(";
            if (c)
                os << "p^" << c << "Omega_{A0}^" << s << " cap ";
            os << "Z_" << t << "Omega_{A0}^" << s << " + p^2)/p^2";
            break;
        case CokerCartier:
            os << "coker(Omega^" << s << " -> Omega^" << s + 1 << "/"
               << (twisted ? "(1+aC)" : "") << "B_" << t << " + Omega^" << s << "/"
               << (twisted ? "(1+aC)" : "") << "B_" << t << "; m=" << mult << ")";
            break;
        case KMilnor: os << "K_" << s << "(k)"; break;
        case KModKp: os << "k/k^p"; break;
        case KPower: os << "k^(p^" << t << ")"; break;
        }
        return os.str();
    }
};

struct StructureDescriptor {
    std::vector<Atom> atoms;

    bool operator==(const StructureDescriptor&) const = default;
    bool is_zero() const {
        for (const auto& a : atoms)
            if (a.kind != Atom::Zero)
                return false;
        return true;
    }
    bool has_evaluator() const {
        for (const auto& a : atoms)
            if (a.kind == Atom::KMilnor)
                return false;
        return true;
    }
    std::string str() const {
        if (atoms.empty())
            return "0";
        std::string s;
        for (const auto& a : atoms)
            s += (s.empty() ? "" : "  (+)  ") + a.str();
        return s;
    }
};

/// Per-multidegree invariant factors, the artifact's notion of structure.
using WindowProfile = std::map<std::uint64_t, std::vector<unsigned>>;

inline std::size_t profile_length(const WindowProfile& w) {
    std::size_t s = 0;
    for (const auto& [k, inv] : w)
        s += invariants_length(inv);
    return s;
}

/// Evaluates descriptor atoms as per-multidegree invariant-factor lists over
/// the window, by direct linear algebra on the k / A0 form models.
class DescriptorEvaluator {
  public:
    explicit DescriptorEvaluator(CtxPtr ctx) : ctx_(std::move(ctx)), fp_(ctx_->p(), 1) {}

    WindowProfile evaluate(const StructureDescriptor& d) const {
        WindowProfile out;
        for (const auto& beta : window_multidegrees(ctx_)) {
            std::vector<unsigned> inv;
            for (const auto& a : d.atoms) {
                auto part = atom_invariants(a, beta);
                inv.insert(inv.end(), part.begin(), part.end());
            }
            std::sort(inv.begin(), inv.end());
            if (!inv.empty())
                out[Monomial(0, 0, beta).key] = std::move(inv);
        }
        return out;
    }

    std::vector<unsigned> atom_invariants(const Atom& a, const Multidegree& beta) const {
        const unsigned m = ctx_->nvars();
        switch (a.kind) {
        case Atom::Zero:
            return {};
        case Atom::OmegaK: {
            std::size_t n = wedge_labels(m, a.s, false).size();
            return std::vector<unsigned>(n, 1);
        }
        case Atom::OmegaModB: {
            BGroups bg(ctx_, a.s);
            unsigned dim = bg.dim_omega() - (unsigned)bg.span(a.t, beta).length();
            return std::vector<unsigned>(dim, 1);
        }
        case Atom::OmegaA0ModP: {
            std::size_t n = wedge_labels(m, a.s, false).size();
            return std::vector<unsigned>(n, 1);
        }
        case Atom::ZfrakQuot:
            return zfrak_quot(a, beta);
        case Atom::CokerCartier:
            return coker_cartier(a, beta);
        case Atom::KMilnor:
            throw PreconditionError("K-Milnor atoms are symbolic only");
        case Atom::KModKp:
            return beta.divisible_by(ctx_->p()) ? std::vector<unsigned>{}
                                                : std::vector<unsigned>{1};
        case Atom::KPower: {
            std::uint64_t pk = 1;
            for (unsigned i = 0; i < a.t; ++i)
                pk *= ctx_->p();
            return beta.divisible_by(pk) ? std::vector<unsigned>{1}
                                         : std::vector<unsigned>{};
        }
        }
        return {};
    }

  private:
    /// ((p^c Omega cap Z_eta) + p^2)/p^2 at one multidegree of Omega_{A0}^s;
    /// Z_eta = ker(d mod p^eta).
    std::vector<unsigned> zfrak_quot(const Atom& a, const Multidegree& beta) const {
        unsigned K = a.t + a.c + 3; // enough working digits
        Modulus mod(ctx_->p(), K);
        Modulus mod2(ctx_->p(), 2);
        auto labs = wedge_labels(ctx_->nvars(), a.s, false);
        auto labs1 = wedge_labels(ctx_->nvars(), a.s + 1, false);
        std::size_t dim = labs.size();
        if (dim == 0)
            return {};
        // d matrix at beta over Z/p^K
        ZnMatrix d(mod, labs1.size(), dim);
        for (std::size_t j = 0; j < dim; ++j)
            for (unsigned i = 0; i < ctx_->nvars(); ++i) {
                if (beta.c[i] == 0)
                    continue;
                WedgeLabel ti(1u << i);
                int sg = WedgeLabel::wedge_sign(ti, labs[j]);
                if (!sg)
                    continue;
                WedgeLabel tgt = ti.merged(labs[j]);
                for (std::size_t r = 0; r < labs1.size(); ++r)
                    if (labs1[r] == tgt)
                        d.at(r, j) = mod.reduce_int(sg * beta.c[i]);
            }
        // Z_eta = { v : d v = 0 mod p^eta }: kernel of [d | p^eta I]
        std::vector<Vec> zg;
        {
            ZnMatrix M(mod, labs1.size(), dim + labs1.size());
            for (std::size_t r = 0; r < labs1.size(); ++r) {
                for (std::size_t c2 = 0; c2 < dim; ++c2)
                    M.at(r, c2) = d.at(r, c2);
                M.at(r, dim + r) = mod.ppow(a.t);
            }
            for (const auto& k : kernel_gens(M))
                zg.push_back(Vec(k.begin(), k.begin() + dim));
        }
        std::vector<Vec> cap;
        if (a.c == 0) {
            cap = std::move(zg);
        } else {
            std::vector<Vec> pg;
            for (std::size_t i = 0; i < dim; ++i) {
                Vec v(dim, 0);
                v[i] = mod.ppow(a.c);
                pg.push_back(std::move(v));
            }
            cap = span_intersection(mod, dim, zg, pg);
        }
        // reduce mod p^2 and take the module structure of the span
        std::vector<Vec> red;
        for (auto& v : cap) {
            for (auto& x : v)
                x %= mod2.pn();
            red.push_back(v);
        }
        return subquotient_invariants(mod2, dim, red, {});
    }

    /// coker(Omega_k^s(beta/p^t) -> Omega^{s+1}/B_t (+) Omega^s/B_t at beta),
    /// map w -> (C^{-t}(dw), mult * C^{-t}(w)).  The (1+aC) boundary variant
    /// mixes the multidegrees of one orbit and is evaluated orbit-wise
    /// (twisted_coker_profile).
    std::vector<unsigned> coker_cartier(const Atom& a, const Multidegree& beta) const {
        if (a.twisted)
            throw PreconditionError("the (1+aC) case couples a p-power chain "
                                    "of multidegrees; use twisted_coker_profile");
        BGroups bgq(ctx_, a.s + 1), bgs(ctx_, a.s);
        std::size_t dq = wedge_labels(ctx_->nvars(), a.s + 1, false).size();
        std::size_t ds = wedge_labels(ctx_->nvars(), a.s, false).size();
        std::uint64_t pt = 1;
        for (unsigned i = 0; i < a.t; ++i)
            pt *= ctx_->p();
        std::size_t dim = dq + ds;
        std::vector<Vec> den;
        for (const auto& v : bgq.span(a.t, beta).cols()) {
            Vec w(dim, 0);
            std::copy(v.begin(), v.end(), w.begin());
            den.push_back(std::move(w));
        }
        for (const auto& v : bgs.span(a.t, beta).cols()) {
            Vec w(dim, 0);
            std::copy(v.begin(), v.end(), w.begin() + dq);
            den.push_back(std::move(w));
        }
        if (beta.divisible_by(pt)) {
            Multidegree src = beta.divided((long long)pt);
            ZnMatrix d = bgs.d_matrix(src); // C^{-t} is the identity on labels
            for (std::size_t j = 0; j < ds; ++j) {
                Vec w(dim, 0);
                for (std::size_t r = 0; r < dq; ++r)
                    w[r] = d.at(r, j);
                w[dq + j] = fp_.reduce_int(a.mult);
                den.push_back(std::move(w));
            }
        }
        std::vector<Vec> full;
        for (std::size_t i = 0; i < dim; ++i) {
            Vec v(dim, 0);
            v[i] = 1;
            full.push_back(std::move(v));
        }
        return subquotient_invariants(fp_, dim, full, den);
    }

  public:
    /// Orbit-level evaluation of a twisted CokerCartier atom on the p-power
    /// chain of multidegrees orb = {b, pb, p^2 b, ...}: the ambient space is
    /// the sum over the chain of Omega^{s+1} (+) Omega^s, the denominator is
    /// (1+aC)B_t in both summands plus the image of the twisted map, with
    /// a = 1 (the residue of p/pi^e in this model).  C on B_t is computed by
    /// solving g = dz + C^{-1}w.
    std::vector<unsigned> twisted_coker_profile(const Atom& a,
                                                const std::vector<Multidegree>& orb) const {
        BGroups bgq(ctx_, a.s + 1), bgs(ctx_, a.s);
        std::size_t dq = wedge_labels(ctx_->nvars(), a.s + 1, false).size();
        std::size_t ds = wedge_labels(ctx_->nvars(), a.s, false).size();
        std::size_t n = orb.size();
        std::size_t dim = n * (dq + ds);
        auto qoff = [&](std::size_t k) { return k * dq; };
        auto soff = [&](std::size_t k) { return n * dq + k * ds; };
        auto chain_pos = [&](const Multidegree& b) -> std::optional<std::size_t> {
            for (std::size_t k = 0; k < n; ++k)
                if (orb[k] == b)
                    return k;
            return std::nullopt;
        };
        std::vector<Vec> den;
        auto add_twisted_b = [&](const BGroups& bg, std::size_t off_base, std::size_t dd,
                                 auto offf) {
            for (std::size_t k = 0; k < n; ++k) {
                HowellForm h = bg.span(a.t, orb[k]);
                for (const auto& g : h.cols()) {
                    Vec w(dim, 0);
                    for (std::size_t r = 0; r < dd; ++r)
                        w[offf(k) + r] = g[r];
                    // C(g) lives at orb[k]/p
                    if (k > 0 && orb[k - 1] == orb[k].divided((long long)ctx_->p()) &&
                        a.t >= 1) {
                        Vec cg = cartier_of(bg, a.t, orb[k], g);
                        for (std::size_t r = 0; r < dd; ++r)
                            w[offf(k - 1) + r] = fp_.add(w[offf(k - 1) + r], cg[r]);
                    }
                    den.push_back(std::move(w));
                }
            }
            (void)off_base;
        };
        add_twisted_b(bgq, 0, dq, qoff);
        add_twisted_b(bgs, 0, ds, soff);
        std::uint64_t pt = 1;
        for (unsigned i = 0; i < a.t; ++i)
            pt *= ctx_->p();
        for (std::size_t k = 0; k < n; ++k) {
            if (!orb[k].divisible_by(pt))
                continue;
            Multidegree src = orb[k].divided((long long)pt);
            ZnMatrix d = bgs.d_matrix(src);
            for (std::size_t j = 0; j < ds; ++j) {
                Vec w(dim, 0);
                for (std::size_t r = 0; r < dq; ++r)
                    w[qoff(k) + r] = d.at(r, j);
                w[soff(k) + j] = fp_.reduce_int(a.mult);
                // the C-part of (1+aC)C^{-t} is C^{-(t-1)}: same label
                // coordinates one chain step down
                if (a.t >= 1 && k > 0) {
                    for (std::size_t r = 0; r < dq; ++r)
                        w[qoff(k - 1) + r] = fp_.add(w[qoff(k - 1) + r], d.at(r, j));
                    w[soff(k - 1) + j] = fp_.add(w[soff(k - 1) + j],
                                                 fp_.reduce_int(a.mult));
                }
                den.push_back(std::move(w));
            }
        }
        std::vector<Vec> full;
        for (std::size_t i = 0; i < dim; ++i) {
            Vec v(dim, 0);
            v[i] = 1;
            full.push_back(std::move(v));
        }
        return subquotient_invariants(fp_, dim, full, den);
    }

  private:
    /// C(g) for g in B_t(beta): solve g = d z + C^{-1} w with w in
    /// B_{t-1}(beta/p); returns w (zero if beta is not p-divisible).
    Vec cartier_of(const BGroups& bg, unsigned t, const Multidegree& beta,
                   const Vec& g) const {
        std::size_t dd = g.size();
        if (!beta.divisible_by(ctx_->p()))
            return Vec(dd, 0);
        Multidegree down = beta.divided((long long)ctx_->p());
        ZnMatrix d = bg.d_matrix(beta);
        HowellForm prev = bg.span(t >= 1 ? t - 1 : 0, down);
        ZnMatrix M(fp_, dd, d.cols + prev.ncols());
        for (std::size_t r = 0; r < dd; ++r) {
            for (std::size_t c2 = 0; c2 < d.cols; ++c2)
                M.at(r, c2) = d.at(r, c2);
            for (std::size_t c2 = 0; c2 < prev.ncols(); ++c2)
                M.at(r, d.cols + c2) = prev.cols()[c2][r];
        }
        auto sol = solve(M, g);
        if (!sol)
            throw PreconditionError("Cartier operator: element is not in B_t");
        Vec w(dd, 0);
        for (std::size_t c2 = 0; c2 < prev.ncols(); ++c2)
            detail::axpy(fp_, w, (*sol)[d.cols + c2], prev.cols()[c2]);
        return w;
    }

    CtxPtr ctx_;
    Modulus fp_;
};

namespace formula {

inline Atom omega_a0_mod_p(int s, std::string tag) {
    if (s < 0)
        return Atom{Atom::Zero};
    Atom a;
    a.kind = Atom::OmegaA0ModP;
    a.s = (unsigned)s;
    a.tag = std::move(tag);
    return a;
}

inline Atom zfrak_quot(int s, unsigned eta, unsigned cap, std::string tag) {
    if (s < 0)
        return Atom{Atom::Zero};
    Atom a;
    a.kind = Atom::ZfrakQuot;
    a.s = (unsigned)s;
    a.t = eta;
    a.c = cap;
    a.tag = std::move(tag);
    return a;
}

/// Proposition 3: gr_i H^{q-1}(S_q) by the case table on i.
inline StructureDescriptor prop3(std::uint64_t p, unsigned e, unsigned i, unsigned q) {
    StructureDescriptor d;
    auto xtag = [&](unsigned k) { return "X^" + std::to_string(k); };
    auto dxtag = [&](unsigned k) {
        return "X^" + std::to_string(k) + "dX^";
    };
    if (i == 0 || i > 2 * e) {
        d.atoms.push_back(Atom{Atom::Zero});
        return d;
    }
    if (i == 2 * e) {
        d.atoms.push_back(omega_a0_mod_p((int)q - 3, dxtag(2 * e - 1)));
        return d;
    }
    if (i > e) { // e < i < 2e
        d.atoms.push_back(omega_a0_mod_p((int)q - 2, xtag(i)));
        d.atoms.push_back(omega_a0_mod_p((int)q - 3, dxtag(i - 1)));
        return d;
    }
    if (i == e) {
        if (e % p == 0) // carried for completeness; unreachable under p∤e
            d.atoms.push_back(omega_a0_mod_p((int)q - 2, xtag(e)));
        d.atoms.push_back(zfrak_quot((int)q - 3, 1, 0, dxtag(e - 1)));
        return d;
    }
    // 1 <= i < e
    auto [eta, etap] = eta_indices(p, e, i);
    unsigned vi = 0;
    {
        unsigned ii = i;
        while (ii % p == 0) {
            ii /= (unsigned)p;
            ++vi;
        }
    }
    unsigned cap = etap > vi ? etap - vi : 0;
    d.atoms.push_back(zfrak_quot((int)q - 2, eta, cap, xtag(i)));
    d.atoms.push_back(zfrak_quot((int)q - 3, eta, 0, dxtag(i - 1)));
    return d;
}

/// Proposition 4: gr_j(Omega_A^q / p d Omega_A^{q-1}).
inline StructureDescriptor prop4(unsigned e, unsigned j, unsigned q) {
    StructureDescriptor d;
    Atom ok{Atom::OmegaK};
    ok.s = q;
    if (j == 0) {
        d.atoms.push_back(ok);
        return d;
    }
    if (j < e) {
        d.atoms.push_back(ok);
        Atom ok1{Atom::OmegaK};
        ok1.s = q - 1;
        d.atoms.push_back(ok1);
        return d;
    }
    Atom ob{Atom::OmegaModB};
    ob.s = q;
    ob.t = j / e; // maximal l with j - le >= 0
    d.atoms.push_back(ob);
    return d;
}

enum class RefCase { i, ii, iii, iv, v, vi, vii };

inline const char* ref_case_name(RefCase c) {
    switch (c) {
    case RefCase::i: return "i";
    case RefCase::ii: return "ii";
    case RefCase::iii: return "iii";
    case RefCase::iv: return "iv";
    case RefCase::v: return "v";
    case RefCase::vi: return "vi";
    case RefCase::vii: return "vii";
    }
    return "?";
}

/// The closed-form reference calculators for gr_n K_q(K), cases (i)-(vii).
/// Hypotheses of each case are enforced and named on violation.
inline StructureDescriptor reference_gr(RefCase c, unsigned n, unsigned q,
                                        std::uint64_t p, unsigned e) {
    StructureDescriptor d;
    auto coker = [&](unsigned nn, bool twisted) {
        unsigned s = 0, m = nn;
        while (m % p == 0) {
            m /= (unsigned)p;
            ++s;
        }
        Atom a;
        a.kind = Atom::CokerCartier;
        a.s = q >= 2 ? q - 2 : 0;
        a.t = s;
        a.mult = (long long)m;
        a.twisted = twisted;
        if (q < 2)
            a.kind = Atom::Zero;
        return a;
    };
    switch (c) {
    case RefCase::i: {
        if (n != 0)
            throw PreconditionError("case (i) describes gr_0 only");
        Atom k1{Atom::KMilnor}, k2{Atom::KMilnor};
        k1.s = q;
        k2.s = q >= 1 ? q - 1 : 0;
        d.atoms = {k1, k2};
        return d;
    }
    case RefCase::ii:
        throw PreconditionError("case (ii) requires char k = 0; the truncated "
                                "model has residue characteristic p");
    case RefCase::iii:
        throw PreconditionError("case (iii) requires char K = p; the model is "
                                "of mixed characteristic");
    case RefCase::iv: {
        if (n < 1)
            throw PreconditionError("case (iv) requires n >= 1");
        if ((std::uint64_t)n * (p - 1) < (std::uint64_t)e * p) {
            d.atoms.push_back(coker(n, false));
            return d;
        }
        if ((std::uint64_t)n * (p - 1) == (std::uint64_t)e * p) {
            d.atoms.push_back(coker(n, true));
            return d;
        }
        throw PreconditionError("case (iv) requires n <= ep/(p-1)");
    }
    case RefCase::v: {
        if (e != 1)
            throw PreconditionError("case (v) requires e = 1 (absolutely unramified)");
        if (n < 1)
            throw PreconditionError("case (v) requires n >= 1");
        Atom a{Atom::OmegaModB};
        a.s = q >= 1 ? q - 1 : 0;
        a.t = n - 1;
        d.atoms.push_back(a);
        return d;
    }
    case RefCase::vi: {
        if (p <= 2)
            throw PreconditionError("case (vi) requires p > 2");
        if (e % p == 0)
            throw PreconditionError("case (vi) requires p \xe2\x88\xa4 e");
        if (n < 1)
            throw PreconditionError("case (vi) requires n >= 1");
        if ((std::uint64_t)n * (p - 1) <= (std::uint64_t)e * p)
            return reference_gr(RefCase::iv, n, q, p, e);
        auto [l, s] = vi_indices(p, e, n);
        Atom a{Atom::OmegaModB};
        a.s = q >= 1 ? q - 1 : 0;
        a.t = l + s;
        d.atoms.push_back(a);
        return d;
    }
    case RefCase::vii: {
        if (q != 2)
            throw PreconditionError("case (vii) describes K_2 only");
        if (n < 1)
            throw PreconditionError("case (vii) requires n >= 1");
        if (n <= p) {
            d.atoms.push_back(coker(n, false));
            return d;
        }
        if (n == 2 * p) {
            d.atoms.push_back(Atom{Atom::KModKp});
            return d;
        }
        if (n % p == 0 && n / p >= 3) {
            Atom a{Atom::KPower};
            a.t = n / (unsigned)p - 2;
            d.atoms.push_back(a);
            return d;
        }
        d.atoms.push_back(Atom{Atom::Zero});
        return d;
    }
    }
    throw PreconditionError("unknown reference case");
}

} // namespace formula

} // namespace syntomic
