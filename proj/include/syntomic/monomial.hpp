#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "params.hpp"

namespace syntomic {

/// Laurent multidegree in the p-base variables T_1..T_m (m <= 4).
struct Multidegree {
    unsigned m = 0;
    std::array<int, 4> c{0, 0, 0, 0};

    bool operator==(const Multidegree&) const = default;

    bool is_zero() const {
        for (unsigned i = 0; i < m; ++i)
            if (c[i] != 0)
                return false;
        return true;
    }
    bool in_window(unsigned w) const {
        for (unsigned i = 0; i < m; ++i)
            if (c[i] > (int)w || c[i] < -(int)w)
                return false;
        return true;
    }
    bool divisible_by(std::uint64_t k) const {
        for (unsigned i = 0; i < m; ++i)
            if (c[i] % (long long)k != 0)
                return false;
        return true;
    }
    Multidegree scaled(long long k) const {
        Multidegree r = *this;
        for (unsigned i = 0; i < m; ++i)
            r.c[i] = (int)(c[i] * k);
        return r;
    }
    Multidegree divided(long long k) const {
        Multidegree r = *this;
        for (unsigned i = 0; i < m; ++i)
            r.c[i] = (int)(c[i] / k);
        return r;
    }
    Multidegree plus(const Multidegree& o) const {
        Multidegree r = *this;
        for (unsigned i = 0; i < m; ++i)
            r.c[i] += o.c[i];
        return r;
    }
    std::string str() const {
        std::string s = "(";
        for (unsigned i = 0; i < m; ++i)
            s += (i ? "," : "") + std::to_string(c[i]);
        return s + ")";
    }
};

/// Monomial key u^[j] X^d T^alpha packed into 64 bits.  Raw comparison sorts
/// by (j, d, alpha), which is the order the PD normal form wants.
struct Monomial {
    static constexpr unsigned kCoordBits = 11; // coords in [-1023, 1023]
    static constexpr int kBias = 1024;
    static constexpr unsigned kDShift = 44; // 12 bits: X-degrees to 4095
    static constexpr unsigned kJShift = 56; // 7 bits: PD levels to 127

    std::uint64_t key = 0;

    Monomial() = default;
    explicit Monomial(std::uint64_t k) : key(k) {}
    Monomial(unsigned j, unsigned d, const Multidegree& a) {
        key = (std::uint64_t)j << kJShift | (std::uint64_t)d << kDShift;
        for (unsigned i = 0; i < a.m; ++i)
            key |= (std::uint64_t)(std::uint32_t)((a.c[i] + kBias) & 0x7ff)
                   << (i * kCoordBits);
        // Unused coordinate slots carry the bias so that keys are canonical.
        for (unsigned i = a.m; i < 4; ++i)
            key |= (std::uint64_t)kBias << (i * kCoordBits);
    }

    unsigned j() const { return (unsigned)(key >> kJShift); }
    unsigned d() const { return (unsigned)((key >> kDShift) & 0xfff); }
    Multidegree alpha(unsigned m) const {
        Multidegree a;
        a.m = m;
        for (unsigned i = 0; i < m; ++i)
            a.c[i] = (int)((key >> (i * kCoordBits)) & 0x7ff) - kBias;
        return a;
    }

    Monomial with_j(unsigned nj) const {
        Monomial r(*this);
        r.key = (r.key & ~(UINT64_C(0x7f) << kJShift)) | (std::uint64_t)nj << kJShift;
        return r;
    }
    Monomial with_d(unsigned nd) const {
        Monomial r(*this);
        r.key = (r.key & ~(UINT64_C(0xfff) << kDShift)) | (std::uint64_t)nd << kDShift;
        return r;
    }

    /// Product key (exponents add); coordinates may leave the window, the
    /// caller decides whether to clamp.
    static Monomial product(const Monomial& a, const Monomial& b, unsigned m) {
        Multidegree s = a.alpha(m).plus(b.alpha(m));
        return Monomial(a.j() + b.j(), a.d() + b.d(), s);
    }

    bool operator==(const Monomial&) const = default;
    bool operator<(const Monomial& o) const { return key < o.key; }
};

/// Wedge-monomial label: bits 0..m-1 are dlog T_i factors, bit m is the dX
/// (resp. dpi) factor.  Factors are ordered T_1 < ... < T_m < X.
struct WedgeLabel {
    std::uint32_t bits = 0;

    WedgeLabel() = default;
    explicit WedgeLabel(std::uint32_t b) : bits(b) {}

    unsigned degree() const { return (unsigned)__builtin_popcount(bits); }
    bool has(unsigned slot) const { return (bits >> slot) & 1; }
    bool has_dx(unsigned m) const { return has(m); }

    /// Sign of concatenating two sorted labels; 0 if they overlap.
    static int wedge_sign(WedgeLabel a, WedgeLabel b) {
        if (a.bits & b.bits)
            return 0;
        int inversions = 0;
        for (std::uint32_t bb = b.bits; bb; bb &= bb - 1) {
            unsigned pos = (unsigned)__builtin_ctz(bb);
            std::uint32_t higher = a.bits >> (pos + 1);
            inversions += __builtin_popcount(higher);
        }
        return inversions % 2 ? -1 : 1;
    }
    WedgeLabel merged(WedgeLabel b) const { return WedgeLabel(bits | b.bits); }

    bool operator==(const WedgeLabel&) const = default;
    bool operator<(const WedgeLabel& o) const { return bits < o.bits; }

    std::string str(unsigned m) const {
        std::string s;
        for (unsigned i = 0; i < m; ++i)
            if (has(i))
                s += (s.empty() ? "" : "^") + ("dlogT" + std::to_string(i + 1));
        if (has(m))
            s += (s.empty() ? "" : "^") + std::string("dX");
        return s.empty() ? "1" : s;
    }
};

/// All wedge labels of a given degree over m variables, optionally with the
/// dX slot available.  Deterministic (increasing bitmask) order.
inline std::vector<WedgeLabel> wedge_labels(unsigned m, unsigned degree, bool with_dx) {
    std::vector<WedgeLabel> out;
    unsigned slots = m + (with_dx ? 1 : 0);
    for (std::uint32_t b = 0; b < (1u << slots); ++b)
        if ((unsigned)__builtin_popcount(b) == degree)
            out.push_back(WedgeLabel(b));
    return out;
}

} // namespace syntomic
