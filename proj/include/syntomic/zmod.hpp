#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace syntomic {

using coeff_t = std::uint64_t;

/// Thrown when a truncation drop occurs in strict mode, or when an operation
/// that must divide exactly does not.
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InexactDivision : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PreconditionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Arithmetic modulo p^n with p prime.  All coefficient arithmetic in the
/// library goes through one of these; n is the *working* precision, which is
/// larger than the reported precision so that exact divisions by powers of p
/// do not eat into reported digits.
class Modulus {
  public:
    Modulus() = default;
    Modulus(std::uint64_t p, unsigned n) : p_(p), n_(n) {
        if (p < 2)
            throw PreconditionError("modulus: p must be at least 2");
        pn_ = 1;
        ppow_.resize(n + 1);
        ppow_[0] = 1;
        for (unsigned i = 1; i <= n; ++i) {
            if (ppow_[i - 1] > ((UINT64_C(1) << 63) - 1) / p)
                throw PreconditionError("modulus: p^n does not fit in 63 bits; "
                                        "reduce precision or degree parameters");
            ppow_[i] = ppow_[i - 1] * p;
        }
        pn_ = ppow_[n];
        small_ = pn_ < (UINT64_C(1) << 32);
    }

    std::uint64_t p() const { return p_; }
    unsigned n() const { return n_; }
    std::uint64_t pn() const { return pn_; }
    std::uint64_t ppow(unsigned k) const { return ppow_.at(k); }

    coeff_t reduce_int(long long v) const {
        long long r = v % (long long)pn_;
        if (r < 0)
            r += (long long)pn_;
        return (coeff_t)r;
    }

    coeff_t add(coeff_t a, coeff_t b) const {
        coeff_t s = a + b;
        return s >= pn_ ? s - pn_ : s;
    }
    coeff_t sub(coeff_t a, coeff_t b) const { return a >= b ? a - b : a + pn_ - b; }
    coeff_t neg(coeff_t a) const { return a == 0 ? 0 : pn_ - a; }
    coeff_t mul(coeff_t a, coeff_t b) const {
        if (small_)
            return (a * b) % pn_;
        return (coeff_t)(((__uint128_t)a * b) % pn_);
    }
    coeff_t pow(coeff_t a, std::uint64_t k) const {
        coeff_t r = 1 % pn_;
        while (k) {
            if (k & 1)
                r = mul(r, a);
            a = mul(a, a);
            k >>= 1;
        }
        return r;
    }

    /// p-adic valuation of a nonzero residue; n for zero.
    unsigned val(coeff_t a) const {
        if (a == 0)
            return n_;
        unsigned v = 0;
        while (a % p_ == 0) {
            a /= p_;
            ++v;
        }
        return v;
    }

    bool is_unit(coeff_t a) const { return a % p_ != 0; }

    /// Inverse of a unit mod p^n.
    coeff_t inv_unit(coeff_t a) const {
        if (!is_unit(a))
            throw InexactDivision("inverse of a non-unit mod p^n");
        // Hensel lift from the inverse mod p.
        coeff_t x = 1;
        {
            // Fermat inverse mod p.
            std::uint64_t ap = a % p_, r = 1, e = p_ - 2, base = ap;
            while (e) {
                if (e & 1)
                    r = (r * base) % p_;
                base = (base * base) % p_;
                e >>= 1;
            }
            x = r;
        }
        // Newton iteration: x <- x(2 - ax) doubles correct digits.
        for (unsigned i = 0; i < 7; ++i)
            x = mul(x, sub(2 % pn_, mul(a, x)));
        return x;
    }

    /// Exact division a / b where b = unit * p^v; throws if p^v does not
    /// divide a.  The quotient is canonical in [0, p^{n-v}) and returned as a
    /// residue mod p^n (top digits zero).
    coeff_t div_exact(coeff_t a, coeff_t b) const {
        if (b == 0)
            throw InexactDivision("division by zero residue");
        unsigned v = val(b);
        coeff_t bu = b;
        for (unsigned i = 0; i < v; ++i)
            bu /= p_;
        return mul(div_pk(a, v), inv_unit(bu));
    }

    /// Exact division by p^k; throws unless p^k | a.
    coeff_t div_pk(coeff_t a, unsigned k) const {
        if (k == 0)
            return a;
        if (k > n_)
            throw InexactDivision("division by p^k beyond working precision");
        coeff_t q = ppow_[k];
        if (a % q != 0)
            throw InexactDivision("inexact division by p^" + std::to_string(k));
        return a / q;
    }

    coeff_t mul_pk(coeff_t a, unsigned k) const {
        return k >= n_ ? 0 : mul(a, ppow_[k]);
    }

    /// Reduce to a coarser precision p^m (m <= n), canonical representative.
    coeff_t to_precision(coeff_t a, unsigned m) const { return a % ppow_.at(m); }

    bool operator==(const Modulus& o) const { return p_ == o.p_ && n_ == o.n_; }

  private:
    std::uint64_t p_ = 0;
    unsigned n_ = 0;
    std::uint64_t pn_ = 0;
    bool small_ = false;
    std::vector<std::uint64_t> ppow_;
};

inline bool is_prime_u64(std::uint64_t v) {
    if (v < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0)
            return false;
    return true;
}

/// v_p(k!) by Legendre's formula.
inline unsigned factorial_val(std::uint64_t p, std::uint64_t k) {
    unsigned v = 0;
    while (k) {
        k /= p;
        v += (unsigned)k;
    }
    return v;
}

/// Digit sum of k in base p.
inline unsigned digit_sum(std::uint64_t p, std::uint64_t k) {
    unsigned s = 0;
    while (k) {
        s += (unsigned)(k % p);
        k /= p;
    }
    return s;
}

} // namespace syntomic
