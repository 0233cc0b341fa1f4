#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "skl/errors.hpp"

namespace skl {

// Arithmetic in F_p for a runtime prime p.  Elements are reduced residues in
// [0, p).  p must be an odd prime < 2^31 with p = 1 (mod 3): the curve code
// needs a primitive cube root of unity in the base field, and 31-bit moduli
// keep every product inside uint64.
class PrimeField {
  public:
    using Elt = std::uint32_t;

    explicit PrimeField(std::uint32_t p);

    std::uint32_t modulus() const { return p_; }
    Elt omega() const { return omega_; } // primitive cube root of unity

    Elt zero() const { return 0; }
    Elt one() const { return 1; }
    bool is_zero(Elt a) const { return a == 0; }

    Elt add(Elt a, Elt b) const {
        std::uint32_t s = a + b; // p < 2^31 so no uint32 overflow
        return s >= p_ ? s - p_ : s;
    }
    Elt sub(Elt a, Elt b) const { return b > a ? a + p_ - b : a - b; }
    Elt neg(Elt a) const { return a == 0 ? 0 : p_ - a; }
    Elt mul(Elt a, Elt b) const {
        return static_cast<Elt>(std::uint64_t(a) * b % p_);
    }
    Elt inv(Elt a) const;
    Elt pow(Elt a, std::uint64_t e) const;

    // reduce an arbitrary signed integer
    Elt from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<Elt>(r);
    }

    static bool is_prime(std::uint64_t n);

  private:
    std::uint32_t p_;
    Elt omega_;
};

// Exact rationals on top of int64, used only as a low-degree cross-check for
// the prime-field linear algebra.  Any overflow raises ResourceError rather
// than wrapping.
class RationalField {
  public:
    struct Elt {
        long long num;
        long long den; // > 0, gcd(num, den) == 1
        bool operator==(const Elt& o) const { return num == o.num && den == o.den; }
    };

    Elt zero() const { return {0, 1}; }
    Elt one() const { return {1, 1}; }
    bool is_zero(Elt a) const { return a.num == 0; }

    Elt from_int(long long v) const { return {v, 1}; }
    Elt add(Elt a, Elt b) const;
    Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
    Elt neg(Elt a) const { return {-a.num, a.den}; }
    Elt mul(Elt a, Elt b) const;
    Elt inv(Elt a) const;

  private:
    static long long checked_mul(long long a, long long b);
    static long long checked_add(long long a, long long b);
    static Elt normalize(long long n, long long d);
};

} // namespace skl
