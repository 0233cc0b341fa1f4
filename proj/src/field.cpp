#include "skl/field.hpp"

namespace skl {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(__uint128_t(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod64(r, a, m);
        a = mulmod64(a, a, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool PrimeField::is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic Miller-Rabin witnesses for n < 3.3 * 10^24
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p), omega_(0) {
    if (p >= (1u << 31))
        throw UsageError("prime must be below 2^31, got " + std::to_string(p));
    if (!is_prime(p))
        throw UsageError("modulus " + std::to_string(p) + " is not prime");
    if (p % 3 != 1)
        throw UsageError("prime must be 1 mod 3 (cube roots of unity needed), got " +
                         std::to_string(p));
    // omega = g^((p-1)/3) for the first base g that gives an element of order 3
    for (Elt g = 2;; ++g) {
        Elt w = pow(g, (p_ - 1) / 3);
        if (w != 1 && mul(w, w) != w) { // order 3, not 1
            Elt check = add(add(mul(w, w), w), 1);
            if (check == 0) {
                omega_ = w;
                break;
            }
        }
    }
}

PrimeField::Elt PrimeField::pow(Elt a, std::uint64_t e) const {
    Elt r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

PrimeField::Elt PrimeField::inv(Elt a) const {
    if (a == 0) throw DegeneracyError("division by zero in F_p");
    return pow(a, p_ - 2);
}

long long RationalField::checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ResourceError("rational overflow (characteristic-zero mode is capped)");
    return r;
}

long long RationalField::checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r))
        throw ResourceError("rational overflow (characteristic-zero mode is capped)");
    return r;
}

RationalField::Elt RationalField::normalize(long long n, long long d) {
    if (d == 0) throw DegeneracyError("zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    return {n, d};
}

RationalField::Elt RationalField::add(Elt a, Elt b) const {
    long long g = std::gcd(a.den, b.den);
    long long bd = b.den / g;
    long long n = checked_add(checked_mul(a.num, bd), checked_mul(b.num, a.den / g));
    long long d = checked_mul(a.den, bd);
    return normalize(n, d);
}

RationalField::Elt RationalField::mul(Elt a, Elt b) const {
    long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
    long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
    return normalize(checked_mul(a.num / g1, b.num / g2),
                     checked_mul(a.den / g2, b.den / g1));
}

RationalField::Elt RationalField::inv(Elt a) const {
    if (a.num == 0) throw DegeneracyError("division by zero in Q");
    return normalize(a.den, a.num);
}

} // namespace skl
