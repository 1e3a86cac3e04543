#pragma once

// Machine-word modular arithmetic: plain mulmod/powmod, a Montgomery context
// for odd moduli (hot loops), Tonelli-Shanks square roots, and small fixed
// kits for polynomials of degree <= 3 over F_p.

#include "tfdl/rat.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace tfdl {

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s >= m || s < a) s -= m;
    return s;
}
inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }
inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Extended-gcd inverse; m need not be prime but gcd(a,m) must be 1.
inline u64 invmod(u64 a, u64 m) {
    i64 t = 0, nt = 1;
    i64 r = static_cast<i64>(m), nr = static_cast<i64>(a % m);
    while (nr != 0) {
        i64 q = r / nr;
        i64 tmp = t - q * nt; t = nt; nt = tmp;
        tmp = r - q * nr; r = nr; nr = tmp;
    }
    TFDL_CHECK(r == 1, "invmod: not invertible");
    if (t < 0) t += static_cast<i64>(m);
    return static_cast<u64>(t);
}

// Jacobi symbol (a|n) for odd n > 0.
inline int jacobi_u64(i64 a, u64 n) {
    TFDL_CHECK(n & 1, "jacobi_u64: even modulus");
    u64 ua;
    int s = 1;
    if (a < 0) {
        ua = static_cast<u64>(-a) % n;
        if ((n & 3) == 3) s = -s;
    } else {
        ua = static_cast<u64>(a) % n;
    }
    while (ua != 0) {
        int z = __builtin_ctzll(ua);
        ua >>= z;
        if ((z & 1) && ((n & 7) == 3 || (n & 7) == 5)) s = -s;
        if ((ua & 3) == 3 && (n & 3) == 3) s = -s;
        u64 t = n % ua;
        n = ua;
        ua = t;
    }
    return n == 1 ? s : 0;
}

// Montgomery arithmetic for odd modulus < 2^62.
struct Mont {
    u64 n = 0, ninv = 0, r2 = 0, one = 0;

    Mont() = default;
    explicit Mont(u64 mod) : n(mod) {
        TFDL_CHECK((mod & 1) && mod >= 3, "Mont: modulus must be odd >= 3");
        u64 inv = mod;  // Newton iteration for -n^{-1} mod 2^64
        for (int i = 0; i < 5; ++i) inv *= 2 - mod * inv;
        ninv = ~inv + 1;
        u64 r = (~static_cast<u64>(0)) % mod + 1;  // 2^64 mod n
        r2 = static_cast<u64>((static_cast<u128>(r) * r) % mod);  // 2^128 mod n
        one = to(1);
    }
    u64 redc(u128 t) const {
        u64 m = static_cast<u64>(t) * ninv;
        u128 u = t + static_cast<u128>(m) * n;
        u64 res = static_cast<u64>(u >> 64);
        return res >= n ? res - n : res;
    }
    u64 to(u64 a) const { return redc(static_cast<u128>(a % n) * r2); }
    u64 from(u64 a) const { return redc(a); }
    u64 mul(u64 a, u64 b) const { return redc(static_cast<u128>(a) * b); }
    u64 add(u64 a, u64 b) const { return addmod(a, b, n); }
    u64 sub(u64 a, u64 b) const { return submod(a, b, n); }
    u64 pow(u64 a, u64 e) const {  // a in Montgomery form
        u64 r = one;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
};

// Square root mod odd prime p; empty if a is a non-residue.
std::optional<u64> sqrt_mod_p(u64 a, u64 p);

// Number of distinct roots in F_p of a monic cubic T^3 + a1 T + a0 with
// p >= 5, p not dividing the discriminant (so 0, 1, or 3).  Uses the
// quadratic character of the discriminant and a Cardano cube-class test in
// F_p[s]/(s^2 + 3*disc); one short exponentiation, no square root.
int depressed_cubic_nroots(u64 a1, u64 a0, u64 p, const Mont& mont);

// Roots in F_p of a monic polynomial of degree <= 3 (any p >= 2, any poly,
// repeated roots listed once).  coeffs[i] multiplies T^i, coeffs[deg] = 1.
std::vector<u64> poly_roots_mod_p(const std::vector<u64>& coeffs, u64 p);

// Distinct-degree shape of a monic squarefree polynomial of degree <= 3
// mod p: returns the multiset of irreducible factor degrees.
std::vector<int> squarefree_factor_degrees_mod_p(const std::vector<u64>& coeffs, u64 p);

}  // namespace tfdl
