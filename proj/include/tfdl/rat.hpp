#pragma once

// Exact integer/rational layer: thin helpers over GMP plus the int64 utility
// kit used by the hot loops.  Everything API-facing is exact; doubles appear
// only where a quantity is inherently analytic (log eps, residues).

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tfdl {

using Int = mpz_class;
using Rat = mpq_class;
using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

#define TFDL_CHECK(cond, msg)                                                 \
    do {                                                                      \
        if (!(cond)) throw std::runtime_error(std::string(msg));              \
    } while (0)

inline Int isqrt_floor(const Int& n) {
    TFDL_CHECK(n >= 0, "isqrt_floor: negative argument");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n, Int* root = nullptr) {
    if (n < 0) return false;
    Int r = isqrt_floor(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

// floor sqrt for i64, exact (long double estimate + fixup).
inline i64 isqrt_i64(i64 n) {
    TFDL_CHECK(n >= 0, "isqrt_i64: negative argument");
    if (n == 0) return 0;
    i64 r = static_cast<i64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_square_i64(i64 n, i64* root = nullptr) {
    if (n < 0) return false;
    i64 r = isqrt_i64(n);
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

// Kronecker symbol (a|b), defined for all integers, b may be even.
inline int kronecker(const Int& a, const Int& b) {
    return mpz_kronecker(a.get_mpz_t(), b.get_mpz_t());
}
inline int kronecker(i64 a, i64 b) { return kronecker(Int(a), Int(b)); }

inline i64 valuation_i64(i64 n, i64 p, i64* cofactor = nullptr) {
    TFDL_CHECK(n != 0 && p >= 2, "valuation_i64: bad arguments");
    i64 v = 0;
    while (n % p == 0) { n /= p; ++v; }
    if (cofactor) *cofactor = n;
    return v;
}

inline unsigned long valuation(const Int& n, const Int& p, Int* cofactor = nullptr) {
    TFDL_CHECK(n != 0 && p >= 2, "valuation: bad arguments");
    Int q;
    unsigned long v = mpz_remove(q.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    if (cofactor) *cofactor = q;
    return v;
}

std::vector<std::uint32_t> primes_upto(std::uint32_t n);

// Trial-division factorization; requires every prime factor of |n| to be
// <= bound or |n|/(small part) to be prime (checked), else throws.
std::vector<std::pair<i64, int>> factor_i64(i64 n, i64 bound = 2'000'000);

// Sorted positive divisors of |n|, via factor_i64.
std::vector<i64> divisors_i64(i64 n, i64 bound = 2'000'000);

// Squarefree kernel and square part: n = kernel * square, kernel squarefree.
struct SquareSplit {
    i64 kernel;  // signed squarefree part
    i64 root;    // square = root^2
};
SquareSplit squarefree_split_i64(i64 n);

// Nearest-rational reconstruction by continued fractions: the unique p/q with
// q <= max_den closest to x, provided |x - p/q| < 1/(2 q max_den).
bool approx_to_rational(long double x, i64 max_den, i64* num, i64* den);

inline double to_double(const Rat& r) { return r.get_d(); }

std::string rat_to_string(const Rat& r);

}  // namespace tfdl
