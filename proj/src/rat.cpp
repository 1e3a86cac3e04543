#include "tfdl/rat.hpp"

#include <algorithm>
#include <cmath>

namespace tfdl {

std::vector<std::uint32_t> primes_upto(std::uint32_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i <= n; ++i) {
        if (!comp[i]) {
            ps.push_back(i);
            for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= n; j += i)
                comp[j] = true;
        }
    }
    return ps;
}

std::vector<std::pair<i64, int>> factor_i64(i64 n, i64 bound) {
    TFDL_CHECK(n != 0, "factor_i64: zero");
    if (n < 0) n = -n;
    std::vector<std::pair<i64, int>> fs;
    for (i64 p = 2; p * p <= n && p <= bound; p = (p == 2 ? 3 : p + 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) { n /= p; ++e; }
            fs.push_back({p, e});
        }
    }
    if (n > 1) {
        // Remainder must be prime: either it is below bound^2 (trial division
        // proved it) or we verify with a primality test.
        if (!(n <= bound * bound ||
              mpz_probab_prime_p(Int(n).get_mpz_t(), 30) > 0))
            TFDL_CHECK(false, "factor_i64: composite remainder beyond bound");
        fs.push_back({n, 1});
    }
    return fs;
}

std::vector<i64> divisors_i64(i64 n, i64 bound) {
    auto fs = factor_i64(n, bound);
    std::vector<i64> ds{1};
    for (auto& [p, e] : fs) {
        size_t base = ds.size();
        i64 pe = 1;
        for (int i = 0; i < e; ++i) {
            pe *= p;
            for (size_t j = 0; j < base; ++j) ds.push_back(ds[j] * pe);
        }
    }
    std::sort(ds.begin(), ds.end());
    return ds;
}

SquareSplit squarefree_split_i64(i64 n) {
    TFDL_CHECK(n != 0, "squarefree_split_i64: zero");
    int sign = n < 0 ? -1 : 1;
    i64 m = n < 0 ? -n : n;
    i64 root = 1, kernel = 1;
    for (i64 p = 2; p * p * p <= m; p = (p == 2 ? 3 : p + 2)) {
        if (m % p == 0) {
            int e = 0;
            while (m % p == 0) { m /= p; ++e; }
            for (int i = 0; i < e / 2; ++i) root *= p;
            if (e & 1) kernel *= p;
        }
    }
    // m now has at most two prime factors, each above cbrt: m is 1, p, p^2, or pq.
    i64 r;
    if (is_square_i64(m, &r)) {
        root *= r;
    } else {
        kernel *= m;
    }
    return {sign * kernel, root};
}

bool approx_to_rational(long double x, i64 max_den, i64* num, i64* den) {
    // Continued fraction expansion of x; stop when the denominator would
    // exceed max_den and return the best convergent.
    long double v = x;
    i64 p0 = 1, q0 = 0, p1 = 0, q1 = 1;  // convergents p1/q1 trail p0/q0
    for (int it = 0; it < 64; ++it) {
        long double fl = floorl(v);
        if (fl > 4e18L || fl < -4e18L) return false;
        i64 a = static_cast<i64>(fl);
        i64 p2, q2;
        if (__builtin_mul_overflow(a, p0, &p2) || __builtin_add_overflow(p2, p1, &p2)) return false;
        if (__builtin_mul_overflow(a, q0, &q2) || __builtin_add_overflow(q2, q1, &q2)) return false;
        if (q2 > max_den) break;
        p1 = p0; q1 = q0; p0 = p2; q0 = q2;
        long double frac = v - fl;
        if (frac < 1e-14L) break;
        v = 1.0L / frac;
    }
    if (q0 == 0) return false;
    *num = p0;
    *den = q0;
    return true;
}

std::string rat_to_string(const Rat& r) {
    std::string s = r.get_num().get_str();
    if (r.get_den() != 1) s += "/" + r.get_den().get_str();
    return s;
}

}  // namespace tfdl
