#include "tfdl/poly.hpp"

#include "tfdl/modarith.hpp"

#include <algorithm>

namespace tfdl {

Int MonicIntPoly::eval(const Int& t) const {
    Int v = 0;
    for (size_t i = coeffs.size(); i-- > 0;) v = v * t + coeffs[i];
    return v;
}

Rat MonicIntPoly::eval(const Rat& t) const {
    Rat v = 0;
    for (size_t i = coeffs.size(); i-- > 0;) v = v * t + Rat(coeffs[i]);
    return v;
}

MonicIntPoly MonicIntPoly::shifted(const Int& a) const {
    // Taylor shift by repeated synthetic division.
    std::vector<Int> c = coeffs;
    int n = degree();
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) c[j] += a * c[j + 1];
    return MonicIntPoly(c);
}

std::string MonicIntPoly::to_string() const {
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        const Int& c = coeffs[i];
        if (c == 0 && i != 0 && degree() > 0) continue;
        if (!s.empty()) s += c >= 0 ? " + " : " - ";
        else if (c < 0) s += "-";
        Int a = abs(c);
        if (i == 0 || a != 1) s += a.get_str();
        if (i >= 1) s += "T";
        if (i >= 2) s += "^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
}

Int discriminant(const MonicIntPoly& f) {
    switch (f.degree()) {
        case 1:
            return 1;
        case 2: {
            const Int &b = f[1], &c = f[0];
            return b * b - 4 * c;
        }
        case 3: {
            const Int &a = f[2], &b = f[1], &c = f[0];
            return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b -
                   4 * b * b * b - 27 * c * c;
        }
        default:
            TFDL_CHECK(false, "discriminant: degree must be 1..3");
    }
    return 0;
}

bool is_irreducible_cubic(const MonicIntPoly& f) {
    if (f.degree() == 2) return !is_perfect_square(discriminant(f));
    TFDL_CHECK(f.degree() == 3, "is_irreducible_cubic: degree 2 or 3");
    const Int& c0 = f[0];
    if (c0 == 0) return false;
    // Monic integer cubic is reducible over Q iff it has an integer root,
    // and any integer root divides the constant term.
    TFDL_CHECK(c0.fits_slong_p() || abs(c0) < Int("4611686018427387904"),
               "is_irreducible_cubic: constant term too large to factor");
    i64 n = static_cast<i64>(mpz_get_si(c0.get_mpz_t()));
    auto fac = factor_i64(n);
    std::vector<i64> divs{1};
    for (auto& [p, e] : fac) {
        size_t cur = divs.size();
        i64 pk = 1;
        for (int i = 1; i <= e; ++i) {
            pk *= p;
            for (size_t j = 0; j < cur; ++j) divs.push_back(divs[j] * pk);
        }
    }
    for (i64 d : divs) {
        if (f.eval(Int(d)) == 0) return false;
        if (f.eval(Int(-d)) == 0) return false;
    }
    return true;
}

FactorModP factor_mod_p(const MonicIntPoly& f, u64 p) {
    TFDL_CHECK(p >= 2, "factor_mod_p: p >= 2");
    int n = f.degree();
    TFDL_CHECK(n >= 1 && n <= 3, "factor_mod_p: degree 1..3");
    std::vector<u64> c(n + 1);
    for (int i = 0; i <= n; ++i) {
        Int r = f[i] % Int(static_cast<unsigned long>(p));
        if (r < 0) r += static_cast<unsigned long>(p);
        c[i] = r.get_ui();
    }
    // Roots with multiplicities by deflation; the rootless remainder of
    // degree 2 or 3 is a single irreducible factor.
    std::vector<u64> roots = poly_roots_mod_p(c, p);
    FactorModP out;
    std::vector<u64> cur = c;
    int linear_total = 0;
    for (u64 r : roots) {
        int mult = 0;
        for (;;) {
            // synthetic division of cur by (T - r)
            std::vector<u64> q(cur.size() - 1);
            u64 carry = 0;
            for (size_t i = cur.size(); i-- > 1;) {
                carry = addmod(mulmod(carry, r, p), cur[i], p);
                q[i - 1] = carry;
            }
            u64 rem = addmod(mulmod(carry, r, p), cur[0], p);
            if (rem != 0) break;
            cur = q;
            ++mult;
            if (cur.size() == 1) break;
        }
        TFDL_CHECK(mult >= 1, "factor_mod_p: root does not divide");
        out.factors.push_back({1, mult});
        linear_total += mult;
    }
    int rest = n - linear_total;
    if (rest > 0) out.factors.push_back({rest, 1});
    std::sort(out.factors.begin(), out.factors.end());
    TFDL_CHECK(out.total_degree() == n, "factor_mod_p: degree bookkeeping");
    return out;
}

std::pair<Rat, Rat> depressed_form(const MonicIntPoly& f) {
    TFDL_CHECK(f.degree() == 3, "depressed_form: cubic only");
    Rat a(f[2]), b(f[1]), c(f[0]);
    Rat A = b - a * a / 3;
    Rat B = 2 * a * a * a / 27 - a * b / 3 + c;
    A.canonicalize();
    B.canonicalize();
    return {A, B};
}

MonicIntPoly tripled_depressed(const MonicIntPoly& f) {
    TFDL_CHECK(f.degree() == 3, "tripled_depressed: cubic only");
    const Int &a = f[2], &b = f[1], &c = f[0];
    Int A1 = 9 * b - 3 * a * a;
    Int A0 = 2 * a * a * a - 9 * a * b + 27 * c;
    return MonicIntPoly::cubic(0, A1, A0);
}

std::vector<Int> power_sums(const MonicIntPoly& f, int k) {
    int n = f.degree();
    TFDL_CHECK(n >= 1 && n <= 3, "power_sums: degree 1..3");
    // Elementary symmetric functions with signs from the coefficients.
    Int e1 = -f[n - 1];
    Int e2 = n >= 2 ? Int(f[n - 2]) : Int(0);
    Int e3 = n >= 3 ? Int(-f[n - 3]) : Int(0);
    std::vector<Int> ps(k + 1);
    ps[0] = n;
    if (k >= 1) ps[1] = e1;
    if (k >= 2) ps[2] = e1 * ps[1] - 2 * e2;
    if (k >= 3) ps[3] = e1 * ps[2] - e2 * ps[1] + 3 * e3;
    for (int i = 4; i <= k; ++i)
        ps[i] = e1 * ps[i - 1] - e2 * ps[i - 2] + e3 * ps[i - 3];
    return ps;
}

}  // namespace tfdl
