#include "tfdl/modarith.hpp"

#include <algorithm>

namespace tfdl {

std::optional<u64> sqrt_mod_p(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (jacobi_u64(static_cast<i64>(a), p) != 1) return std::nullopt;
    if ((p & 3) == 3) {
        u64 r = powmod(a, (p + 1) / 4, p);
        return r;
    }
    // Tonelli-Shanks.
    u64 q = p - 1;
    int s = 0;
    while ((q & 1) == 0) { q >>= 1; ++s; }
    u64 z = 2;
    while (jacobi_u64(static_cast<i64>(z), p) != -1) ++z;
    u64 m = s;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        u64 t2 = t;
        u64 i = 0;
        while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
        u64 b = c;
        for (u64 j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    return r;
}

namespace {

// Elements x + y*s of F_p[s]/(s^2 - D), all in Montgomery form.
struct QuadElt {
    u64 x, y;
};

QuadElt qmul(const QuadElt& a, const QuadElt& b, u64 D, const Mont& M) {
    u64 xx = M.mul(a.x, b.x);
    u64 yy = M.mul(a.y, b.y);
    u64 xy = M.mul(a.x, b.y);
    u64 yx = M.mul(a.y, b.x);
    return {M.add(xx, M.mul(yy, D)), M.add(xy, yx)};
}

QuadElt qpow(QuadElt a, u64 e, u64 D, const Mont& M) {
    QuadElt r{M.one, 0};
    while (e) {
        if (e & 1) r = qmul(r, a, D, M);
        a = qmul(a, a, D, M);
        e >>= 1;
    }
    return r;
}

}  // namespace

int depressed_cubic_nroots(u64 a1, u64 a0, u64 p, const Mont& M) {
    TFDL_CHECK(p >= 5, "depressed_cubic_nroots: p >= 5 required");
    a1 %= p;
    a0 %= p;
    // disc = -4 a1^3 - 27 a0^2 mod p, plain form.
    u64 a1m = M.to(a1), a0m = M.to(a0);
    u64 a1c = M.mul(M.mul(a1m, a1m), a1m);
    u64 a0s = M.mul(a0m, a0m);
    u64 disc = M.sub(0, M.add(M.mul(M.to(4), a1c), M.mul(M.to(27), a0s)));
    u64 disc_plain = M.from(disc);
    TFDL_CHECK(disc_plain != 0, "depressed_cubic_nroots: p divides disc");
    if (jacobi_u64(static_cast<i64>(disc_plain), p) == -1) return 1;
    if (a1 == 0) {
        // T^3 + a0 with disc a QR forces p = 1 mod 3; split iff a0 is a cube.
        TFDL_CHECK(p % 3 == 1, "depressed_cubic_nroots: internal");
        return powmod(a0, (p - 1) / 3, p) == 1 ? 3 : 0;
    }
    // Cardano: z = (-9 a0 + s)/18 with s^2 = -3 disc; split iff z is a cube
    // in F_p[s]/(s^2+3 disc) (p=1 mod 3: z^((p-1)/3) = 1; p=2 mod 3:
    // z^((p+1)/3) lands in F_p).
    u64 D = M.sub(0, M.mul(M.to(3), disc));
    u64 inv18 = M.to(invmod(18 % p, p));
    QuadElt z{M.mul(M.sub(0, M.mul(M.to(9 % p), a0m)), inv18), inv18};
    if (p % 3 == 1) {
        QuadElt w = qpow(z, (p - 1) / 3, D, M);
        return (w.x == M.one && w.y == 0) ? 3 : 0;
    }
    QuadElt y = qpow(z, (p + 1) / 3, D, M);
    return y.y == 0 ? 3 : 0;
}

namespace {

// Dense polynomial helpers mod p (tiny degrees; vectors coeff-low-first).
using Poly = std::vector<u64>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, u64 p) {
    // m monic
    while (a.size() >= m.size() && !a.empty()) {
        u64 c = a.back();
        size_t off = a.size() - m.size();
        if (c != 0)
            for (size_t i = 0; i < m.size(); ++i)
                a[off + i] = submod(a[off + i], mulmod(c, m[i], p), p);
        a.pop_back();
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, u64 p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i])
            for (size_t j = 0; j < b.size(); ++j)
                c[i + j] = addmod(c[i + j], mulmod(a[i], b[j], p), p);
    return poly_mod(std::move(c), m, p);
}

Poly poly_powmod_xp(const Poly& m, u64 p) {
    // T^p mod (m, p)
    Poly base = poly_mod({0, 1}, m, p);
    Poly r{1};
    u64 e = p;
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // make b monic
        u64 inv = invmod(b.back(), p);
        for (auto& c : b) c = mulmod(c, inv, p);
        Poly r = poly_mod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        u64 inv = invmod(a.back(), p);
        for (auto& c : a) c = mulmod(c, inv, p);
    }
    return a;
}

Poly poly_deriv(const Poly& f, u64 p) {
    Poly d;
    for (size_t i = 1; i < f.size(); ++i) d.push_back(mulmod(f[i], i % p, p));
    trim(d);
    return d;
}

u64 poly_eval(const Poly& f, u64 t, u64 p) {
    u64 v = 0;
    for (size_t i = f.size(); i-- > 0;) v = addmod(mulmod(v, t, p), f[i], p);
    return v;
}

std::vector<u64> roots_of_linear_product(Poly h, u64 p, u64 seed) {
    // h is monic, squarefree, splits into linear factors over F_p.
    std::vector<u64> roots;
    std::vector<Poly> stack{std::move(h)};
    u64 state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    while (!stack.empty()) {
        Poly f = std::move(stack.back());
        stack.pop_back();
        trim(f);
        if (f.size() <= 1) continue;
        if (f.size() == 2) {
            roots.push_back(submod(0, f[0], p));
            continue;
        }
        if (f.size() == 3) {
            // quadratic formula; p odd here (p=2 handled by exhaustive path)
            u64 b = f[1], c = f[0];
            u64 disc = submod(mulmod(b, b, p), mulmod(4 % p, c, p), p);
            auto sq = sqrt_mod_p(disc, p);
            TFDL_CHECK(sq.has_value(), "roots: quadratic should split");
            u64 inv2 = invmod(2 % p, p);
            roots.push_back(mulmod(submod(*sq, b, p), inv2, p));
            roots.push_back(mulmod(submod(submod(0, *sq, p), b, p), inv2, p));
            continue;
        }
        // degree 3, all roots in F_p: random split gcd((T+c)^((p-1)/2)-1, f)
        for (;;) {
            state = state * 6364136223846793005ULL + 1442695040888963407ULL;
            u64 c = (state >> 11) % p;
            Poly base = poly_mod({c, 1}, f, p);
            Poly w{1};
            u64 e = (p - 1) / 2;
            Poly acc = base;
            while (e) {
                if (e & 1) w = poly_mulmod(w, acc, f, p);
                acc = poly_mulmod(acc, acc, f, p);
                e >>= 1;
            }
            if (!w.empty()) w[0] = submod(w[0], 1, p);
            Poly g = poly_gcd(f, w, p);
            if (g.size() > 1 && g.size() < f.size()) {
                // split f = g * (f/g)
                Poly q = f;
                // divide q by g (monic)
                Poly quo(q.size() - g.size() + 1, 0);
                while (q.size() >= g.size() && !q.empty()) {
                    u64 lc = q.back();
                    size_t off = q.size() - g.size();
                    quo[off] = lc;
                    for (size_t i = 0; i < g.size(); ++i)
                        q[off + i] = submod(q[off + i], mulmod(lc, g[i], p), p);
                    q.pop_back();
                    trim(q);
                }
                stack.push_back(std::move(g));
                stack.push_back(std::move(quo));
                break;
            }
        }
    }
    return roots;
}

}  // namespace

std::vector<u64> poly_roots_mod_p(const std::vector<u64>& coeffs, u64 p) {
    Poly f;
    for (u64 c : coeffs) f.push_back(c % p);
    trim(f);
    if (f.size() <= 1) return {};
    if (p < 64) {
        std::vector<u64> roots;
        for (u64 t = 0; t < p; ++t)
            if (poly_eval(f, t, p) == 0) roots.push_back(t);
        return roots;
    }
    u64 inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    Poly d = poly_deriv(f, p);
    Poly sf = f;
    Poly g = poly_gcd(f, d, p);
    if (g.size() > 1) {
        // squarefree part f/g
        Poly q(f.size() - g.size() + 1, 0);
        Poly r = f;
        while (r.size() >= g.size() && !r.empty()) {
            u64 lc = r.back();
            size_t off = r.size() - g.size();
            q[off] = lc;
            for (size_t i = 0; i < g.size(); ++i)
                r[off + i] = submod(r[off + i], mulmod(lc, g[i], p), p);
            r.pop_back();
            trim(r);
        }
        sf = q;
    }
    Poly xp = poly_powmod_xp(sf, p);  // T^p mod sf
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = submod(xp[1], 1, p);      // T^p - T
    Poly lin = poly_gcd(sf, xp, p);
    if (lin.size() <= 1) return {};
    return roots_of_linear_product(lin, p, p ^ 0x9e3779b97f4a7c15ULL);
}

std::vector<int> squarefree_factor_degrees_mod_p(const std::vector<u64>& coeffs, u64 p) {
    Poly f;
    for (u64 c : coeffs) f.push_back(c % p);
    trim(f);
    int n = static_cast<int>(f.size()) - 1;
    TFDL_CHECK(n >= 1 && n <= 3, "squarefree_factor_degrees_mod_p: degree 1..3");
    u64 inv = invmod(f.back(), p);
    for (auto& c : f) c = mulmod(c, inv, p);
    {
        Poly d = poly_deriv(f, p);
        Poly g = poly_gcd(f, d, p);
        TFDL_CHECK(g.size() <= 1, "squarefree_factor_degrees_mod_p: input not squarefree");
    }
    if (n == 1) return {1};
    Poly xp = poly_powmod_xp(f, p);
    if (xp.size() < 2) xp.resize(2, 0);
    xp[1] = submod(xp[1], 1, p);
    Poly lin = poly_gcd(f, xp, p);
    int l = static_cast<int>(lin.size()) - 1;
    if (l < 0) l = 0;
    if (n == 2) return l == 2 ? std::vector<int>{1, 1} : std::vector<int>{2};
    switch (l) {
        case 3: return {1, 1, 1};
        case 1: return {1, 2};
        case 0: return {3};
        default: TFDL_CHECK(false, "squarefree cubic cannot have exactly 2 roots");
    }
    return {};
}

}  // namespace tfdl
