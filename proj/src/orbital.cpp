#include "tfdl/orbital.hpp"

#include "tfdl/modarith.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace tfdl {

namespace {

Int ipow(i64 p, unsigned e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), e);
    return r;
}

void check_prime(i64 p, const char* where) {
    TFDL_CHECK(p >= 2 && mpz_probab_prime_p(Int(p).get_mpz_t(), 30) > 0, where);
}

u64 mod_p(const Int& a, i64 p) {
    return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(p));
}

// ---- small exact linear algebra, n in {2,3}, stored in Mat3Z ----

Int detN(const Mat3Z& m, int n) {
    if (n == 2) return Int(m[0][0] * m[1][1] - m[0][1] * m[1][0]);
    return det3(m);
}

Mat3Z mulN(const Mat3Z& a, const Mat3Z& b, int n) {
    Mat3Z r{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Int s = 0;
            for (int k = 0; k < n; ++k) s += a[i][k] * b[k][j];
            r[i][j] = s;
        }
    return r;
}

// adjN(m) * m = m * adjN(m) = detN(m) * I
Mat3Z adjN(const Mat3Z& m, int n) {
    Mat3Z r{};
    if (n == 2) {
        r[0][0] = m[1][1];
        r[0][1] = -m[0][1];
        r[1][0] = -m[1][0];
        r[1][1] = m[0][0];
        return r;
    }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int i1 = (i + 1) % 3, i2 = (i + 2) % 3;
            int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            // cofactor of (j, i), signs absorbed by the cyclic index choice
            r[i][j] = m[j1][i1] * m[j2][i2] - m[j1][i2] * m[j2][i1];
        }
    return r;
}

// Lower-triangular row HNF of k >= n rows spanning a rank-n lattice;
// n = 2 embeds into the 3x3 routine with a fixed third axis.
Mat3Z hnfN(std::vector<Vec3Z> rows, int n) {
    if (n == 2) {
        for (auto& r : rows) r[2] = 0;
        rows.push_back({Int(0), Int(0), Int(1)});
    }
    return hnf_rows(std::move(rows));
}

MonicIntPoly char_poly_3(const Mat3Z& x) {
    Int t1 = x[0][0] + x[1][1] + x[2][2];
    Int t2 = x[0][0] * x[1][1] - x[0][1] * x[1][0] + x[0][0] * x[2][2] -
             x[0][2] * x[2][0] + x[1][1] * x[2][2] - x[1][2] * x[2][1];
    Int t3 = det3(x);
    return MonicIntPoly::cubic(-t1, t2, -t3);
}

// ---- invariant subspaces of the reduction mod p ----

struct ModMat {
    int n;
    u64 a[3][3];
};

std::vector<u64> charpoly_mod(const ModMat& m, u64 p) {
    // lowest-degree coefficient first, leading 1 included
    if (m.n == 2) {
        u64 tr = (m.a[0][0] + m.a[1][1]) % p;
        u64 det = (m.a[0][0] * m.a[1][1] % p + p - m.a[0][1] * m.a[1][0] % p) % p;
        return {det, (p - tr) % p, 1};
    }
    u64 t1 = (m.a[0][0] + m.a[1][1] + m.a[2][2]) % p;
    auto minor2 = [&](int i, int j) {
        return (m.a[i][i] * m.a[j][j] % p + p - m.a[i][j] * m.a[j][i] % p) % p;
    };
    u64 t2 = (minor2(0, 1) + minor2(0, 2) + minor2(1, 2)) % p;
    u64 t3 = 0;
    {
        u64 s = m.a[0][0] * minor2(1, 2) % p;
        u64 b = m.a[0][1] * ((m.a[1][0] * m.a[2][2] % p + p - m.a[1][2] * m.a[2][0] % p) % p) % p;
        u64 c = m.a[0][2] * ((m.a[1][0] * m.a[2][1] % p + p - m.a[1][1] * m.a[2][0] % p) % p) % p;
        t3 = (s + p - b + c) % p;
    }
    return {(p - t3) % p, t2, (p - t1) % p, 1};
}

bool is_scalar_mod(const ModMat& m, u64 p) {
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (i != j ? m.a[i][j] % p != 0 : m.a[i][j] % p != m.a[0][0] % p) return false;
    return true;
}

std::vector<u64> flat_shifted(const ModMat& m, u64 lambda, bool transpose, u64 p) {
    std::vector<u64> f(static_cast<size_t>(m.n) * m.n);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j) {
            u64 v = transpose ? m.a[j][i] : m.a[i][j];
            if (i == j) v = (v + p - lambda % p) % p;
            f[static_cast<size_t>(i) * m.n + j] = v % p;
        }
    return f;
}

// All lines (1-dim subspaces) of the span of basis, as canonical generators.
std::vector<std::vector<u64>> lines_in_span(const std::vector<std::vector<u64>>& basis,
                                            int n, u64 p) {
    std::vector<std::vector<u64>> out;
    size_t d = basis.size();
    if (d == 1) {
        out.push_back(basis[0]);
    } else if (d == 2) {
        for (u64 t = 0; t < p; ++t) {
            std::vector<u64> v(n);
            for (int i = 0; i < n; ++i) v[i] = (basis[0][i] + t * basis[1][i]) % p;
            out.push_back(std::move(v));
        }
        out.push_back(basis[1]);
    } else {
        // span is everything; enumerate canonical projective representatives
        TFDL_CHECK(d == static_cast<size_t>(n), "lines_in_span: bad kernel dimension");
        if (n == 2) {
            for (u64 y = 0; y < p; ++y) out.push_back({1, y});
            out.push_back({0, 1});
        } else {
            for (u64 y = 0; y < p; ++y)
                for (u64 z = 0; z < p; ++z) out.push_back({1, y, z});
            for (u64 z = 0; z < p; ++z) out.push_back({0, 1, z});
            out.push_back({0, 0, 1});
        }
    }
    return out;
}

// Bases of the proper nonzero theta-invariant subspaces of F_p^n, as row
// spans.  Lines are left eigenrows (kernels of A^T - lambda); planes are the
// orthogonals of right eigencolumns (kernels of A - lambda).
std::vector<std::vector<std::vector<u64>>> invariant_subspaces(const ModMat& A, i64 p64) {
    u64 p = static_cast<u64>(p64);
    int n = A.n;
    if (is_scalar_mod(A, p))
        TFDL_CHECK(n == 2 || p64 <= 3000,
                   "invariant_subspaces: scalar reduction needs ~2 p^2 subspaces, p too large");
    std::vector<u64> cp = charpoly_mod(A, p);
    std::vector<u64> lambdas = poly_roots_mod_p(cp, p);
    std::vector<std::vector<std::vector<u64>>> out;
    for (u64 lam : lambdas) {
        auto ker = kernel_mod_p(flat_shifted(A, lam, true, p), n, n, p);
        TFDL_CHECK(!ker.empty(), "invariant_subspaces: eigenvalue without eigenvector");
        for (auto& line : lines_in_span(ker, n, p)) out.push_back({line});
    }
    if (n == 3) {
        for (u64 lam : lambdas) {
            auto ker = kernel_mod_p(flat_shifted(A, lam, false, p), n, n, p);
            for (auto& c : lines_in_span(ker, n, p)) {
                auto plane = kernel_mod_p(c, 1, 3, p);
                TFDL_CHECK(plane.size() == 2, "invariant_subspaces: plane of wrong dimension");
                out.push_back(plane);
            }
        }
    }
    return out;
}

// ---- the stable-lattice oracle ----

std::string lattice_key(const Mat3Z& R, int n) {
    std::string k;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            k += R[i][j].get_str();
            k += ',';
        }
    return k;
}

// R rows are a lattice basis in maximal-order coordinates; returns the
// matrix of theta on that basis, integral iff the lattice is stable.
Mat3Z action_on_lattice(const Mat3Z& R, const Mat3Z& Tmat, int n) {
    Mat3Z num = mulN(mulN(R, Tmat, n), adjN(R, n), n);
    Int d = detN(R, n);
    Mat3Z A{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            TFDL_CHECK(num[i][j] % d == 0, "action_on_lattice: unstable lattice");
            A[i][j] = num[i][j] / d;
        }
    return A;
}

Int oracle_count(const Mat3Z& Tmat, int n, i64 p, int e, i64 v) {
    Int cap = ipow(p, static_cast<unsigned>(n * v + e - 1));
    Mat3Z R0{};
    for (int i = 0; i < n; ++i) R0[i][i] = 1;
    std::set<std::string> seen;
    std::deque<Mat3Z> queue;
    seen.insert(lattice_key(R0, n));
    queue.push_back(R0);
    Int count = 0;
    while (!queue.empty()) {
        Mat3Z R = queue.front();
        queue.pop_front();
        count += 1;
        Mat3Z A = action_on_lattice(R, Tmat, n);
        ModMat Am;
        Am.n = n;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) Am.a[i][j] = mod_p(A[i][j], p);
        for (auto& basis : invariant_subspaces(Am, p)) {
            std::vector<Vec3Z> rows;
            for (auto& s : basis) {
                Vec3Z r{Int(0), Int(0), Int(0)};
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k) r[k] += Int(s[j]) * R[j][k];
                rows.push_back(r);
            }
            for (int i = 0; i < n; ++i)
                rows.push_back({Int(p) * R[i][0], Int(p) * R[i][1], Int(p) * R[i][2]});
            Mat3Z C = hnfN(std::move(rows), n);
            // homothety normalization: divide out p while imprimitive
            for (;;) {
                bool all = true;
                for (int i = 0; i < n && all; ++i)
                    for (int j = 0; j <= i && all; ++j)
                        if (C[i][j] % p != 0) all = false;
                if (!all) break;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j <= i; ++j) C[i][j] /= p;
            }
            TFDL_CHECK(detN(C, n) <= cap, "oracle_count: stable lattice beyond conductor cap");
            if (seen.insert(lattice_key(C, n)).second) queue.push_back(C);
        }
    }
    TFDL_CHECK(count % e == 0, "oracle_count: class count not divisible by e");
    return count;
}

// ---- theta actions on maximal orders ----

// Action of theta (root of the defining polynomial) on the integral basis.
Mat3Z theta_action(const CubicField& E) {
    const auto& f = E.defining_poly;
    Mat3Q C{};  // power-basis row v maps to v * C
    C[0][1] = 1;
    C[1][2] = 1;
    for (int j = 0; j < 3; ++j) C[2][j] = Rat(-f[j]);
    Mat3Q P = mul3q(mul3q(E.integral_basis, C), inverse3q(E.integral_basis));
    Mat3Z T{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            TFDL_CHECK(P[i][j].get_den() == 1, "theta_action: non-integral action");
            T[i][j] = P[i][j].get_num();
        }
    return T;
}

Mat3Z mult_matrix(const std::array<Int, 3>& xi, const CubicField& E) {
    Mat3Z T{};
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
            Int s = 0;
            for (int i = 0; i < 3; ++i) s += xi[i] * E.mult_table[i][j][k];
            T[j][k] = s;
        }
    return T;
}

// ---- quadratic local data ----

Rat c_quadratic_part(int chi, i64 p, i64 kappa) {
    // 1 + (1 - chi) (1 - p^-kappa) / (p - 1)
    Int pk = ipow(p, static_cast<unsigned>(kappa));
    return 1 + Rat(Int(1 - chi) * (pk - 1)) / Rat(pk * (p - 1));
}

// theta = (-b + sqrt(d0)) / 2 acting on the basis {1, (D + sqrt D)/2} of the
// maximal order of Q(sqrt d0), d0 = D cond^2.
Mat3Z quadratic_theta_action(const Int& b, i64 D, i64 cond) {
    Int m0 = (-b - Int(cond) * D) / 2;
    Mat3Z T{};
    T[0][0] = m0;
    T[0][1] = cond;
    T[1][0] = -Int(cond) * D * (D - 1) / 4;
    T[1][1] = m0 + Int(cond) * D;
    return T;
}

// Valuation of the discriminant of the quadratic cofactor of f over Z_p,
// for cubic f with exactly one root in Z_p.  Lifts the root by branching
// Hensel steps far past val_p(disc f), divides it out, and reads the
// discriminant of the quotient; the unit part is reduced mod 8 at p = 2
// and mod p otherwise, enough to classify the local quadratic field.
struct CofactorDisc {
    i64 val;
    u64 unit_mod;
};

CofactorDisc quad_cofactor_disc(const MonicIntPoly& f, i64 p) {
    Int disc = discriminant(f);
    TFDL_CHECK(disc != 0, "quad_cofactor_disc: singular polynomial");
    i64 V = static_cast<i64>(valuation(disc, Int(p)));
    unsigned M = static_cast<unsigned>(2 * V + 8);
    Int pM = ipow(p, M);
    auto fprime = [&](const Int& r) -> Int {
        return Int(3) * r * r + Int(2) * f[2] * r + f[1];
    };
    std::vector<u64> r0 = poly_roots_mod_p(
        {mod_p(f[0], p), mod_p(f[1], p), mod_p(f[2], p), 1}, static_cast<u64>(p));
    std::vector<Int> cur;
    for (u64 r : r0) cur.push_back(Int(r));
    Int pk = p;  // p^(k) at level k; residues live mod p^k after step k-1
    for (unsigned k = 1; k < M; ++k) {
        std::vector<Int> next;
        Int pk1 = pk * p;
        for (const Int& r : cur) {
            Int fr = f.eval(r) % pk1;
            if (fr < 0) fr += pk1;
            u64 fpr = mod_p(fprime(r), p);
            if (fpr != 0) {
                // unique Newton lift
                Int q = fr / pk;
                u64 qm = mod_p(q, p);
                u64 inv = 1, base = fpr, ex = static_cast<u64>(p) - 2;
                for (; ex; ex >>= 1, base = base * base % p)
                    if (ex & 1) inv = inv * base % p;
                u64 t = (p - qm % p) % p * inv % p;
                next.push_back(Int(r + Int(t) * pk));
            } else {
                for (i64 t = 0; t < p; ++t) {
                    Int rq = r + Int(t) * pk;
                    if (f.eval(rq) % pk1 == 0) next.push_back(rq);
                }
            }
        }
        TFDL_CHECK(!next.empty(), "quad_cofactor_disc: no p-adic root (shape mismatch)");
        TFDL_CHECK(next.size() <= 4096, "quad_cofactor_disc: root branching overflow");
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        cur = std::move(next);
        pk = pk1;
    }
    Int r = cur[0];
    Int beta = (f[2] + r) % pM;
    Int gamma = (f[1] + r * beta) % pM;
    Int rem = (f[0] + r * gamma) % pM;
    if (rem < 0) rem += pM;
    TFDL_CHECK(rem == 0 || static_cast<i64>(valuation(rem, Int(p))) >= static_cast<i64>(M) - 1,
               "quad_cofactor_disc: division remainder too large");
    Int dg = (beta * beta - 4 * gamma) % pM;
    if (dg < 0) dg += pM;
    TFDL_CHECK(dg != 0, "quad_cofactor_disc: cofactor discriminant lost to precision");
    i64 vg = static_cast<i64>(valuation(dg, Int(p)));
    TFDL_CHECK(vg <= V, "quad_cofactor_disc: cofactor valuation exceeds total");
    Int unit = dg / ipow(p, static_cast<unsigned>(vg));
    u64 red = p == 2 ? 8 : static_cast<u64>(p);
    TFDL_CHECK(M - static_cast<unsigned>(vg) >= 3, "quad_cofactor_disc: unit precision too low");
    return {vg, mpz_fdiv_ui(unit.get_mpz_t(), static_cast<unsigned long>(red))};
}

// (chi, kappa) of the quadratic local factor K in E_p = Q_p x K.
struct LocalQuad {
    int chi;
    i64 kappa;
};

LocalQuad quad_cofactor_local(const MonicIntPoly& f, i64 p) {
    CofactorDisc cd = quad_cofactor_disc(f, p);
    i64 vg = cd.val;
    if (p == 2) {
        if (vg % 2 == 1) return {0, (vg - 3) / 2};
        u64 u8 = cd.unit_mod;
        TFDL_CHECK(u8 != 1, "quad_cofactor_local: cofactor splits, shape mismatch");
        if (u8 == 5) return {-1, vg / 2};
        return {0, (vg - 2) / 2};
    }
    if (vg % 2 == 1) return {0, (vg - 1) / 2};
    int chi = jacobi_u64(static_cast<i64>(cd.unit_mod), static_cast<u64>(p));
    TFDL_CHECK(chi == -1, "quad_cofactor_local: cofactor splits, shape mismatch");
    return {chi, vg / 2};
}

OrbitalValue make_value(i64 p, const Rat& I, const Int& index_p) {
    OrbitalValue v;
    v.p = p;
    v.I_p = I;
    v.index_p = index_p;
    v.c = I / Rat(index_p);
    TFDL_CHECK(v.I_p >= 1 && v.c >= 1, "orbital value violates c >= 1");
    return v;
}

// Index of Z[xi] in the maximal order, from disc f = idx^2 * disc E.
Int global_index(const Int& disc_f, const Int& field_disc) {
    TFDL_CHECK(disc_f != 0, "global_index: singular polynomial");
    TFDL_CHECK(disc_f % field_disc == 0, "global_index: discriminant mismatch");
    Int q = disc_f / field_disc;
    TFDL_CHECK(q > 0, "global_index: discriminant quotient negative");
    Int idx = isqrt_floor(q);
    TFDL_CHECK(idx * idx == q, "global_index: discriminant quotient not a square");
    return idx;
}

// c at one prime of a generating cubic element with char poly f in E;
// Tmat, when given, is the multiplication matrix of xi on the integral
// basis (avoids rebuilding the field in the oracle branch).
Rat c_cubic_at_p(const MonicIntPoly& f, const CubicField& E, i64 p, const Mat3Z* Tmat) {
    Int idx = global_index(discriminant(f), E.field_disc);
    if (idx % p != 0) return Rat(1);
    i64 v = static_cast<i64>(valuation(idx, Int(p)));
    SplittingType st = splitting_type(E, p);
    if (st.shape.size() == 3) return Rat(1);
    if (st.shape.size() == 2) {
        LocalQuad lq = quad_cofactor_local(f, p);
        TFDL_CHECK(lq.kappa >= 0 && lq.kappa <= v, "c_cubic_at_p: cofactor index exceeds total");
        return c_quadratic_part(lq.chi, p, lq.kappa);
    }
    int e = st.shape[0].second;
    Mat3Z T = Tmat ? *Tmat : theta_action(E);
    Int count = oracle_count(T, 3, p, e, v);
    Rat c = Rat(count) / Rat(Int(e) * ipow(p, static_cast<unsigned>(v)));
    TFDL_CHECK(c >= 1, "c_cubic_at_p: oracle value below 1");
    return c;
}

}  // namespace

QuadDisc split_discriminant(i64 d) {
    TFDL_CHECK(d != 0, "split_discriminant: zero");
    i64 m = ((d % 4) + 4) % 4;
    TFDL_CHECK(m == 0 || m == 1, "split_discriminant: not 0 or 1 mod 4");
    SquareSplit ss = squarefree_split_i64(d);
    TFDL_CHECK(ss.kernel != 1, "split_discriminant: square discriminant");
    if (((ss.kernel % 4) + 4) % 4 == 1) return {ss.kernel, ss.root};
    TFDL_CHECK(ss.root % 2 == 0, "split_discriminant: parity");
    return {4 * ss.kernel, ss.root / 2};
}

StableLatticeCount stable_lattice_classes(const MonicIntPoly& f, i64 p) {
    check_prime(p, "stable_lattice_classes: p not prime");
    int n = f.degree();
    TFDL_CHECK(n == 2 || n == 3, "stable_lattice_classes: degree must be 2 or 3");
    if (n == 2) {
        Int d0i = discriminant(f);
        TFDL_CHECK(d0i != 0 && mpz_fits_slong_p(d0i.get_mpz_t()),
                   "stable_lattice_classes: discriminant out of range");
        i64 d0 = d0i.get_si();
        TFDL_CHECK(d0 < 0 || !is_square_i64(d0), "stable_lattice_classes: reducible polynomial");
        QuadDisc qd = split_discriminant(d0);
        int chi = kronecker(qd.fundamental, p);
        TFDL_CHECK(chi != 1, "stable_lattice_classes: non-elliptic (split) input");
        int e = chi == 0 ? 2 : 1;
        i64 v = qd.conductor % p == 0 ? valuation_i64(qd.conductor, p) : 0;
        Mat3Z T = quadratic_theta_action(f[1], qd.fundamental, qd.conductor);
        Int count = oracle_count(T, 2, p, e, v);
        return {count, e, ipow(p, static_cast<unsigned>(2 * v + e - 1))};
    }
    TFDL_CHECK(is_irreducible_cubic(f), "stable_lattice_classes: reducible polynomial");
    CubicField E = build_field(f);
    SplittingType st = splitting_type(E, p);
    TFDL_CHECK(st.shape.size() == 1, "stable_lattice_classes: non-elliptic (split) input");
    int e = st.shape[0].second;
    i64 v = E.index % p == 0 ? static_cast<i64>(valuation(E.index, Int(p))) : 0;
    Int count = oracle_count(theta_action(E), 3, p, e, v);
    return {count, e, ipow(p, static_cast<unsigned>(3 * v + e - 1))};
}

StableLatticeCount stable_lattice_classes(const Mat3Z& gamma, int n, i64 p) {
    TFDL_CHECK(n == 2 || n == 3, "stable_lattice_classes: n must be 2 or 3");
    std::vector<Int> coeffs;
    for (int i = 0; i < n; ++i) coeffs.push_back(-gamma[i][n - 1]);
    coeffs.push_back(Int(1));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n - 1; ++j)
            TFDL_CHECK(gamma[i][j] == (i == j + 1 ? 1 : 0),
                       "stable_lattice_classes: not a companion matrix");
    return stable_lattice_classes(MonicIntPoly(std::move(coeffs)), p);
}

OrbitalValue orbital_integral_p(const MonicIntPoly& f, i64 p) {
    check_prime(p, "orbital_integral_p: p not prime");
    int n = f.degree();
    TFDL_CHECK(n == 2 || n == 3, "orbital_integral_p: degree must be 2 or 3");
    if (n == 3) {
        TFDL_CHECK(is_irreducible_cubic(f), "orbital_integral_p: reducible cubic");
        return orbital_integral_p(f, build_field(f), p);
    }
    Int d0i = discriminant(f);
    TFDL_CHECK(d0i != 0 && mpz_fits_slong_p(d0i.get_mpz_t()),
               "orbital_integral_p: discriminant out of range");
    i64 d0 = d0i.get_si();
    TFDL_CHECK(d0 < 0 || !is_square_i64(d0), "orbital_integral_p: reducible polynomial");
    QuadDisc qd = split_discriminant(d0);
    i64 v = qd.conductor % p == 0 ? valuation_i64(qd.conductor, p) : 0;
    Int pv = ipow(p, static_cast<unsigned>(v));
    int chi = kronecker(qd.fundamental, p);
    if (v == 0) return make_value(p, Rat(1), Int(1));
    if (chi == 1) return make_value(p, Rat(pv), pv);
    int e = chi == 0 ? 2 : 1;
    Mat3Z T = quadratic_theta_action(f[1], qd.fundamental, qd.conductor);
    Int count = oracle_count(T, 2, p, e, v);
    return make_value(p, Rat(count) / e, pv);
}

OrbitalValue orbital_integral_p(const MonicIntPoly& f, const CubicField& E, i64 p) {
    check_prime(p, "orbital_integral_p: p not prime");
    TFDL_CHECK(f.degree() == 3, "orbital_integral_p: cubic expected");
    Int idx = global_index(discriminant(f), E.field_disc);
    i64 v = idx % p == 0 ? static_cast<i64>(valuation(idx, Int(p))) : 0;
    Int pv = ipow(p, static_cast<unsigned>(v));
    if (v == 0) return make_value(p, Rat(1), Int(1));
    SplittingType st = splitting_type(E, p);
    if (st.shape.size() == 3) return make_value(p, Rat(pv), pv);
    if (st.shape.size() == 2) {
        LocalQuad lq = quad_cofactor_local(f, p);
        TFDL_CHECK(lq.kappa >= 0 && lq.kappa <= v, "orbital_integral_p: cofactor index exceeds total");
        Rat c = c_quadratic_part(lq.chi, p, lq.kappa);
        return make_value(p, c * Rat(pv), pv);
    }
    int e = st.shape[0].second;
    Mat3Z T;
    if (f == E.defining_poly) {
        T = theta_action(E);
    } else {
        CubicField F = build_field(f);
        TFDL_CHECK(F.field_disc == E.field_disc, "orbital_integral_p: field mismatch");
        T = theta_action(F);
    }
    Int count = oracle_count(T, 3, p, e, v);
    return make_value(p, Rat(count) / e, pv);
}

Rat gl2_closed_form(i64 D, i64 p, int kappa) {
    check_prime(p, "gl2_closed_form: p not prime");
    TFDL_CHECK(kappa >= 0, "gl2_closed_form: negative kappa");
    TFDL_CHECK(is_fundamental_discriminant(D), "gl2_closed_form: D not fundamental");
    int chi = kronecker(D, p);
    Int pk = ipow(p, static_cast<unsigned>(kappa));
    Int geom = (pk - 1) / (p - 1);
    return Rat(pk + Int(1 - chi) * geom);
}

Rat quadratic_order_sum(i64 D, i64 p, int kappa) {
    check_prime(p, "quadratic_order_sum: p not prime");
    TFDL_CHECK(kappa >= 0, "quadratic_order_sum: negative kappa");
    TFDL_CHECK(is_fundamental_discriminant(D), "quadratic_order_sum: D not fundamental");
    int chi = kronecker(D, p);
    Int sum = 1;
    Int pj1 = 1;  // p^(j-1)
    for (int j = 1; j <= kappa; ++j) {
        sum += pj1 * (p - chi);
        pj1 *= p;
    }
    return Rat(sum);
}

MonicIntPoly char_poly_in_field(const std::array<Int, 3>& xi, const CubicField& E) {
    return char_poly_3(mult_matrix(xi, E));
}

Rat c_global(const std::array<Int, 3>& xi, const CubicField& E) {
    Mat3Z T = mult_matrix(xi, E);
    MonicIntPoly f = char_poly_3(T);
    TFDL_CHECK(is_irreducible_cubic(f), "c_global: xi does not generate the field");
    Int idx = global_index(discriminant(f), E.field_disc);
    TFDL_CHECK(mpz_fits_slong_p(idx.get_mpz_t()), "c_global: index out of range");
    Rat c(1);
    for (auto& [p, e] : factor_i64(idx.get_si())) c *= c_cubic_at_p(f, E, p, &T);
    TFDL_CHECK(c >= 1, "c_global: value below 1");
    return c;
}

Rat c_global(const MonicIntPoly& f, const CubicField& E) {
    TFDL_CHECK(f.degree() == 3 && is_irreducible_cubic(f), "c_global: irreducible cubic expected");
    Int idx = global_index(discriminant(f), E.field_disc);
    TFDL_CHECK(mpz_fits_slong_p(idx.get_mpz_t()), "c_global: index out of range");
    if (idx == 1) return Rat(1);
    CubicField F = f == E.defining_poly ? E : build_field(f);
    TFDL_CHECK(F.field_disc == E.field_disc, "c_global: field mismatch");
    Rat c(1);
    for (auto& [p, e] : factor_i64(idx.get_si())) c *= c_cubic_at_p(f, F, p, nullptr);
    TFDL_CHECK(c >= 1, "c_global: value below 1");
    return c;
}

namespace {

// All nine partials of disc(charpoly(x)) in closed form, through the chain
// rule on the coefficients a = -tr, b = sum of 2x2 principal minors,
// c = -det of charpoly T^3 + a T^2 + b T + c.
std::array<std::array<Int, 3>, 3> grad_disc(const Mat3Z& x) {
    Int t1 = x[0][0] + x[1][1] + x[2][2];
    MonicIntPoly cp = char_poly_3(x);
    Int a = cp[2], b = cp[1], c = cp[0];
    Int dA = 18 * b * c - 12 * a * a * c + 2 * a * b * b;
    Int dB = 18 * a * c + 2 * a * a * b - 12 * b * b;
    Int dC = 18 * a * b - 4 * a * a * a - 54 * c;
    Mat3Z adj = adjN(x, 3);
    std::array<std::array<Int, 3>, 3> g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Int da = i == j ? Int(-1) : Int(0);
            Int db = i == j ? Int(t1 - x[i][i]) : Int(-x[j][i]);
            Int dc = -adj[j][i];  // d det / d x_ij is the (i,j) cofactor
            g[i][j] = dA * da + dB * db + dC * dc;
        }
    return g;
}

bool has_unit_partial(const Mat3Z& y, i64 p) {
    auto g = grad_disc(y);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (mod_p(g[i][j], p) != 0) return true;
    return false;
}

// Distinct integer roots of a monic cubic; sizes 0, 1, 3 when disc != 0.
std::vector<Int> integer_roots_cubic(const MonicIntPoly& f) {
    std::vector<Int> roots;
    auto quad_roots = [&](const Int& b, const Int& c, std::vector<Int>& out) {
        Int dg = b * b - 4 * c;
        if (dg < 0) return;
        Int s = isqrt_floor(dg);
        if (s * s != dg) return;
        out.push_back((-b + s) / 2);
        if (s != 0) out.push_back((-b - s) / 2);
    };
    if (f[0] == 0) {
        roots.push_back(Int(0));
        std::vector<Int> qr;
        quad_roots(f[2], f[1], qr);
        for (auto& r : qr)
            if (r != 0) roots.push_back(r);
    } else {
        TFDL_CHECK(mpz_fits_slong_p(f.coeffs[0].get_mpz_t()),
                   "integer_roots_cubic: constant term out of range");
        for (i64 d : divisors_i64(f.coeffs[0].get_si())) {
            if (f.eval(Int(d)) == 0) roots.push_back(Int(d));
            if (f.eval(Int(-d)) == 0) roots.push_back(Int(-d));
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// c(Phi_p^0, x) for regular integral x, through the rational factorization
// of the char poly and the factorwise product.
Rat c_of_matrix(const MonicIntPoly& f, i64 p) {
    std::vector<Int> roots = integer_roots_cubic(f);
    TFDL_CHECK(roots.size() == 0 || roots.size() == 1 || roots.size() == 3,
               "c_of_matrix: impossible root count");
    if (roots.size() == 3) return Rat(1);
    if (roots.size() == 1) {
        Int r = roots[0];
        Int beta = f[2] + r;
        Int gamma = f[1] + r * beta;
        Int dgi = beta * beta - 4 * gamma;
        TFDL_CHECK(dgi != 0 && mpz_fits_slong_p(dgi.get_mpz_t()),
                   "c_of_matrix: cofactor discriminant out of range");
        i64 dg = dgi.get_si();
        TFDL_CHECK(dg < 0 || !is_square_i64(dg), "c_of_matrix: square cofactor with one root");
        QuadDisc qd = split_discriminant(dg);
        i64 kappa = qd.conductor % p == 0 ? valuation_i64(qd.conductor, p) : 0;
        return c_quadratic_part(kronecker(qd.fundamental, p), p, kappa);
    }
    CubicField E = build_field(f);
    return c_cubic_at_p(f, E, p, nullptr);
}

}  // namespace

TestFnValue testfn_eval(const Mat3Z& x, i64 p, int m) {
    check_prime(p, "testfn_eval: p not prime");
    TFDL_CHECK(m >= 0, "testfn_eval: negative depth");
    if (m == 0) return {Rat(1), false};
    MonicIntPoly f = char_poly_3(x);
    Int disc = discriminant(f);
    if (disc == 0) return {Rat(1), false};
    i64 vd = static_cast<i64>(valuation(disc, Int(p)));
    if (vd < m) return {Rat(1) / c_of_matrix(f, p), false};
    // Hensel certificate search: y = x mod p^m with val disc(y) >= m + 4
    // and a unit partial of disc at y.
    Int pm = ipow(p, static_cast<unsigned>(m));
    auto certified = [&](const Mat3Z& y) -> bool {
        Int dy = discriminant(char_poly_3(y));
        if (dy == 0) return true;
        if (static_cast<i64>(valuation(dy, Int(p))) < m + 4) return false;
        return has_unit_partial(y, p);
    };
    if (certified(x)) return {Rat(1), false};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (i64 t = 1; t <= 3 && t < p; ++t) {
                Mat3Z y = x;
                y[i][j] += Int(t) * pm;
                if (certified(y)) return {Rat(1), false};
            }
    return {Rat(1), true};
}

}  // namespace tfdl
