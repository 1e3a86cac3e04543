#include "tfdl/cubic_field.hpp"

#include "tfdl/modarith.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

namespace tfdl {

namespace {

// Elements of Q[T]/(f) as coordinates in 1, theta, theta^2.
Vec3Q mul_mod_f(const Vec3Q& x, const Vec3Q& y, const MonicIntPoly& f) {
    Rat c0 = Rat(f[0]), c1 = Rat(f[1]), c2 = Rat(f[2]);
    Rat z0 = x[0] * y[0];
    Rat z1 = x[0] * y[1] + x[1] * y[0];
    Rat z2 = x[0] * y[2] + x[1] * y[1] + x[2] * y[0];
    Rat z3 = x[1] * y[2] + x[2] * y[1];
    Rat z4 = x[2] * y[2];
    // theta^3 = -c2 t^2 - c1 t - c0; theta^4 = (c2^2-c1) t^2 + (c2 c1-c0) t + c2 c0
    return {z0 - z3 * c0 + z4 * (c2 * c0),
            z1 - z3 * c1 + z4 * (c2 * c1 - c0),
            z2 - z3 * c2 + z4 * (c2 * c2 - c1)};
}

// An order containing Z[theta]: basis rows H[i]/den in power coordinates,
// H in row HNF.  For a genuine order H[0] = (den, 0, 0), i.e. omega_0 = 1.
struct Order {
    Int den;
    Mat3Z H;
};

Order order_from_basis(const Mat3Q& B) {
    Int den = 1;
    for (auto& row : B)
        for (auto& e : row) den = lcm(den, e.get_den());
    std::vector<Vec3Z> rows;
    for (auto& row : B) {
        Vec3Z r;
        for (int k = 0; k < 3; ++k) {
            Rat v = row[k] * Rat(den);
            TFDL_CHECK(v.get_den() == 1, "order_from_basis: denominator bookkeeping");
            r[k] = v.get_num();
        }
        rows.push_back(r);
    }
    Mat3Z H = hnf_rows(std::move(rows));
    // strip common content so den is minimal
    Int g = den;
    for (auto& row : H)
        for (auto& e : row)
            if (e != 0) g = gcd(g, e);
    if (g > 1) {
        den /= g;
        for (auto& row : H)
            for (auto& e : row) e /= g;
    }
    TFDL_CHECK(H[0][0] == den && H[0][1] == 0 && H[0][2] == 0,
               "order_from_basis: 1 is not a basis vector (not an order)");
    return {den, H};
}

Mat3Q basis_of(const Order& O) {
    Mat3Q B;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B[i][j] = Rat(O.H[i][j]) / Rat(O.den);
    return B;
}

Int index_over_equation_order(const Order& O) {
    Int dh = O.H[0][0] * O.H[1][1] * O.H[2][2];
    Int d3 = O.den * O.den * O.den;
    TFDL_CHECK(d3 % dh == 0, "order index is not integral");
    return d3 / dh;
}

// omega_i * omega_j in omega coordinates; integrality certifies closure.
void structure_constants(const Order& O, const MonicIntPoly& f, Int C[3][3][3]) {
    Mat3Q B = basis_of(O);
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            Vec3Q prod = mul_mod_f(B[i], B[j], f);
            for (int k = 0; k < 3; ++k) prod[k] *= Rat(O.den);
            Vec3Q c = solve_lower_tri(O.H, prod);
            for (int k = 0; k < 3; ++k) {
                TFDL_CHECK(c[k].get_den() == 1,
                           "structure constants not integral (basis is not an order)");
                C[i][j][k] = c[k].get_num();
                C[j][i][k] = C[i][j][k];
            }
        }
}

// Matrix of x -> x^(p^m) on O/pO with p^m >= 3 (kernel = nilradical), and
// the plain Frobenius matrix (row i = coords of omega_i^p).
struct ModPAlgebra {
    u64 p;
    u64 C[3][3][3];  // structure constants mod p

    std::array<u64, 3> mul(const std::array<u64, 3>& x, const std::array<u64, 3>& y) const {
        std::array<u64, 3> z{0, 0, 0};
        for (int i = 0; i < 3; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < 3; ++j) {
                if (y[j] == 0) continue;
                u64 t = mulmod(x[i], y[j], p);
                for (int k = 0; k < 3; ++k)
                    z[k] = addmod(z[k], mulmod(t, C[i][j][k], p), p);
            }
        }
        return z;
    }
    std::array<u64, 3> pow(std::array<u64, 3> x, u64 e) const {
        std::array<u64, 3> r{1, 0, 0};  // omega_0 = 1
        while (e) {
            if (e & 1) r = mul(r, x);
            x = mul(x, x);
            e >>= 1;
        }
        return r;
    }
};

ModPAlgebra algebra_mod_p(const Int C[3][3][3], i64 p) {
    ModPAlgebra A;
    A.p = static_cast<u64>(p);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                Int r = C[i][j][k] % p;
                if (r < 0) r += p;
                A.C[i][j][k] = r.get_ui();
            }
    return A;
}

// rows of the map x -> x * M as a column-convention matrix for kernel_mod_p
std::vector<u64> transpose_flat(const std::array<std::array<u64, 3>, 3>& M) {
    std::vector<u64> t(9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t[static_cast<size_t>(j) * 3 + i] = M[i][j];
    return t;
}

std::array<std::array<u64, 3>, 3> frobenius_matrix(const ModPAlgebra& A, u64 e) {
    std::array<std::array<u64, 3>, 3> F;
    for (int i = 0; i < 3; ++i) {
        std::array<u64, 3> w{0, 0, 0};
        w[i] = 1;
        F[i] = A.pow(w, e);
    }
    return F;
}

u64 nilpotency_exponent(u64 p) {
    u64 e = p;
    while (e < 3) e *= p;  // p^m >= 3 kills every nilpotent in dimension 3
    return e;
}

}  // namespace

std::pair<bool, Mat3Q> dedekind_enlarge(const MonicIntPoly& f, i64 p,
                                        const Mat3Q& order_basis) {
    TFDL_CHECK(f.degree() == 3, "dedekind_enlarge: cubic required");
    TFDL_CHECK(p >= 2, "dedekind_enlarge: prime required");
    Order O = order_from_basis(order_basis);
    Int ind = index_over_equation_order(O);
    Int disc_O = discriminant(f);
    TFDL_CHECK(disc_O % (ind * ind) == 0, "dedekind_enlarge: index^2 must divide disc");
    disc_O /= ind * ind;
    // v_p(disc) <= 1 already forces p-maximality (an enlargement drops disc by p^2)
    if (disc_O % p != 0 || (disc_O / p) % p != 0) return {true, order_basis};

    Int C[3][3][3];
    structure_constants(O, f, C);
    ModPAlgebra A = algebra_mod_p(C, p);

    auto F = frobenius_matrix(A, nilpotency_exponent(A.p));
    auto nil = kernel_mod_p(transpose_flat(F), 3, 3, A.p);

    // radical lattice in omega coordinates: lifts of the nilradical plus p*O
    std::vector<Vec3Z> rad_rows;
    for (auto& v : nil) rad_rows.push_back({Int(v[0]), Int(v[1]), Int(v[2])});
    for (int i = 0; i < 3; ++i) {
        Vec3Z r{0, 0, 0};
        r[i] = p;
        rad_rows.push_back(r);
    }
    Mat3Z R = hnf_rows(std::move(rad_rows));

    // multiplier condition x * I_p <= p I_p: action of omega_i on I_p / p I_p
    std::vector<u64> cond(9 * 3, 0);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            // omega_i * rho_j in omega coords, rho_j = sum_k R[j][k] omega_k
            Vec3Q w{Rat(0), Rat(0), Rat(0)};
            for (int k = 0; k < 3; ++k) {
                if (R[j][k] == 0) continue;
                for (int l = 0; l < 3; ++l) w[l] += Rat(R[j][k] * C[i][k][l]);
            }
            // coordinates in the R basis; integral because I_p is an ideal
            Mat3Z RZ = R;
            Vec3Q y = solve_lower_tri(RZ, w);
            for (int k = 0; k < 3; ++k) {
                TFDL_CHECK(y[k].get_den() == 1, "radical lattice is not an ideal");
                Int r = y[k].get_num() % p;
                if (r < 0) r += p;
                cond[static_cast<size_t>(j * 3 + k) * 3 + i] = r.get_ui();
            }
        }
    }
    auto mult = kernel_mod_p(std::move(cond), 9, 3, A.p);
    if (mult.empty()) return {true, order_basis};

    // O' = O + (1/p) * span(mult lifts); lattice rows over denominator den*p
    std::vector<Vec3Z> rows;
    for (int i = 0; i < 3; ++i) {
        Vec3Z r;
        for (int k = 0; k < 3; ++k) r[k] = p * O.H[i][k];
        rows.push_back(r);
    }
    for (auto& u : mult) {
        Vec3Z r{0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) r[k] += Int(u[i]) * O.H[i][k];
        rows.push_back(r);
    }
    Order O2{O.den * p, hnf_rows(std::move(rows))};
    Int ind2 = index_over_equation_order(O2);
    TFDL_CHECK(ind2 > ind && ind2 % ind == 0, "dedekind_enlarge: order did not grow");
    return {false, basis_of(O2)};
}

CubicField build_field(const MonicIntPoly& f) {
    TFDL_CHECK(f.degree() == 3, "build_field: cubic required");
    TFDL_CHECK(is_irreducible_cubic(f), "build_field: reducible polynomial");
    CubicField E{f, discriminant(f), 0, 0, {}, {}, false};
    TFDL_CHECK(E.poly_disc != 0, "build_field: zero discriminant");
    TFDL_CHECK(mpz_fits_slong_p(E.poly_disc.get_mpz_t()),
               "build_field: discriminant too large to factor");

    Mat3Q B{};
    for (int i = 0; i < 3; ++i) B[i][i] = 1;
    for (auto& [p, e] : factor_i64(E.poly_disc.get_si())) {
        if (e < 2) continue;
        for (int round = 0;; ++round) {
            TFDL_CHECK(round < 64, "build_field: maximalization did not stabilize");
            auto [done, B2] = dedekind_enlarge(f, p, B);
            B = B2;
            if (done) break;
        }
    }

    Order O = order_from_basis(B);
    E.index = index_over_equation_order(O);
    Int ind2 = E.index * E.index;
    TFDL_CHECK(E.poly_disc % ind2 == 0, "build_field: index^2 does not divide disc");
    E.field_disc = E.poly_disc / ind2;
    E.integral_basis = basis_of(O);
    structure_constants(O, f, E.mult_table);
    E.is_galois = is_perfect_square(E.field_disc);
    Int m4 = E.field_disc % 4;
    if (m4 < 0) m4 += 4;
    TFDL_CHECK(m4 == 0 || m4 == 1, "build_field: discriminant violates Stickelberger");
    return E;
}

SplittingType splitting_type(const CubicField& E, i64 p) {
    TFDL_CHECK(p >= 2, "splitting_type: prime required");
    SplittingType st;
    st.p = p;
    if (E.index % p != 0) {
        auto fac = factor_mod_p(E.defining_poly, static_cast<u64>(p));
        for (auto& [deg, mult] : fac.factors) st.shape.push_back({deg, mult});
    } else {
        ModPAlgebra A = algebra_mod_p(E.mult_table, p);
        auto F = frobenius_matrix(A, nilpotency_exponent(A.p));
        size_t dim_nil = kernel_mod_p(transpose_flat(F), 3, 3, A.p).size();
        if (dim_nil == 2) {
            st.shape = {{1, 3}};
        } else if (dim_nil == 1) {
            st.shape = {{1, 1}, {1, 2}};
        } else {
            TFDL_CHECK(dim_nil == 0, "splitting_type: nilradical of dimension 3");
            auto Fp = frobenius_matrix(A, A.p);
            for (int i = 0; i < 3; ++i) Fp[i][i] = submod(Fp[i][i], 1, A.p);
            size_t r = kernel_mod_p(transpose_flat(Fp), 3, 3, A.p).size();
            if (r == 1) st.shape = {{3, 1}};
            else if (r == 2) st.shape = {{1, 1}, {2, 1}};
            else st.shape = {{1, 1}, {1, 1}, {1, 1}};
        }
    }
    std::sort(st.shape.begin(), st.shape.end());
    int total = 0;
    for (auto& [fd, e] : st.shape) total += fd * e;
    TFDL_CHECK(total == 3, "splitting_type: e*f sum violated");
    return st;
}

int automorphism_count(const CubicField& E) { return E.is_galois ? 3 : 1; }

std::vector<std::complex<long double>> poly_roots_numeric(const MonicIntPoly& f) {
    using C = std::complex<long double>;
    int n = f.degree();
    TFDL_CHECK(n == 2 || n == 3, "poly_roots_numeric: degree 2 or 3");
    std::vector<long double> c(n + 1);
    for (int i = 0; i <= n; ++i) c[i] = mpz_get_d(f[i].get_mpz_t());
    auto horner = [&](C x) {
        C v = 0;
        for (int i = n; i >= 0; --i) v = v * x + c[i];
        return v;
    };
    auto dhorner = [&](C x) {
        C v = 0;
        for (int i = n; i >= 1; --i) v = v * x + c[i] * static_cast<long double>(i);
        return v;
    };
    std::vector<C> roots;
    if (n == 2) {
        C disc = c[1] * c[1] - 4.0L * c[0];
        C s = std::sqrt(disc);
        roots = {(-c[1] - s) / 2.0L, (-c[1] + s) / 2.0L};
    } else {
        long double sh = c[2] / 3.0L;
        long double P = c[1] - c[2] * c[2] / 3.0L;
        long double Q = 2.0L * c[2] * c[2] * c[2] / 27.0L - c[2] * c[1] / 3.0L + c[0];
        long double disc = -4.0L * P * P * P - 27.0L * Q * Q;
        if (disc >= 0) {
            // three real roots, trigonometric form
            long double m = 2.0L * std::sqrt(std::max(0.0L, -P / 3.0L));
            long double arg = m == 0 ? 0.0L : 3.0L * Q / (P * m);
            arg = std::min(1.0L, std::max(-1.0L, arg));
            long double phi = std::acos(arg);
            for (int k = 0; k < 3; ++k)
                roots.push_back(C(m * std::cos((phi + 2.0L * M_PIl * k) / 3.0L) - sh, 0.0L));
        } else {
            long double A = std::sqrt(Q * Q / 4.0L + P * P * P / 27.0L);
            long double u = std::cbrt(-Q / 2.0L + A);
            long double v = std::cbrt(-Q / 2.0L - A);
            long double re = -(u + v) / 2.0L - sh;
            long double im = std::sqrt(3.0L) * (u - v) / 2.0L;
            roots = {C(u + v - sh, 0.0L), C(re, -im), C(re, im)};
        }
    }
    // Newton polish on the original polynomial
    for (auto& r : roots)
        for (int it = 0; it < 40; ++it) {
            C d = dhorner(r);
            if (std::abs(d) == 0) break;
            C step = horner(r) / d;
            r -= step;
            if (std::abs(step) < 1e-17L * (1.0L + std::abs(r))) break;
        }
    for (auto& r : roots)
        if (std::abs(r.imag()) < 1e-12L * (1.0L + std::abs(r.real()))) r = C(r.real(), 0.0L);
    std::sort(roots.begin(), roots.end(), [](const C& a, const C& b) {
        if (a.imag() != b.imag()) return a.imag() < b.imag();
        return a.real() < b.real();
    });
    return roots;
}

namespace {

std::vector<SplittingType> fingerprint(const CubicField& E) {
    std::vector<SplittingType> fp;
    for (u64 p : {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                  43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97})
        fp.push_back(splitting_type(E, static_cast<i64>(p)));
    return fp;
}

bool certify_embedding(const CubicField& E1, const CubicField& E2) {
    using C = std::complex<long double>;
    auto r1 = poly_roots_numeric(E1.defining_poly);
    auto r2 = poly_roots_numeric(E2.defining_poly);
    i64 max_den = 1;
    if (mpz_fits_slong_p(E2.index.get_mpz_t())) max_den = E2.index.get_si();
    int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& pm : perm) {
        // solve V c = alpha with V[i] = (1, r2[i], r2[i]^2), alpha[i] = r1[perm[i]]
        C M[3][4];
        for (int i = 0; i < 3; ++i) {
            M[i][0] = 1;
            M[i][1] = r2[i];
            M[i][2] = r2[i] * r2[i];
            M[i][3] = r1[pm[i]];
        }
        bool singular = false;
        for (int col = 0; col < 3 && !singular; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
            if (std::abs(M[piv][col]) < 1e-30L) { singular = true; break; }
            std::swap(M[col], M[piv]);
            for (int r = 0; r < 3; ++r) {
                if (r == col) continue;
                C fct = M[r][col] / M[col][col];
                for (int k = col; k < 4; ++k) M[r][k] -= fct * M[col][k];
            }
        }
        if (singular) continue;
        Vec3Q coeff;
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
            C ci = M[i][3] / M[i][i];
            if (std::abs(ci.imag()) > 1e-7L * (1.0L + std::abs(ci))) { ok = false; break; }
            i64 num, den;
            if (!approx_to_rational(ci.real(), max_den, &num, &den)) { ok = false; break; }
            coeff[i] = Rat(num, den);
            coeff[i].canonicalize();
        }
        if (!ok) continue;
        // exact verification: f1(c0 + c1 T + c2 T^2) = 0 mod f2
        const MonicIntPoly& f1 = E1.defining_poly;
        const MonicIntPoly& f2 = E2.defining_poly;
        Vec3Q g = coeff;
        Vec3Q g2 = mul_mod_f(g, g, f2);
        Vec3Q g3 = mul_mod_f(g2, g, f2);
        bool zero = true;
        for (int k = 0; k < 3; ++k) {
            Rat v = g3[k] + Rat(f1[2]) * g2[k] + Rat(f1[1]) * g[k];
            if (k == 0) v += Rat(f1[0]);
            if (v != 0) { zero = false; break; }
        }
        if (zero) return true;
    }
    return false;
}

}  // namespace

Tri is_isomorphic_detailed(const CubicField& E1, const CubicField& E2) {
    if (E1.field_disc != E2.field_disc) return Tri::kFalse;
    if (fingerprint(E1) != fingerprint(E2)) return Tri::kFalse;
    return certify_embedding(E1, E2) ? Tri::kTrue : Tri::kUndecided;
}

bool is_isomorphic(const CubicField& E1, const CubicField& E2) {
    Tri t = is_isomorphic_detailed(E1, E2);
    TFDL_CHECK(t != Tri::kUndecided, "is_isomorphic: certification failed after fingerprint agreement");
    return t == Tri::kTrue;
}

Mat3Z trace_matrix(const CubicField& E) {
    Int t[3];
    for (int k = 0; k < 3; ++k) {
        t[k] = 0;
        for (int j = 0; j < 3; ++j) t[k] += E.mult_table[k][j][j];
    }
    Mat3Z M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            M[i][j] = 0;
            for (int k = 0; k < 3; ++k) M[i][j] += E.mult_table[i][j][k] * t[k];
        }
    return M;
}

std::string field_json_record(const CubicField& E) {
    nlohmann::json j;
    j["poly"] = {E.defining_poly[0].get_str(), E.defining_poly[1].get_str(),
                 E.defining_poly[2].get_str()};
    j["field_disc"] = E.field_disc.get_str();
    j["index"] = E.index.get_str();
    j["is_galois"] = E.is_galois;
    nlohmann::json fp = nlohmann::json::array();
    for (auto& st : fingerprint(E)) {
        nlohmann::json shape = nlohmann::json::array();
        for (auto& [fd, e] : st.shape) shape.push_back({fd, e});
        fp.push_back({{"p", st.p}, {"shape", shape}});
    }
    j["fingerprint"] = fp;
    return j.dump();
}

}  // namespace tfdl
