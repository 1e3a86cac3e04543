#include "tfdl/trace_lattice.hpp"

#include <algorithm>

namespace tfdl {

namespace {

// nearest integer to b/a for a > 0, ties toward -inf
Int round_div(const Int& b, const Int& a) {
    Int q, num = 2 * b + a, den = 2 * a;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

}  // namespace

void reduce_and_minima(TraceLattice& L) {
    Int a = L.gram3[0][0], b = L.gram3[0][1], c = L.gram3[1][1];
    TFDL_CHECK(L.gram3[1][0] == b, "reduce_and_minima: gram3 not symmetric");
    TFDL_CHECK(a > 0 && a * c - b * b > 0, "reduce_and_minima: form not positive definite");
    Mat2Z U{{{Int(1), Int(0)}, {Int(0), Int(1)}}};
    while (true) {
        if (a > c) {
            std::swap(a, c);
            std::swap(U[0], U[1]);
        }
        Int t = round_div(b, a);
        if (t != 0) {
            // v2 -= t v1
            c += t * t * a - 2 * t * b;
            b -= t * a;
            for (int k = 0; k < 2; ++k) U[1][k] -= t * U[0][k];
        }
        if (c >= a) break;  // now |2b| <= a <= c
    }
    L.reduced_basis = U;
    L.m1 = Rat(a) / 3;
    L.m2 = Rat(c) / 3;
}

TraceLattice gram_matrix(const CubicField& E) {
    TFDL_CHECK(E.poly_disc > 0, "gram_matrix: totally real field required");
    Mat3Z T = trace_matrix(E);
    // w0 = 1, so row 0 holds the traces of the basis elements
    TraceLattice L{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            L.gram3[i][j] = 3 * T[i + 1][j + 1] - T[0][i + 1] * T[0][j + 1];
    TFDL_CHECK(det2(L.gram3) == 3 * E.field_disc, "gram_matrix: det(gram3) != 3 D_E");
    reduce_and_minima(L);
    return L;
}

std::vector<ShortVector> enumerate_short_vectors(const TraceLattice& L, const Rat& X) {
    TFDL_CHECK(X > 0, "enumerate_short_vectors: positive bound required");
    const Mat2Z& U = L.reduced_basis;
    // reduced gram3: G' = U G U^T
    Int a(0), b(0), c(0);
    {
        std::array<std::array<Int, 2>, 2> GU;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                GU[i][j] = U[i][0] * L.gram3[0][j] + U[i][1] * L.gram3[1][j];
        a = GU[0][0] * U[0][0] + GU[0][1] * U[0][1];
        b = GU[0][0] * U[1][0] + GU[0][1] * U[1][1];
        c = GU[1][0] * U[1][0] + GU[1][1] * U[1][1];
    }
    Rat bound3 = 3 * X;  // Q <= X in gram3 units
    Int ad = a * c - b * b;
    TFDL_CHECK(ad > 0, "enumerate_short_vectors: lattice not reduced");
    auto q3 = [&](const Int& x, const Int& y) -> Int {
        return a * x * x + 2 * b * x * y + c * y * y;
    };

    std::vector<ShortVector> out;
    auto emit = [&](const Int& x, const Int& y, const Int& val) {
        Int u = x * U[0][0] + y * U[1][0];
        Int v = x * U[0][1] + y * U[1][1];
        if (v < 0 || (v == 0 && u < 0)) {
            u = -u;
            v = -v;
        }
        out.push_back({{u, v}, Rat(val) / 3});
    };

    // y = 0 sign classes: x > 0, contiguous from 1
    for (Int x = 1; Rat(q3(x, Int(0))) <= bound3; ++x) emit(x, Int(0), q3(x, Int(0)));
    // y > 0: completing the square gives y^2 <= bound3 * a / det
    Int ymax = isqrt_floor(floor_rat(bound3 * a / ad));
    for (Int y = 1; y <= ymax; ++y) {
        // solutions in x form one interval around the parabola vertex -by/a
        Int x0;
        mpz_fdiv_q(x0.get_mpz_t(), Int(-b * y).get_mpz_t(), a.get_mpz_t());
        if (Rat(q3(x0, y)) > bound3) {
            x0 += 1;
            if (Rat(q3(x0, y)) > bound3) continue;
        }
        Int xl = x0, xr = x0;
        while (Rat(q3(xl - 1, y)) <= bound3) --xl;
        while (Rat(q3(xr + 1, y)) <= bound3) ++xr;
        for (Int x = xl; x <= xr; ++x) emit(x, y, q3(x, y));
    }
    std::sort(out.begin(), out.end(), [](const ShortVector& p, const ShortVector& q) {
        if (p.q != q.q) return p.q < q.q;
        if (p.coeff[1] != q.coeff[1]) return p.coeff[1] < q.coeff[1];
        return p.coeff[0] < q.coeff[0];
    });
    return out;
}

Int count_lattice_points(const Int& a, const Int& b, const Int& c, const Int& X) {
    Int fourdet = 4 * a * c - b * b;
    TFDL_CHECK(a > 0 && fourdet > 0, "count_lattice_points: form not positive definite");
    if (X < 0) return 0;
    auto q = [&](const Int& x, const Int& y) -> Int {
        return a * x * x + b * x * y + c * y * y;
    };
    Int count = 0;
    Int ymax = isqrt_floor(Int(4 * a * X / fourdet));
    for (Int y = -ymax; y <= ymax; ++y) {
        Int x0;
        mpz_fdiv_q(x0.get_mpz_t(), Int(-b * y).get_mpz_t(), Int(2 * a).get_mpz_t());
        if (q(x0, y) > X) {
            x0 += 1;
            if (q(x0, y) > X) continue;
        }
        Int xl = x0, xr = x0;
        while (q(xl - 1, y) <= X) --xl;
        while (q(xr + 1, y) <= X) ++xr;
        count += xr - xl + 1;
    }
    return count;
}

}  // namespace tfdl
