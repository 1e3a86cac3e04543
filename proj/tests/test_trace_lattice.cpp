#include "doctest.h"

#include "tfdl/trace_lattice.hpp"

#include <cmath>

using namespace tfdl;

namespace {

MonicIntPoly cub(long a2, long a1, long a0) {
    return MonicIntPoly({Int(a0), Int(a1), Int(a2), Int(1)});
}

TraceLattice lattice_from_gram(long a, long b, long c) {
    TraceLattice L{};
    L.gram3 = {{{Int(a), Int(b)}, {Int(b), Int(c)}}};
    reduce_and_minima(L);
    return L;
}

Mat2Z congruent_gram(const Mat2Z& G, const Mat2Z& U) {
    Mat2Z R{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) R[i][j] += U[i][k] * G[k][l] * U[j][l];
    return R;
}

// totally real rows of the field corpus: {a2, a1, a0, field_disc}
const long kRealFields[][4] = {
    {0, -3, 1, 81},           {1, -2, -1, 49},        {0, -21, -28, 3969},
    {0, -21, -35, 3969},      {1, -30, 27, 8281},     {0, -48, -120, 837},
    {0, -27, -27, 81},        {1, -111, -333, 350612}, {0, -507, -3042, 44616},
    {4, -20, -44, 15188},     {2, -5, 1, 361},        {0, -4, -1, 229},
};

}  // namespace

TEST_CASE("gram matrix pinned values") {
    CubicField E81 = build_field(cub(0, -3, 1));
    TraceLattice L81 = gram_matrix(E81);
    CHECK(L81.gram3[0][0] == 18);
    CHECK(L81.gram3[0][1] == -9);
    CHECK(L81.gram3[1][0] == -9);
    CHECK(L81.gram3[1][1] == 18);
    CHECK(det2(L81.gram3) == 243);
    CHECK(L81.m1 == Rat(6));
    CHECK(L81.m2 == Rat(6));

    CubicField E49 = build_field(cub(1, -2, -1));
    TraceLattice L49 = gram_matrix(E49);
    CHECK(L49.gram3[0][0] == 14);
    CHECK(L49.gram3[0][1] == -7);
    CHECK(L49.gram3[1][1] == 14);
    CHECK(det2(L49.gram3) == 147);
    CHECK(L49.m1 == Rat(14, 3));
    CHECK(L49.m2 == Rat(14, 3));
}

TEST_CASE("gram matrix rejects complex cubic fields") {
    CubicField E = build_field(cub(0, 0, -2));
    CHECK(E.poly_disc < 0);
    CHECK_THROWS(gram_matrix(E));
}

TEST_CASE("reduction reaches the reduced domain and preserves the lattice") {
    // unreduced input equivalent to [[18,-9],[-9,18]] via v2 += 5 v1
    TraceLattice L = lattice_from_gram(18, 81, 378);
    CHECK(L.m1 == Rat(6));
    CHECK(L.m2 == Rat(6));
    Int du = det2(L.reduced_basis);
    CHECK((du == 1 || du == -1));
    Mat2Z R = congruent_gram(L.gram3, L.reduced_basis);
    // reduced domain: |2b| <= a <= c, and minima match the diagonal
    CHECK(2 * abs(R[0][1]) <= R[0][0]);
    CHECK(R[0][0] <= R[1][1]);
    CHECK(Rat(R[0][0]) == 3 * L.m1);
    CHECK(Rat(R[1][1]) == 3 * L.m2);

    TraceLattice I3 = lattice_from_gram(3, 0, 3);
    CHECK(I3.m1 == Rat(1));
    CHECK(I3.m2 == Rat(1));

    TraceLattice B = lattice_from_gram(14, -7, 14);
    CHECK(B.m1 == Rat(14, 3));
    CHECK(B.m2 == Rat(14, 3));
}

TEST_CASE("reduction rejects indefinite and asymmetric input") {
    TraceLattice L{};
    L.gram3 = {{{Int(2), Int(3)}, {Int(3), Int(2)}}};  // det < 0
    CHECK_THROWS(reduce_and_minima(L));
    L.gram3 = {{{Int(2), Int(1)}, {Int(0), Int(2)}}};
    CHECK_THROWS(reduce_and_minima(L));
}

TEST_CASE("short vector enumeration matches pinned sign classes") {
    CubicField E81 = build_field(cub(0, -3, 1));
    TraceLattice L81 = gram_matrix(E81);
    auto sv = enumerate_short_vectors(L81, Rat(6));
    REQUIRE(sv.size() == 3);
    for (auto& v : sv) CHECK(v.q == Rat(6));
    // theta, theta^2, theta + theta^2 up to sign
    bool seen10 = false, seen01 = false, seen11 = false;
    for (auto& v : sv) {
        if (v.coeff[0] == 1 && v.coeff[1] == 0) seen10 = true;
        if (v.coeff[0] == 0 && v.coeff[1] == 1) seen01 = true;
        if ((v.coeff[0] == 1 && v.coeff[1] == 1) || (v.coeff[0] == -1 && v.coeff[1] == 1))
            seen11 = true;
    }
    CHECK(seen10);
    CHECK(seen01);
    CHECK(seen11);
    CHECK(enumerate_short_vectors(L81, Rat(6) - Rat(1, 3)).empty());

    CubicField E49 = build_field(cub(1, -2, -1));
    auto sv49 = enumerate_short_vectors(gram_matrix(E49), Rat(14, 3));
    CHECK(sv49.size() == 3);
    for (auto& v : sv49) CHECK(v.q == Rat(14, 3));
}

TEST_CASE("short vectors are exact, sorted, and sign-normalized") {
    for (auto& row : kRealFields) {
        CubicField E = build_field(cub(row[0], row[1], row[2]));
        TraceLattice L = gram_matrix(E);
        Rat X = 4 * L.m1 + 7;
        auto sv = enumerate_short_vectors(L, X);
        REQUIRE(!sv.empty());
        for (size_t i = 0; i < sv.size(); ++i) {
            const auto& v = sv[i];
            CHECK(v.q >= L.m1);
            CHECK(v.q <= X);
            // exact Q recomputation from gram3
            Rat q = Rat(L.gram3[0][0] * v.coeff[0] * v.coeff[0] +
                        2 * L.gram3[0][1] * v.coeff[0] * v.coeff[1] +
                        L.gram3[1][1] * v.coeff[1] * v.coeff[1]) /
                    3;
            CHECK(q == v.q);
            CHECK((v.coeff[1] > 0 || (v.coeff[1] == 0 && v.coeff[0] > 0)));
            if (i > 0) CHECK(sv[i - 1].q <= v.q);
        }
        // minimum is attained
        CHECK(sv.front().q == L.m1);
    }
}

TEST_CASE("lattice point counts: pinned disks") {
    CHECK(count_lattice_points(Int(1), Int(0), Int(1), Int(25)) == 81);
    CHECK(count_lattice_points(Int(1), Int(0), Int(1), Int(0)) == 1);
    // 2x^2 + 2y^2 <= 25 is x^2 + y^2 <= 12, which has 37 points
    CHECK(count_lattice_points(Int(2), Int(0), Int(2), Int(25)) == 37);
    CHECK(count_lattice_points(Int(1), Int(1), Int(1), Int(-3)) == 0);
}

TEST_CASE("lattice point counts agree with a direct box scan") {
    const long forms[][3] = {{1, 0, 1}, {2, 1, 3}, {5, -3, 7}, {3, 2, 5}};
    for (auto& f : forms) {
        long a = f[0], b = f[1], c = f[2];
        for (long X : {0L, 7L, 50L, 300L}) {
            long direct = 0;
            for (long x = -60; x <= 60; ++x)
                for (long y = -60; y <= 60; ++y)
                    if (a * x * x + b * x * y + c * y * y <= X) ++direct;
            CHECK(count_lattice_points(Int(a), Int(b), Int(c), Int(X)) == direct);
        }
    }
}

TEST_CASE("enumeration count matches lattice point count") {
    // 2 * (sign classes with Q <= X) + origin = all points of the gram3 form <= 3X
    for (auto& row : kRealFields) {
        CubicField E = build_field(cub(row[0], row[1], row[2]));
        TraceLattice L = gram_matrix(E);
        for (int mult : {1, 3, 10}) {
            Rat X = mult * L.m1;
            Int target = 3 * X.get_num() / X.get_den();
            Int pts = count_lattice_points(L.gram3[0][0], 2 * L.gram3[0][1], L.gram3[1][1], target);
            auto sv = enumerate_short_vectors(L, X);
            CHECK(Int(2 * sv.size() + 1) == pts);
        }
    }
}

TEST_CASE("corpus invariants: determinant and Minkowski bounds") {
    for (auto& row : kRealFields) {
        CubicField E = build_field(cub(row[0], row[1], row[2]));
        CHECK(E.field_disc == row[3]);
        TraceLattice L = gram_matrix(E);
        CHECK(det2(L.gram3) == 3 * E.field_disc);
        Rat D(E.field_disc);
        CHECK(L.m1 <= L.m2);
        CHECK(L.m1 * L.m2 >= D / 3);
        CHECK(L.m1 * L.m2 <= 4 * D / 9);
        // minima have denominator dividing 3
        CHECK(Rat(3 * L.m1).get_den() == 1);
        CHECK(Rat(3 * L.m2).get_den() == 1);
    }
}

TEST_CASE("isomorphic fields share successive minima") {
    // same field through a non-monogenic defining polynomial (index 27)
    TraceLattice A = gram_matrix(build_field(cub(0, -3, 1)));
    TraceLattice B = gram_matrix(build_field(cub(0, -27, -27)));
    CHECK(A.m1 == B.m1);
    CHECK(A.m2 == B.m2);
}

TEST_CASE("point counts track the ellipse area") {
    const long forms[][3] = {{1, 0, 1}, {2, 0, 2}, {1, 1, 1}, {2, 1, 3}, {5, -3, 7}};
    for (auto& f : forms) {
        double a = double(f[0]), b = double(f[1]), c = double(f[2]);
        double rtdet = std::sqrt(4 * a * c - b * b);
        for (long X : {10L, 100L, 1000L, 10000L}) {
            Int n = count_lattice_points(Int(f[0]), Int(f[1]), Int(f[2]), Int(X));
            double area = 2 * M_PI * double(X) / rtdet;
            CHECK(std::abs(n.get_d() - area) <= 8 * std::sqrt(double(X)) + 4);
        }
    }
}
