#include "tfdl/linalg3.hpp"

#include "tfdl/modarith.hpp"

#include <algorithm>

namespace tfdl {

Mat3Z hnf_rows(std::vector<Vec3Z> rows) {
    // Column-by-column elimination with exact gcd steps; rows is mutated.
    // Columns are cleared right to left so the result is lower triangular:
    // H[col] is the unique generator with last nonzero entry in `col`.
    Mat3Z H{};
    size_t top = 0;
    for (int col = 2; col >= 0; --col) {
        // gcd all entries in this column below `top` into one row
        size_t pivot = top;
        bool found = false;
        for (size_t r = top; r < rows.size(); ++r)
            if (rows[r][col] != 0) { pivot = r; found = true; break; }
        TFDL_CHECK(found, "hnf_rows: rank deficient");
        std::swap(rows[top], rows[pivot]);
        for (size_t r = top + 1; r < rows.size(); ++r) {
            // Euclid on (rows[top][col], rows[r][col])
            while (rows[r][col] != 0) {
                Int q = rows[top][col] / rows[r][col];  // truncated is fine
                for (int k = 0; k < 3; ++k) rows[top][k] -= q * rows[r][k];
                std::swap(rows[top], rows[r]);
            }
        }
        if (rows[top][col] < 0)
            for (int k = 0; k < 3; ++k) rows[top][k] = -rows[top][k];
        for (int k = col + 1; k < 3; ++k)
            TFDL_CHECK(rows[top][k] == 0, "hnf_rows: elimination invariant");
        for (int k = 0; k < 3; ++k) H[col][k] = rows[top][k];
        ++top;
    }
    // reduce sub-diagonal entries into [0, diag)
    for (int i = 1; i < 3; ++i)
        for (int j = i - 1; j >= 0; --j) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), H[i][j].get_mpz_t(), H[j][j].get_mpz_t());
            if (q != 0)
                for (int k = 0; k < 3; ++k) H[i][k] -= q * H[j][k];
        }
    return H;
}

Int det3(const Mat3Z& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Rat det3q(const Mat3Q& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3Q inverse3q(const Mat3Q& m) {
    Rat d = det3q(m);
    TFDL_CHECK(d != 0, "inverse3q: singular");
    Mat3Q adj;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            int r0 = (i + 1) % 3, r1 = (i + 2) % 3;
            int c0 = (j + 1) % 3, c1 = (j + 2) % 3;
            // adj[j][i] = cofactor(i, j)
            adj[j][i] = m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) adj[i][j] /= d;
    return adj;
}

Mat3Q mul3q(const Mat3Q& a, const Mat3Q& b) {
    Mat3Q c{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Rat s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            c[i][j] = s;
        }
    return c;
}

Vec3Q mulvec3q(const Vec3Q& x, const Mat3Q& m) {
    Vec3Q y{};
    for (int j = 0; j < 3; ++j) {
        Rat s = 0;
        for (int k = 0; k < 3; ++k) s += x[k] * m[k][j];
        y[j] = s;
    }
    return y;
}

Vec3Q solve_lower_tri(const Mat3Z& H, const Vec3Q& x) {
    // c with c * H = x: back-substitute from the last coordinate
    Vec3Q c{};
    for (int j = 2; j >= 0; --j) {
        Rat s = x[j];
        for (int i = j + 1; i < 3; ++i) s -= c[i] * Rat(H[i][j]);
        TFDL_CHECK(H[j][j] != 0, "solve_lower_tri: singular");
        c[j] = s / Rat(H[j][j]);
    }
    return c;
}

std::vector<std::vector<u64>> kernel_mod_p(std::vector<u64> m, int rows, int cols, u64 p) {
    TFDL_CHECK(static_cast<size_t>(rows) * cols == m.size(), "kernel_mod_p: shape mismatch");
    for (auto& v : m) v %= p;
    std::vector<int> pivot_col(rows, -1);
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<size_t>(r) * cols + col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        for (int k = 0; k < cols; ++k)
            std::swap(m[static_cast<size_t>(piv) * cols + k], m[static_cast<size_t>(rank) * cols + k]);
        u64 inv = invmod(m[static_cast<size_t>(rank) * cols + col], p);
        for (int k = 0; k < cols; ++k) {
            auto& v = m[static_cast<size_t>(rank) * cols + k];
            v = mulmod(v, inv, p);
        }
        for (int r = 0; r < rows; ++r) {
            if (r == rank) continue;
            u64 f = m[static_cast<size_t>(r) * cols + col];
            if (f == 0) continue;
            for (int k = 0; k < cols; ++k) {
                auto& v = m[static_cast<size_t>(r) * cols + k];
                v = submod(v, mulmod(f, m[static_cast<size_t>(rank) * cols + k], p), p);
            }
        }
        pivot_col[rank] = col;
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (int r = 0; r < rank; ++r) is_pivot[pivot_col[r]] = true;
    std::vector<std::vector<u64>> basis;
    for (int col = 0; col < cols; ++col) {
        if (is_pivot[col]) continue;
        std::vector<u64> v(cols, 0);
        v[col] = 1;
        for (int r = 0; r < rank; ++r)
            v[pivot_col[r]] = submod(0, m[static_cast<size_t>(r) * cols + col], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace tfdl
