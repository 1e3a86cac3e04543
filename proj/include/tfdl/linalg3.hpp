#pragma once

// Small exact linear algebra for rank-3 lattices and F_p spaces: row HNF,
// determinants, triangular solves, dense kernels mod p.

#include "tfdl/rat.hpp"

#include <array>
#include <vector>

namespace tfdl {

using Vec3Q = std::array<Rat, 3>;
using Mat3Q = std::array<Vec3Q, 3>;
using Vec3Z = std::array<Int, 3>;
using Mat3Z = std::array<Vec3Z, 3>;

// Row-style Hermite normal form of a full-rank set of row generators:
// lower triangular, positive diagonal, 0 <= H[i][j] < H[j][j] for j < i.
Mat3Z hnf_rows(std::vector<Vec3Z> rows);

Int det3(const Mat3Z& m);
Rat det3q(const Mat3Q& m);

Mat3Q inverse3q(const Mat3Q& m);

Mat3Q mul3q(const Mat3Q& a, const Mat3Q& b);
Vec3Q mulvec3q(const Vec3Q& x, const Mat3Q& m);  // row vector times matrix

// Coordinates c with x = c * H for lower-triangular H (exact back-substitution).
Vec3Q solve_lower_tri(const Mat3Z& H, const Vec3Q& x);

// Basis of {x : M x = 0 (mod p)} for a dense rows x cols matrix (row-major).
std::vector<std::vector<u64>> kernel_mod_p(std::vector<u64> m, int rows, int cols, u64 p);

}  // namespace tfdl
