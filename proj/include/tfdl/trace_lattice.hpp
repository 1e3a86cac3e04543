#pragma once

#include "tfdl/cubic_field.hpp"

#include <vector>

namespace tfdl {

using Mat2Z = std::array<std::array<Int, 2>, 2>;
using Vec2Z = std::array<Int, 2>;

inline Int det2(const Mat2Z& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

// Rank-2 lattice O_E/Z with the form Q(x) = tr(x^2) - (1/3) tr(x)^2.
// gram3 = 3 * Gram of the associated bilinear form on the images of the
// integral basis vectors w1, w2; integer entries, det(gram3) = 3 * D_E.
struct TraceLattice {
    Mat2Z gram3;
    Mat2Z reduced_basis;  // rows: reduced basis in (w1, w2) coordinates, det = +-1
    Rat m1, m2;           // successive minima of Q, denominators divide 3
};

struct ShortVector {
    Vec2Z coeff;  // sign-class representative in the original (w1, w2) basis
    Rat q;        // Q value
};

// Requires a totally real field (poly_disc > 0); the returned lattice is
// already reduced (m1, m2, reduced_basis filled in).
TraceLattice gram_matrix(const CubicField& E);

// Lagrange reduction of L.gram3; refreshes m1, m2, reduced_basis in place.
void reduce_and_minima(TraceLattice& L);

// All nonzero vectors up to sign with Q <= X, sorted by (Q, coeff).
std::vector<ShortVector> enumerate_short_vectors(const TraceLattice& L, const Rat& X);

// #{(x, y) in Z^2 : a x^2 + b x y + c y^2 <= X}, origin included.
Int count_lattice_points(const Int& a, const Int& b, const Int& c, const Int& X);

}  // namespace tfdl
