#pragma once

// p-adic orbital integrals of regular elements in gl_n, n in {2,3}: the
// theta-stable lattice oracle, the GL2 closed form and its order-sum
// cross-check, global c-factors, and pointwise evaluation of the truncated
// test functions used to approximate the singular locus.

#include "tfdl/cubic_field.hpp"
#include "tfdl/linalg3.hpp"
#include "tfdl/poly.hpp"

#include <array>

namespace tfdl {

// d = fundamental * conductor^2 for d = 0 or 1 mod 4, d not a square.
struct QuadDisc {
    i64 fundamental;
    i64 conductor;
};
QuadDisc split_discriminant(i64 d);
bool is_fundamental_discriminant(i64 d);

struct StableLatticeCount {
    Int count;        // theta-stable lattice classes modulo p-power homothety
    int ram_index_e;  // ramification index of the local field, in {1,2,3}
    Int cap;          // index bound used by the scan, p^(n*v + e - 1)
};

// Counts lattices L inside the maximal order of Q[T]/(f) with theta L <= L,
// theta the image of T, up to p-power homothety.  Requires Q_p[theta] to be
// a field (one prime above p); split input throws, as does an enumeration
// whose subspace budget would exceed ~p^2 children per node at large p.
StableLatticeCount stable_lattice_classes(const MonicIntPoly& f, i64 p);

// Companion-matrix wrapper: gamma[i+1][i] = 1, gamma[i][n-1] = -coeff_i,
// all other entries zero.
StableLatticeCount stable_lattice_classes(const Mat3Z& gamma, int n, i64 p);

struct OrbitalValue {
    i64 p = 0;
    Rat I_p;      // >= 1
    Int index_p;  // p-part of [O : Z[xi]]
    Rat c;        // I_p / index_p, >= 1
};

// I_p for xi a root of f (degree 2 or 3, irreducible over Q): the lattice
// oracle when Q_p[xi] is a field, the factorwise product otherwise.
OrbitalValue orbital_integral_p(const MonicIntPoly& f, i64 p);

// Same with the field of xi already built; E must be Q[T]/(f) up to
// isomorphism (checked through disc f / disc E being a square).
OrbitalValue orbital_integral_p(const MonicIntPoly& f, const CubicField& E, i64 p);

// p^kappa (1 + (1 - (D|p)) (1 - p^-kappa)/(p - 1)): I_p of a quadratic
// element with local index p^kappa over the field of fundamental
// discriminant D.
Rat gl2_closed_form(i64 D, i64 p, int kappa);

// 1 + sum_{j=1..kappa} p^(j-1) (p - (D|p)): the same I_p as a sum over the
// orders Z_p + p^j O containing xi, each weighted by its unit index.  Kept
// separate from gl2_closed_form as an independent cross-check.
Rat quadratic_order_sum(i64 D, i64 p, int kappa);

// Char poly of multiplication by xi = sum_i xi[i] omega_i on the integral
// basis of E.
MonicIntPoly char_poly_in_field(const std::array<Int, 3>& xi, const CubicField& E);

// Product of the c-factors over p | [O_E : Z[xi]]; all other primes
// contribute 1.  xi must generate E.
Rat c_global(const std::array<Int, 3>& xi, const CubicField& E);
Rat c_global(const MonicIntPoly& f, const CubicField& E);

struct TestFnValue {
    Rat value;              // in [0, 1]
    bool undecided = false; // near-singularity at depth m not settled
};

// Pointwise value of the depth-m truncation on an integral 3x3 matrix x:
// 1 when x is certified within p^m of the discriminant-zero locus (Hensel
// certificate: a lift y = x mod p^m with val disc >= m+4 and a unit partial
// derivative), 1/c(x) when x is provably not within p^m of it, and the
// conservative 1 with the undecided flag otherwise.  m = 0 is the
// characteristic function of integral matrices.
TestFnValue testfn_eval(const Mat3Z& x, i64 p, int m);

}  // namespace tfdl
