#pragma once

// Cubic fields from defining polynomials: maximal order, field discriminant
// and index, prime splitting types, isomorphism testing, automorphism count.

#include "tfdl/linalg3.hpp"
#include "tfdl/poly.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace tfdl {

struct SplittingType {
    i64 p = 0;
    // (residue degree f_i, ramification index e_i), sorted; sum e_i f_i = 3
    std::vector<std::pair<int, int>> shape;
    bool operator==(const SplittingType& o) const { return p == o.p && shape == o.shape; }
};

struct CubicField {
    MonicIntPoly defining_poly;
    Int poly_disc;
    Int field_disc;
    Int index;                 // [O_E : Z[theta]]
    Mat3Q integral_basis;      // rows: maximal-order basis in powers of theta
    Int mult_table[3][3][3];   // omega_i omega_j = sum_k mult_table[i][j][k] omega_k
    bool is_galois = false;
};

// One p-maximality round on the order spanned by order_basis rows (an order
// containing Z[theta]): radical of O/pO, then its multiplier ring.  Returns
// (is_p_maximal, enlarged basis); a p prime to the order's discriminant is a
// no-op reported as maximal.
std::pair<bool, Mat3Q> dedekind_enlarge(const MonicIntPoly& f, i64 p,
                                        const Mat3Q& order_basis);

CubicField build_field(const MonicIntPoly& f);

// For p prime to the index, read off factor_mod_p; at index primes decompose
// O_E/pO_E by nilradical dimension and Frobenius fixed space.
SplittingType splitting_type(const CubicField& E, i64 p);

int automorphism_count(const CubicField& E);  // 3 iff field_disc is a square

enum class Tri { kFalse, kTrue, kUndecided };

// Fast rejection by field_disc, then splitting fingerprints for p <= 100,
// then exact certification by expressing a root of E1's polynomial in E2.
// Fingerprint agreement alone never certifies true.
Tri is_isomorphic_detailed(const CubicField& E1, const CubicField& E2);

// Throws if the detailed test returns undecided.
bool is_isomorphic(const CubicField& E1, const CubicField& E2);

// tr(omega_i omega_j) on the integral basis.
Mat3Z trace_matrix(const CubicField& E);

// {defining_poly, field_disc, index, is_galois, splitting fingerprint p<=100}
// as a single JSON line.
std::string field_json_record(const CubicField& E);

// Roots of a monic cubic or quadratic, real parts exact-polished; complex
// pair ordered with positive imaginary part last.
std::vector<std::complex<long double>> poly_roots_numeric(const MonicIntPoly& f);

}  // namespace tfdl
