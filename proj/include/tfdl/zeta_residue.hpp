#pragma once

// Dedekind zeta plumbing: Dirichlet coefficients from splitting data,
// residue estimation by ideal-count averaging, and the real-quadratic
// cross-checks (Pell units, indefinite form class numbers, the identity
// sqrt(d) * rho = h+ * log eps+, Datskovsky's b-sum).

#include "tfdl/rat.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace tfdl {

struct CubicField;

enum class ResidueMethod { kIdealCountAverage, kEulerProduct };

struct ResidueEstimate {
    double value = 0.0;
    double error_bar = 0.0;
    i64 truncation_N = 0;
    ResidueMethod method = ResidueMethod::kIdealCountAverage;
};

// Real quadratic order of discriminant d: minimal t^2 - d u^2 = 4 solution,
// form class number, log of the fundamental totally positive unit.
struct QuadraticData {
    i64 d = 0;
    Int pell_t;
    Int pell_u;
    int class_number = 0;
    double log_eps = 0.0;
};

// Indefinite binary quadratic form a x^2 + b xy + c y^2, b^2 - 4ac = d > 0.
struct QForm {
    Int a, b, c;
    bool operator==(const QForm& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const QForm& o) const {
        if (a != o.a) return a < o.a;
        if (b != o.b) return b < o.b;
        return c < o.c;
    }
};

Int qform_disc(const QForm& f);

// Reduced for indefinite forms: 0 < b < sqrt(d) and |sqrt(d) - 2|a|| < b.
bool qform_is_reduced(const QForm& f, i64 d);

// Right neighbor (c, b', c') with b' = -b (mod 2|c|) maximal below sqrt(d);
// for a reduced input the output is reduced and iterating walks the cycle.
QForm qform_rho(const QForm& f, i64 d);

// All reduced forms of discriminant d, sorted.
std::vector<QForm> reduced_forms(i64 d);

// Partition of the reduced forms into rho-cycles; one cycle per form class.
std::vector<std::vector<QForm>> reduced_form_cycles(i64 d);

// Minimal (t, u), u >= 1, with t^2 - d u^2 = 4: the fundamental automorph of
// the principal form, read off one traversal of its reduced cycle.
std::pair<Int, Int> pell_fundamental(i64 d);

QuadraticData quadratic_class_data(i64 d);

bool is_fundamental_discriminant(i64 d);

// a_1..a_N of zeta_E; entry [n-1] counts ideals of norm n.
std::vector<std::int16_t> dirichlet_coefficients(const CubicField& E, i64 N);
std::vector<std::int16_t> dirichlet_coefficients_quadratic(i64 d, i64 N);

// rho_hat = (A(N) - A(N/2)) / (N - N/2); error bar = spread over the next
// two dyadic windows.  a has length N, a[0] = a_1.
ResidueEstimate residue_from_coefficients(const std::int16_t* a, i64 N);
ResidueEstimate residue_estimate(const CubicField& E, i64 N);
ResidueEstimate residue_estimate_quadratic(i64 d, i64 N);

// Truncated Euler product over p <= P of (1 - 1/p) * zeta_{E,p}(1); slowly
// convergent, kept as an independent cross-check route.
ResidueEstimate residue_euler_product(const CubicField& E, i64 P);
ResidueEstimate residue_euler_product_quadratic(i64 d, i64 P);

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_err = 0.0;
};

// lhs = sqrt(d) * rho_hat(N); rhs = h+(d) * log eps+(d), which equals
// 2 h log eps of the field whether or not a norm -1 unit exists.
IdentityCheck residue_unit_identity_check(i64 d, i64 N);

// lhs = sum_{b<=B} b^{1-2s} prod_{p|b} (1 + (1-(d/p))(1-p^{-val_p b})/(p-1));
// rhs = zeta(2s-1) zeta(2s)^2 / zeta_E(2s), all by truncated series.  The
// local factor of the b-sum at p is (1 - chi(p) p^{-2s}) / ((1 - p^{1-2s})
// (1 - p^{-2s})), so the sum equals zeta(2s-1) zeta(2s) / L(2s, chi_d).
IdentityCheck datskovsky_bsum_check(i64 d, double s, i64 B);

// log of a positive mpz without double overflow.
double log_mpz(const Int& x);

}  // namespace tfdl
