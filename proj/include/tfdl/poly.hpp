#pragma once

// Monic integer polynomials of degree <= 3: discriminants, irreducibility
// over Q (rational root test), factorization shape mod p, depressed forms,
// Newton power sums.

#include "tfdl/rat.hpp"

#include <vector>

namespace tfdl {

struct MonicIntPoly {
    // coeffs[i] multiplies T^i; coeffs.back() == 1.
    std::vector<Int> coeffs;

    MonicIntPoly() = default;
    explicit MonicIntPoly(std::vector<Int> c) : coeffs(std::move(c)) {
        TFDL_CHECK(!coeffs.empty() && coeffs.back() == 1, "MonicIntPoly: not monic");
    }
    static MonicIntPoly cubic(const Int& c2, const Int& c1, const Int& c0) {
        return MonicIntPoly({c0, c1, c2, 1});
    }
    static MonicIntPoly quadratic(const Int& c1, const Int& c0) {
        return MonicIntPoly({c0, c1, 1});
    }
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    const Int& operator[](int i) const { return coeffs[i]; }

    Int eval(const Int& t) const;
    Rat eval(const Rat& t) const;
    MonicIntPoly shifted(const Int& a) const;  // T -> T + a
    bool operator==(const MonicIntPoly& o) const { return coeffs == o.coeffs; }
    std::string to_string() const;
};

// Discriminant, exact; degree 1 -> 1, degree 2 -> b^2-4c,
// degree 3 (T^3+aT^2+bT+c) -> 18abc - 4a^3c + a^2b^2 - 4b^3 - 27c^2.
Int discriminant(const MonicIntPoly& f);

// Irreducibility over Q for degree 2 and 3 monic integer polynomials.
// Degree 3 reduces to the integer root test; degree 2 to disc not a square.
bool is_irreducible_cubic(const MonicIntPoly& f);

struct FactorModP {
    // (degree, multiplicity) of the irreducible factors mod p, sorted.
    std::vector<std::pair<int, int>> factors;
    int total_degree() const {
        int s = 0;
        for (auto& dm : factors) s += dm.first * dm.second;
        return s;
    }
};

FactorModP factor_mod_p(const MonicIntPoly& f, u64 p);

// Depressed form of a cubic: T -> S - c2/3 gives S^3 + A S + B.
// 3A and 27B are always integers.
std::pair<Rat, Rat> depressed_form(const MonicIntPoly& f);

// Char poly of 3*theta - tr(theta) for a root theta of the cubic f:
// T^3 + A1 T + A0 with A1 = 9 c1 - 3 c2^2, A0 = 2 c2^3 - 9 c2 c1 + 27 c0.
// Integral for every integral theta; Q-value scales by 9.
MonicIntPoly tripled_depressed(const MonicIntPoly& f);

// Power sums p_1..p_k of the roots (traces of powers) by Newton's identities.
std::vector<Int> power_sums(const MonicIntPoly& f, int k);

}  // namespace tfdl
