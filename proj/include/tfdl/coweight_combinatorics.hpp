#pragma once

#include <string>
#include <vector>

#include "tfdl/rat.hpp"

namespace tfdl {

// Standard parabolic of GL_n encoded by its ordered block sizes.
struct ParabolicType {
    std::vector<int> composition;

    int rank() const;                     // n = sum of the blocks
    std::vector<int> boundaries() const;  // proper prefix sums, ascending

    static ParabolicType minimal(int n);  // (1,...,1)
    static ParabolicType full(int n);     // (n)
};

bool operator==(const ParabolicType& a, const ParabolicType& b);

// Point of the coroot space R^n; all sign tests are exact.
struct CorootPoint {
    std::vector<Rat> coords;
};

// Every block of p2 is a union of consecutive blocks of p1.
bool refines(const ParabolicType& p1, const ParabolicType& p2);

// Characteristic functions on the coroot space, for nested p1 <= p2.
// Roots of the p1 Levi are evaluated through the block-average
// projection; weights are block-relative partial sums, dual to the
// projected coroots. All three throw on a non-nested pair.
int tau(const ParabolicType& p1, const ParabolicType& p2, const CorootPoint& H);
int tau_hat(const ParabolicType& p1, const ParabolicType& p2, const CorootPoint& H);
int sigma(const ParabolicType& p1, const ParabolicType& p2, const CorootPoint& H);

std::vector<ParabolicType> compositions_of(int n);
// All standard parabolics containing p, i.e. boundary subsets of p.
std::vector<ParabolicType> coarsenings(const ParabolicType& p);

// Seeded rational points, resampled until no root or weight functional
// attached to a boundary of p1 vanishes.
std::vector<CorootPoint> sample_coroot_points(const ParabolicType& p1, int count,
                                              u64 seed);

// Points where sigma_{p1}^{p2} differs from the alternating sum
// sum_{R >= p2} (-1)^{#bnd(p2)-#bnd(R)} tau_{p1}^R tau_hat_R.
int sigma_identity_check(const ParabolicType& p1, const ParabolicType& p2,
                         const std::vector<CorootPoint>& points);

// Points where sum_{p2 >= p1} sigma_{p1}^{p2} differs from tau_hat_{p1}.
int sigma_partition_check(const ParabolicType& p1,
                          const std::vector<CorootPoint>& points);

struct NilpotentOrbitRecord {
    std::string name;            // trivial | minimal | regular
    std::vector<int> partition;  // Jordan type
    int dim;                     // n^2 - sum of squared dual-partition parts
    Rat delta;                   // dim / 2
};

// n in {2, 3}; throws otherwise. Ordered by dimension.
std::vector<NilpotentOrbitRecord> nilpotent_catalog(int n);

// Exact a + b*sqrt(D); b is zero whenever D is a perfect square.
struct QuadraticSurd {
    Rat a;
    Rat b;
    i64 D;

    bool is_rational() const { return b == 0; }
    std::string str() const;
};

bool operator==(const QuadraticSurd& x, const QuadraticSurd& y);
QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y);
// Exact order on values with a common radicand.
bool surd_less(const QuadraticSurd& x, const QuadraticSurd& y);

enum class GroupKind { GL, SL };

struct PoleEntry {
    NilpotentOrbitRecord orbit;
    QuadraticSurd s_minus;
    QuadraticSurd s_plus;
    int max_order;  // n - 1
};

// Predicted pole pairs s^- = (1-sqrt(D))/2 + dim/(2 sqrt(D)), s^+ = 1 - s^-,
// with D = n^2 for GL and n^2 - 1 for SL. Ordered by orbit dimension.
std::vector<PoleEntry> pole_table(int n, GroupKind group);

}  // namespace tfdl
