#pragma once

#include "tfdl/trace_lattice.hpp"
#include "tfdl/zeta_residue.hpp"

#include <string>
#include <vector>

namespace tfdl {

// T^3 + a1 T + a0 with a1 < 0 < a0 and 27 a0^2 <= 4 |a1|^3, so the
// discriminant -4 a1^3 - 27 a0^2 is nonnegative (all roots real).
struct DepressedCubic {
    i64 a1 = 0;
    i64 a0 = 0;
};

// All integer pairs with -X/2 <= a1 < 0 and 0 < a0 <= sqrt(-4 a1^3 / 27),
// ordered by (|a1|, a0).
std::vector<DepressedCubic> enumerate_region(i64 X);

// Reducible <=> integer root (monic cubic); the scan bound 2 sqrt(|a1|/3)
// covers every real root inside the region.
bool has_integer_root(const DepressedCubic& c);

struct RegionCounts {
    i64 pairs = 0;
    i64 irreducible = 0;
    i64 reducible = 0;
};

// Streaming counts over enumerate_region(X); no materialization.
RegionCounts region_counts(i64 X);
std::pair<i64, i64> irreducible_count(i64 X);  // (irreducible, reducible)

// One totally real cubic field with its class lattice O_E/Z and the
// nonzero sign-classes of Q <= X that the discovery sweep touched.
struct FieldRecord {
    CubicField E;
    TraceLattice lat;                  // reduced; lat.m1 is m1(E)
    std::vector<ShortVector> classes;  // Q <= X, sorted by (q, coeff)
};

// Every totally real cubic field with m1(E) <= X, sorted by
// (field_disc, defining_poly), each with its Q <= X class list.
//
// The sweep runs over depressed pairs up to coefficient bound 9X/2: for
// xi in O_E the element eta = 3 xi - tr(xi) is integral with trace zero
// and Q(eta) = 9 Q_E([xi]), and conversely (eta + t)/3 is integral for
// some t in {0,1,2} exactly when |a1| = 3B with t^2 = B (mod 3) and
// a0 = t^3 - 3Bt (mod 27).  Only pairs meeting those congruences are
// visited, and each discovered field marks the pairs of all its classes
// with Q <= X as explained, so every candidate triggers at most once.
//
// cache_path: JSON-lines field database (header line, then one field per
// line).  The TFDL_CACHE environment variable overrides it when set;
// empty resolved path disables caching.  A cache built at X' >= X is
// reusable; stale bounds or any parse/verification failure rebuilds.
// fingerprint_bound: splitting shapes at p <= bound are re-derived and
// compared against the cached records on load.
std::vector<FieldRecord> discover_fields(i64 X, const std::string& cache_path = "",
                                         i64 fingerprint_bound = 100);

struct SweepConfig {
    std::vector<i64> x_grid = {25, 50, 100, 200, 400};  // strictly increasing
    i64 residue_truncation_N = 1000000;  // cap on per-field residue work
    i64 prime_fingerprint_bound = 100;   // cache verification depth
    u64 rng_seed = 7;                    // reserved for sampling diagnostics
    std::string cache_path;
};

struct DensitySeries {
    std::vector<i64> grid;
    std::vector<double> sigma;          // Sigma(X) per grid point
    std::vector<i64> field_count;       // fields with m1 <= X
    std::vector<i64> pair_count;        // sign-classes with 0 < Q <= X over those fields
    std::vector<i64> irreducible_count; // region(X) splits
    std::vector<i64> reducible_count;
    std::vector<double> sup_ratio;      // sup of sigma/X^{5/2} over the trailing half
    std::vector<char> low_confidence;   // some contributing residue above 5% error
};

// Sigma(X) = sum over fields with m1 <= X of rho_E / |Aut| times
// sum over vectors 0 < Q_E(xi) <= X of c_global(xi), both signs counted.
// Accumulation runs in field_disc order with compensated summation.
DensitySeries sigma_series(const SweepConfig& cfg);

// CSV with header X,sigma,field_count,pair_count,irreducible,reducible,sup_ratio.
std::string series_csv(const DensitySeries& s);

// Per-field CSV with header disc,index,m1,m2,rho_hat,err,N: one row per
// discovered field with m1 <= X, same truncation policy as sigma_series,
// N the work bound the estimator actually received.
std::string field_table_csv(i64 X, i64 residue_truncation_N = 1000000,
                            const std::string& cache_path = "");

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;  // of log sigma against log X
    double residual = 0.0;   // rms of log residuals
};

// Least squares on (log X, log sigma); needs >= 5 points with sigma > 0.
ExponentFit fit_exponent(const std::vector<i64>& grid, const std::vector<double>& sigma);
ExponentFit fit_exponent(const DensitySeries& s);

struct QuadraticSweep {
    std::vector<i64> d;             // fundamental discriminants, increasing
    std::vector<double> residue;    // 2 h log(eps) / sqrt(d)
    std::vector<double> cumulative; // running sum
    double ratio = 0.0;             // cumulative.back() / X
};

// Residues of real quadratic zeta functions over fundamental 0 < d <= X
// via class number and fundamental unit; the cumulative sum grows
// linearly, so ratio estimates the density constant.
QuadraticSweep quadratic_sweep(i64 X);

struct DiscSignEstimate {
    i64 samples = 0;
    u64 seed = 0;
    double p_hat = 0.0;          // P(disc > 0) for the traceless part of a Gaussian 3x3
    double std_error = 0.0;      // binomial
    double p_reference = 0.0;    // 2^{-3/2}, all-eigenvalues-real probability
    double beta_candidate = 0.0; // 2 pi^{9/2} zeta(3) / sqrt(3) * p_hat
};

// Monte Carlo mass of {x : disc(char poly of x - tr(x)/3) > 0} under the
// density exp(-pi tr x^t x) on 3x3 real matrices (normalized to mass 1).
// Box-Muller over a seeded mt19937_64; same seed, same estimate.
DiscSignEstimate mc_disc_positive(i64 samples, u64 seed);

}  // namespace tfdl
