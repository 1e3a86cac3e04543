#include "tfdl/zeta_residue.hpp"

#include "tfdl/cubic_field.hpp"
#include "tfdl/modarith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace tfdl {

namespace {

// smallest-prime-factor table, cached and grown on demand
const std::vector<int32_t>& shared_spf(i64 n) {
    static std::vector<int32_t> spf;
    if (static_cast<i64>(spf.size()) < n + 1) {
        spf.assign(static_cast<size_t>(n + 1), 0);
        for (i64 i = 2; i <= n; ++i) {
            if (spf[i] == 0)
                for (i64 j = i; j <= n; j += i)
                    if (spf[j] == 0) spf[j] = static_cast<int32_t>(i);
        }
    }
    return spf;
}

// Kronecker symbol (d / p) for prime p
int chi_at_prime(i64 d, i64 p) {
    if (p == 2) {
        if (d % 2 == 0) return 0;
        i64 r = ((d % 8) + 8) % 8;
        return (r == 1 || r == 7) ? 1 : -1;
    }
    return jacobi_u64(d, static_cast<u64>(p));
}

// residue-degree multiset of a cubic field at p, encoded for coefficient rules
enum class LocalType : std::uint8_t {
    kSplit3,   // f = {1,1,1}
    kMixed,    // f = {1,2}
    kInert,    // f = {3}
    kTwoOnes,  // f = {1,1}, one prime ramified
    kSingle,   // f = {1}, totally ramified
};

LocalType local_type(const CubicField& E, i64 p) {
    SplittingType st = splitting_type(E, p);
    int n = 0, fsum = 0;
    for (auto& [f, e] : st.shape) {
        ++n;
        fsum += f;
    }
    if (n == 3) return LocalType::kSplit3;
    if (n == 1) return fsum == 3 ? LocalType::kInert : LocalType::kSingle;
    return fsum == 3 ? LocalType::kMixed : LocalType::kTwoOnes;
}

// number of ideals of norm p^k
int local_count(LocalType t, int k) {
    switch (t) {
        case LocalType::kSplit3: return (k + 1) * (k + 2) / 2;
        case LocalType::kMixed: return k / 2 + 1;
        case LocalType::kInert: return k % 3 == 0 ? 1 : 0;
        case LocalType::kTwoOnes: return k + 1;
        case LocalType::kSingle: return 1;
    }
    return 0;
}

int local_count_quadratic(int chi, int k) {
    if (chi == 1) return k + 1;
    if (chi == 0) return 1;
    return k % 2 == 0 ? 1 : 0;
}

// Euler-Maclaurin tail makes the truncation error negligible for x >= 2
double zeta_series(double x, i64 M = 200000) {
    double s = 0;
    for (i64 n = M; n >= 1; --n) s += std::pow(static_cast<double>(n), -x);
    return s + std::pow(static_cast<double>(M), 1 - x) / (x - 1) -
           0.5 * std::pow(static_cast<double>(M), -x);
}

}  // namespace

std::vector<std::int16_t> dirichlet_coefficients_quadratic(i64 d, i64 N) {
    TFDL_CHECK(N >= 1, "dirichlet_coefficients: N >= 1 required");
    TFDL_CHECK(is_fundamental_discriminant(d), "dirichlet_coefficients: fundamental d required");
    const auto& spf = shared_spf(N);
    std::vector<std::int16_t> a(static_cast<size_t>(N), 0);
    a[0] = 1;
    for (i64 n = 2; n <= N; ++n) {
        i64 p = spf[n], m = n;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        a[n - 1] = static_cast<std::int16_t>(a[m - 1] * local_count_quadratic(chi_at_prime(d, p), k));
    }
    return a;
}

std::vector<std::int16_t> dirichlet_coefficients(const CubicField& E, i64 N) {
    TFDL_CHECK(N >= 1, "dirichlet_coefficients: N >= 1 required");
    // a_n is at most the triple divisor function, which stays below 2^15 here
    TFDL_CHECK(N <= 4000000, "dirichlet_coefficients: N too large for int16 table");
    const auto& spf = shared_spf(N);
    // one splitting computation per prime, looked up during the sieve fill
    std::vector<std::uint8_t> type(static_cast<size_t>(N) + 1, 0);
    for (i64 p = 2; p <= N; ++p)
        if (spf[p] == p) type[p] = static_cast<std::uint8_t>(local_type(E, p));
    std::vector<std::int16_t> a(static_cast<size_t>(N), 0);
    a[0] = 1;
    for (i64 n = 2; n <= N; ++n) {
        i64 p = spf[n], m = n;
        int k = 0;
        while (m % p == 0) {
            m /= p;
            ++k;
        }
        a[n - 1] = static_cast<std::int16_t>(a[m - 1] *
                                             local_count(static_cast<LocalType>(type[p]), k));
    }
    return a;
}

ResidueEstimate residue_from_coefficients(const std::int16_t* a, i64 N) {
    TFDL_CHECK(N >= 8, "residue_from_coefficients: N >= 8 required");
    // dyadic windows [N/8, N/4], [N/4, N/2], [N/2, N]; integer sums are exact
    i64 n8 = N / 8, n4 = N / 4, n2 = N / 2;
    i64 s8 = 0, s4 = 0, s2 = 0, sN = 0;
    i64 acc = 0;
    for (i64 n = 1; n <= N; ++n) {
        acc += a[n - 1];
        if (n == n8) s8 = acc;
        if (n == n4) s4 = acc;
        if (n == n2) s2 = acc;
    }
    sN = acc;
    double r1 = double(sN - s2) / double(N - n2);
    double r2 = double(s2 - s4) / double(n2 - n4);
    double r3 = double(s4 - s8) / double(n4 - n8);
    double lo = std::min({r1, r2, r3}), hi = std::max({r1, r2, r3});
    ResidueEstimate est;
    est.value = r1;
    est.error_bar = hi - lo;
    // below the supported truncation the estimate is flagged by a wide bar
    if (N < 10000) est.error_bar = std::max(est.error_bar, 0.5 * std::abs(r1));
    est.truncation_N = N;
    est.method = ResidueMethod::kIdealCountAverage;
    return est;
}

ResidueEstimate residue_estimate(const CubicField& E, i64 N) {
    auto a = dirichlet_coefficients(E, N);
    return residue_from_coefficients(a.data(), N);
}

ResidueEstimate residue_estimate_quadratic(i64 d, i64 N) {
    auto a = dirichlet_coefficients_quadratic(d, N);
    return residue_from_coefficients(a.data(), N);
}

ResidueEstimate residue_euler_product(const CubicField& E, i64 P) {
    TFDL_CHECK(P >= 100, "residue_euler_product: P >= 100 required");
    const auto& spf = shared_spf(P);
    double v = 1.0, v_half = 1.0;
    for (i64 p = 2; p <= P; ++p) {
        if (spf[p] != p) continue;
        double ip = 1.0 / static_cast<double>(p);
        double f;
        switch (local_type(E, p)) {
            case LocalType::kSplit3: f = 1.0 / ((1 - ip) * (1 - ip)); break;
            case LocalType::kMixed: f = 1.0 / (1 - ip * ip); break;
            case LocalType::kInert: f = (1 - ip) / (1 - ip * ip * ip); break;
            case LocalType::kTwoOnes: f = 1.0 / (1 - ip); break;
            default: f = 1.0; break;
        }
        v *= f;
        if (p <= P / 2) v_half = v;
    }
    ResidueEstimate est;
    est.value = v;
    est.error_bar = 3.0 * std::abs(v - v_half) + std::abs(v) / std::sqrt(double(P));
    est.truncation_N = P;
    est.method = ResidueMethod::kEulerProduct;
    return est;
}

ResidueEstimate residue_euler_product_quadratic(i64 d, i64 P) {
    TFDL_CHECK(P >= 100, "residue_euler_product: P >= 100 required");
    TFDL_CHECK(is_fundamental_discriminant(d), "residue_euler_product: fundamental d required");
    const auto& spf = shared_spf(P);
    double v = 1.0, v_half = 1.0;
    for (i64 p = 2; p <= P; ++p) {
        if (spf[p] != p) continue;
        double ip = 1.0 / static_cast<double>(p);
        v /= 1.0 - chi_at_prime(d, p) * ip;
        if (p <= P / 2) v_half = v;
    }
    ResidueEstimate est;
    est.value = v;
    est.error_bar = 3.0 * std::abs(v - v_half) + std::abs(v) / std::sqrt(double(P));
    est.truncation_N = P;
    est.method = ResidueMethod::kEulerProduct;
    return est;
}

IdentityCheck residue_unit_identity_check(i64 d, i64 N) {
    QuadraticData qd = quadratic_class_data(d);
    TFDL_CHECK(is_fundamental_discriminant(d), "residue_unit_identity_check: fundamental d");
    ResidueEstimate est = residue_estimate_quadratic(d, N);
    IdentityCheck chk;
    chk.lhs = std::sqrt(static_cast<double>(d)) * est.value;
    chk.rhs = qd.class_number * qd.log_eps;
    chk.rel_err = std::abs(chk.lhs - chk.rhs) / std::abs(chk.rhs);
    return chk;
}

IdentityCheck datskovsky_bsum_check(i64 d, double s, i64 B) {
    TFDL_CHECK(is_fundamental_discriminant(d), "datskovsky_bsum_check: fundamental d");
    TFDL_CHECK(s >= 1.5, "datskovsky_bsum_check: s >= 1.5 required");
    TFDL_CHECK(B >= 1000, "datskovsky_bsum_check: B >= 1000 required");
    const auto& spf = shared_spf(B);
    double lhs = 0.0;
    for (i64 b = 1; b <= B; ++b) {
        i64 m = b;
        double w = 1.0;
        while (m > 1) {
            i64 p = spf[m];
            int k = 0;
            while (m % p == 0) {
                m /= p;
                ++k;
            }
            w *= 1.0 + (1 - chi_at_prime(d, p)) *
                           (1.0 - std::pow(static_cast<double>(p), -k)) / double(p - 1);
        }
        lhs += std::pow(static_cast<double>(b), 1 - 2 * s) * w;
    }
    const i64 M = 100000;
    auto a = dirichlet_coefficients_quadratic(d, M);
    double zE = 0.0;
    for (i64 n = M; n >= 1; --n)
        if (a[n - 1] != 0) zE += a[n - 1] * std::pow(static_cast<double>(n), -2 * s);
    double z1 = zeta_series(2 * s - 1), z2 = zeta_series(2 * s);
    IdentityCheck chk;
    chk.lhs = lhs;
    chk.rhs = z1 * z2 * z2 / zE;
    chk.rel_err = std::abs(chk.lhs - chk.rhs) / std::abs(chk.rhs);
    return chk;
}

}  // namespace tfdl
